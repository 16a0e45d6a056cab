#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "teachset/eval.hpp"
#include "teachset/io.hpp"
#include "teachset/report.hpp"
#include "teachset/version.hpp"

namespace {

using namespace teachset;

struct InputArgs {
  std::string path;
  std::string format = "csv";
  char delimiter = ',';
  int label_column = -1;
  double ball_norm = kDefaultBallNorm;
  bool center = false;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--input", in.path, "input file")->required();
  cmd->add_option("--format", in.format, "input format")
      ->check(CLI::IsMember({"csv", "libsvm"}))
      ->capture_default_str();
  cmd->add_option("--delimiter", in.delimiter, "CSV delimiter")->capture_default_str();
  cmd->add_option("--label-column", in.label_column, "0-based CSV label column");
  cmd->add_option("--ball-norm", in.ball_norm, "projection target max norm in (0,1)")
      ->capture_default_str();
  cmd->add_flag("--center", in.center, "mean-center features before projection");
}

BallDataset load_dataset(const InputArgs& in) {
  CsvOptions opts;
  opts.delimiter = in.delimiter;
  if (in.label_column >= 0) opts.label_column = in.label_column;
  const RawTable table = parse_table(in.path, in.format, opts);
  return to_ball_dataset(table, in.ball_norm, in.center);
}

struct TeachArgs {
  InputArgs in;
  TeachingConfig cfg;
  int halvings = -1;
  std::int64_t target_size = -1;
  std::string metric = "poincare";
  std::string kernel = "gaussian";
  double kernel_sigma = 0.0;
  std::string out_indices;
  std::string out_report;
};

void add_teaching_options(CLI::App* cmd, TeachArgs& a) {
  cmd->add_option("--surrogate-frac", a.cfg.surrogate_frac,
                  "fraction of points kept in the surrogate")
      ->capture_default_str();
  cmd->add_option("--radius", a.cfg.radius_r, "density hypersphere radius")
      ->capture_default_str();
  cmd->add_option("--eta", a.cfg.eta, "kernel regularizer")->capture_default_str();
  cmd->add_option("--metric", a.metric, "distance metric")
      ->check(CLI::IsMember({"poincare", "euclidean"}))
      ->capture_default_str();
  cmd->add_option("--seed", a.cfg.seed, "k-medoids seed")->capture_default_str();
  cmd->add_flag("--normalized-density", a.cfg.normalized_density,
                "apply the density normalizing constant");
  cmd->add_option("--kernel", a.kernel, "working kernel for the halving selection")
      ->check(CLI::IsMember({"gaussian", "raw"}))
      ->capture_default_str();
  cmd->add_option("--kernel-sigma", a.kernel_sigma,
                  "gaussian kernel bandwidth (default: --radius)");
}

void finish_teaching_config(TeachArgs& a) {
  a.cfg.metric = metric_from_name(a.metric);
  a.cfg.kernel = a.kernel == "raw" ? KernelTransform::raw_distance
                                   : KernelTransform::gaussian_of_distance;
  if (a.kernel_sigma > 0.0) a.cfg.kernel_sigma = a.kernel_sigma;
}

RunManifest make_manifest(const std::string& command, const InputArgs& in,
                          const TeachingConfig& cfg) {
  RunManifest man;
  man.command = command;
  man.input_path = in.path;
  man.input_format = in.format;
  man.input_digest = file_digest(in.path);
  man.ball_norm = in.ball_norm;
  man.center = in.center;
  man.config = cfg;
  return man;
}

int run_teach(TeachArgs& a) {
  finish_teaching_config(a);
  if (a.halvings >= 0) a.cfg.halvings = a.halvings;
  if (a.target_size >= 0) a.cfg.target_size = static_cast<index_t>(a.target_size);

  const BallDataset ds = load_dataset(a.in);
  const TeachingSet ts = teach(ds, a.cfg);
  const TeachingReport rep = teaching_report(ts, ds);

  RunManifest man = make_manifest("teach", a.in, a.cfg);
  man.outputs = {{"indices", a.out_indices}, {"report", a.out_report}};
  // indices file lists the selection in input-file row order
  std::vector<index_t> by_row = ts.indices;
  std::sort(by_row.begin(), by_row.end());
  write_file_atomic(a.out_indices, render_indices(by_row));
  write_file_atomic(a.out_report, render_teaching_report(man, rep));
  std::cout << "teach: cost " << ts.cost() << ", " << rep.stages.size() << " stages, wrote "
            << a.out_indices << " and " << a.out_report << "\n";
  return 0;
}

int run_density(TeachArgs& a, const std::string& out_path) {
  finish_teaching_config(a);
  const BallDataset ds = load_dataset(a.in);
  DensityConfig dc;
  dc.radius_r = a.cfg.radius_r;
  dc.metric = a.cfg.metric;
  dc.normalized = a.cfg.normalized_density;
  const DensityProfile profile = density_profile(ds, dc);
  write_file_atomic(out_path, render_density_csv(profile));
  std::cout << "density: " << profile.n() << " scores written to " << out_path << "\n";
  return 0;
}

int run_risk_curve(TeachArgs& a, const std::string& strategy, const std::string& costs_arg,
                   const std::string& out_path) {
  finish_teaching_config(a);
  const BallDataset ds = load_dataset(a.in);

  Selector sel;
  sel.teaching = a.cfg;
  sel.teaching.halvings.reset();
  sel.seed = a.cfg.seed;
  if (strategy == "teaching")
    sel.kind = SelectorKind::teaching;
  else if (strategy == "random")
    sel.kind = SelectorKind::random_uniform;
  else
    sel.kind = SelectorKind::kmedoids_only;

  std::vector<index_t> costs;
  for (const auto& tok : CLI::detail::split(costs_arg, ','))
    costs.push_back(static_cast<index_t>(std::stoll(tok)));

  const RiskReport rep = risk_curve(ds, sel, costs);
  RunManifest man = make_manifest("eval risk-curve", a.in, sel.teaching);
  const std::string text = render_risk_report(man, rep, strategy);
  if (out_path.empty())
    std::cout << text;
  else {
    man.outputs = {{"report", out_path}};
    write_file_atomic(out_path, render_risk_report(man, rep, strategy));
    std::cout << "risk-curve: " << rep.costs.size() << " costs written to " << out_path << "\n";
  }
  return 0;
}

int run_threshold(double epsilon, int passive_n, std::uint64_t seed,
                  const std::string& out_path) {
  const ThresholdDemoResult res = threshold_demo(epsilon, passive_n, seed);
  RunManifest man;
  man.command = "demo threshold";
  man.input_path = "-";
  man.input_format = "-";
  man.input_digest = "-";
  const std::string text = render_threshold_report(man, res, passive_n, seed);
  if (out_path.empty())
    std::cout << text;
  else {
    man.outputs = {{"report", out_path}};
    write_file_atomic(out_path, render_threshold_report(man, res, passive_n, seed));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(teachset::kToolName) +
               " - teaching-set selection via density surrogates and iterative halving"};
  app.set_version_flag("--version", teachset::kToolVersion);
  app.set_config("--config", "", "read options from an INI file (flags win over file values)");
  app.require_subcommand(1);
  app.footer(
      "Row indices in all outputs are 0-based (LIBSVM feature indices in inputs are 1-based).\n"
      "TEACHSET_THREADS caps internal parallelism (0 = auto); results do not depend on it.");

  TeachArgs teach_args;
  auto* teach_cmd = app.add_subcommand("teach", "select a teaching set");
  add_input_options(teach_cmd, teach_args.in);
  add_teaching_options(teach_cmd, teach_args);
  auto* halvings_opt =
      teach_cmd->add_option("--halvings", teach_args.halvings, "number of halving rounds");
  auto* target_opt =
      teach_cmd->add_option("--target-size", teach_args.target_size, "exact teaching cost");
  halvings_opt->excludes(target_opt);
  target_opt->excludes(halvings_opt);
  teach_cmd->add_option("--out-indices", teach_args.out_indices, "selected row indices, one per line")
      ->required();
  teach_cmd->add_option("--out-report", teach_args.out_report, "structured report file")
      ->required();

  TeachArgs density_args;
  std::string density_out;
  auto* density_cmd = app.add_subcommand("density", "per-point density scores");
  add_input_options(density_cmd, density_args.in);
  add_teaching_options(density_cmd, density_args);
  density_cmd->add_option("--out", density_out, "output CSV (index,score,neighbors)")->required();

  TeachArgs eval_args;
  std::string eval_strategy = "teaching";
  std::string eval_costs;
  std::string eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "evaluation harness");
  auto* curve_cmd = eval_cmd->add_subcommand("risk-curve", "risk disagreement vs teaching cost");
  add_input_options(curve_cmd, eval_args.in);
  add_teaching_options(curve_cmd, eval_args);
  curve_cmd->add_option("--strategy", eval_strategy, "subset selection strategy")
      ->check(CLI::IsMember({"teaching", "random", "kmedoids"}))
      ->capture_default_str();
  curve_cmd->add_option("--costs", eval_costs, "comma-separated ascending cost list")->required();
  curve_cmd->add_option("--out", eval_out, "report file (default: stdout)");
  eval_cmd->require_subcommand(1);

  double demo_epsilon = 1e-4;
  int demo_passive_n = 10000;
  std::uint64_t demo_seed = 0;
  std::string demo_out;
  auto* demo_cmd = app.add_subcommand("demo", "label-complexity demos");
  auto* threshold_cmd = demo_cmd->add_subcommand("threshold", "threshold classifier on [-1,1]");
  threshold_cmd->add_option("--epsilon", demo_epsilon, "target error in (0,1)")
      ->capture_default_str();
  threshold_cmd->add_option("--passive-n", demo_passive_n, "passive sample count")
      ->capture_default_str();
  threshold_cmd->add_option("--seed", demo_seed, "passive sampling seed")->capture_default_str();
  threshold_cmd->add_option("--out", demo_out, "report file (default: stdout)");
  demo_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (teach_cmd->parsed()) {
      if (teach_args.halvings < 0 && teach_args.target_size < 0)
        throw teachset::BadConfig("one of --halvings / --target-size is required");
      return run_teach(teach_args);
    }
    if (density_cmd->parsed()) return run_density(density_args, density_out);
    if (eval_cmd->parsed()) return run_risk_curve(eval_args, eval_strategy, eval_costs, eval_out);
    if (demo_cmd->parsed())
      return run_threshold(demo_epsilon, demo_passive_n, demo_seed, demo_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
