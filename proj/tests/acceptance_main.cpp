// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runtime limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "support/synthetic.hpp"
#include "teachset/eval.hpp"
#include "teachset/io.hpp"
#include "teachset/report.hpp"

using namespace teachset;
namespace ts_testing = teachset::testing;

namespace {

struct Outcome {
  int id;
  std::string name;
  bool pass;
  double seconds;
  double limit;
  std::string detail;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(v[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// criteria 1 + 2: case-study halving sizes and boundary avoidance
// ---------------------------------------------------------------------------

void criteria_1_2(std::vector<Outcome>& results) {
  setenv("TEACHSET_THREADS", "1", 1);
  Timer timer;

  const BallDataset ds = ts_testing::gaussian_mixture_dataset(ts_testing::case_study_spec());
  TeachingConfig cfg;
  cfg.surrogate_frac = 0.878;  // ceil(0.878 * 1400) = 1230
  cfg.radius_r = 0.4;
  cfg.eta = 1.0e-4;
  cfg.halvings = 6;
  const TeachingSet set = teach(ds, cfg);
  const double elapsed = timer.seconds();
  unsetenv("TEACHSET_THREADS");

  const std::vector<std::size_t> expected{1230, 615, 307, 153, 76, 38, 19};
  std::vector<std::size_t> sizes;
  for (const auto& stage : set.trace.stages) sizes.push_back(stage.size());

  const bool sizes_ok = sizes == expected;
  results.push_back({1, "halving-size reproduction", sizes_ok && elapsed < 30.0, elapsed, 30.0,
                     "stages [" + join_sizes(sizes) + "]"});

  // (2a) every stage member clears the surrogate cutoff
  bool cutoff_ok = true;
  for (const auto& stage : set.trace.stages)
    for (index_t i : stage)
      cutoff_ok &= set.profile.scores[static_cast<std::size_t>(i)] >= set.surrogate.cutoff_score;

  // (2b) >= 90% of the final stage within Poincare 0.4 of a top-decile point
  const std::vector<index_t> order = density_order(set.profile);
  const std::size_t decile = static_cast<std::size_t>(ds.n() / 10);
  std::size_t close = 0;
  for (index_t p : set.trace.final_stage()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < decile; ++c)
      nearest = std::min(nearest,
                         poincare_distance(ds.points.row(p), ds.points.row(order[c])));
    if (nearest <= 0.4) ++close;
  }
  const double frac = static_cast<double>(close) / static_cast<double>(set.indices.size());
  results.push_back({2, "boundary avoidance", cutoff_ok && frac >= 0.9 && elapsed < 30.0, elapsed,
                     30.0,
                     "cutoff " + std::string(cutoff_ok ? "100%" : "violated") + ", core proximity " +
                         std::to_string(close) + "/" + std::to_string(set.indices.size())});
}

// ---------------------------------------------------------------------------
// criterion 3: Poincare metric suite
// ---------------------------------------------------------------------------

void criterion_3(std::vector<Outcome>& results) {
  Timer timer;
  std::mt19937_64 rng(2718);
  bool ok = true;
  std::string fail;
  for (int rep = 0; rep < 10000 && ok; ++rep) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    const Eigen::RowVectorXd u = ts_testing::random_ball_point(rng, dim);
    const Eigen::RowVectorXd v = ts_testing::random_ball_point(rng, dim);
    const Eigen::RowVectorXd w = ts_testing::random_ball_point(rng, dim);
    const Eigen::RowVectorXd origin = Eigen::RowVectorXd::Zero(dim);

    const double duv = poincare_distance(u, v);
    if (duv != poincare_distance(v, u)) ok = false, fail = "symmetry";
    if (poincare_distance(u, u) != 0.0) ok = false, fail = "identity";
    if (duv < 0.0) ok = false, fail = "nonnegativity";
    if (poincare_distance(u, w) > duv + poincare_distance(v, w) + 1e-9)
      ok = false, fail = "triangle";
    const double r = v.norm();
    if (std::abs(poincare_distance(origin, v) - std::log((1.0 + r) / (1.0 - r))) > 1e-9)
      ok = false, fail = "closed form";
  }
  const double elapsed = timer.seconds();
  results.push_back({3, "poincare metric suite", ok && elapsed < 5.0, elapsed, 5.0,
                     ok ? "10000 triples" : ("violated: " + fail)});
}

// ---------------------------------------------------------------------------
// criterion 4: greedy oracle equivalence
// ---------------------------------------------------------------------------

// independent replay of the working kernel and update rule
struct Replay {
  Eigen::MatrixXd residual;
  Eigen::VectorXd C;
  double eta, eps;
  std::vector<char> taken;

  Replay(const KernelMatrix& km, double sigma) {
    residual = (-km.H.array().square() / (2.0 * sigma * sigma)).exp();
    C = km.C_diag;
    eta = km.eta;
    const double tr = residual.trace();
    eps = tr > 0.0 ? 1e-9 * tr / static_cast<double>(km.m()) : 0.0;
    taken.assign(static_cast<std::size_t>(km.m()), 0);
  }
  double gain(index_t c) const {
    const double denom = residual(c, c) + eta * C(c) + eps;
    return denom > 0.0 ? residual.col(c).squaredNorm() / denom : 0.0;
  }
  Eigen::MatrixXd updated(index_t c) const {
    Eigen::MatrixXd r = residual;
    const double beta = r(c, c) + eta * C(c) + eps;
    if (beta > 0.0) {
      const Eigen::VectorXd w = r.col(c);
      r.noalias() -= (w * w.transpose()) / beta;
      for (Eigen::Index i = 0; i < r.rows(); ++i)
        if (r(i, i) < 0.0) r(i, i) = 0.0;
    }
    return r;
  }
  void apply(index_t c) {
    residual = updated(c);
    taken[static_cast<std::size_t>(c)] = 1;
  }
};

void criterion_4(std::vector<Outcome>& results) {
  Timer timer;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(-0.85, 0.85);
  bool ok = true;
  std::string fail;

  for (int inst = 0; inst < 200 && ok; ++inst) {
    const index_t m = 4 + static_cast<index_t>(rng() % 7);  // 4..10
    const index_t k = 1 + static_cast<index_t>(rng() % 3);  // 1..3
    BallDataset ds;
    ds.points.resize(m, 2);
    for (index_t i = 0; i < m; ++i) {
      do {
        ds.points(i, 0) = coord(rng);
        ds.points(i, 1) = coord(rng);
      } while (ds.points.row(i).norm() >= 0.9);
    }
    std::vector<index_t> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), index_t{0});

    const KernelMatrix km = build_kernel(ds, idx, 1e-4);
    const SelectionState st = greedy_select(km, std::min(k, m));
    Replay replay(km, 0.4);

    for (std::size_t step = 0; step < st.selected.size() && ok; ++step) {
      const index_t picked = st.selected[step];
      double max_gain = -1.0;
      double min_trace = std::numeric_limits<double>::infinity();
      for (index_t c = 0; c < m; ++c) {
        if (replay.taken[static_cast<std::size_t>(c)]) continue;
        max_gain = std::max(max_gain, replay.gain(c));
        min_trace = std::min(min_trace, replay.updated(c).trace());
      }
      if (replay.gain(picked) < max_gain - 1e-12) {
        ok = false;
        fail = "pick below max gain at instance " + std::to_string(inst);
      }
      if (replay.updated(picked).trace() > min_trace + 1e-12) {
        ok = false;
        fail = "post-pick trace not minimal at instance " + std::to_string(inst);
      }
      replay.apply(picked);
    }
  }
  const double elapsed = timer.seconds();
  results.push_back({4, "greedy oracle equivalence", ok && elapsed < 10.0, elapsed, 10.0,
                     ok ? "200 instances, every pick" : fail});
}

// ---------------------------------------------------------------------------
// criterion 5: clustering-on-surrogate direction
// ---------------------------------------------------------------------------

double one_minus_ari_on_subset(const BallDataset& ds, const std::vector<index_t>& subset,
                               const DensityProfile& profile, const std::vector<int>& labels) {
  std::vector<double> scores;
  scores.reserve(subset.size());
  for (index_t i : subset) scores.push_back(profile.scores[static_cast<std::size_t>(i)]);
  const std::vector<index_t> medoids =
      kmedoids_reduce(ds, subset, 3, Metric::poincare, 0, scores);

  Partition assignment, truth;
  for (index_t i : subset) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      const double d = poincare_distance(ds.points.row(i), ds.points.row(medoids[c]));
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assignment.push_back(best);
    truth.push_back(labels[static_cast<std::size_t>(i)]);
  }
  return 1.0 - adjusted_rand_index(assignment, truth);
}

void criterion_5(std::vector<Outcome>& results) {
  Timer timer;
  int wins = 0;
  const int reps = 20;
  for (int s = 0; s < reps; ++s) {
    const RawTable table = ts_testing::gaussian_mixture(ts_testing::noisy_blobs_spec(1000 + s));
    const BallDataset ds = to_ball_dataset(table, 0.6, false);
    const std::vector<int>& labels = *ds.labels;

    DensityConfig pc;
    pc.radius_r = 0.4;
    pc.metric = Metric::poincare;
    DensityConfig ec = pc;
    ec.metric = Metric::euclidean;
    const DensityProfile fp = density_profile(ds, pc);
    const DensityProfile fe = density_profile(ds, ec);

    const index_t n_prime = static_cast<index_t>(std::ceil(0.95 * static_cast<double>(ds.n())));
    const Surrogate sp = build_surrogate(fp, n_prime);
    const Surrogate se = build_surrogate(fe, n_prime);
    std::vector<index_t> all(static_cast<std::size_t>(ds.n()));
    std::iota(all.begin(), all.end(), index_t{0});

    const double risk_full = one_minus_ari_on_subset(ds, all, fp, labels);
    const double risk_poin = one_minus_ari_on_subset(ds, sp.kept_indices, fp, labels);
    const double risk_eucl = one_minus_ari_on_subset(ds, se.kept_indices, fp, labels);
    if (risk_poin <= risk_full + 1e-12 && risk_poin <= risk_eucl + 1e-12) ++wins;
  }
  const double elapsed = timer.seconds();
  results.push_back({5, "clustering-on-surrogate direction",
                     wins >= 14 && elapsed < 60.0, elapsed, 60.0,
                     std::to_string(wins) + "/20 seeds (need 14)"});
}

// ---------------------------------------------------------------------------
// criterion 6: threshold label-complexity demo
// ---------------------------------------------------------------------------

void criterion_6(std::vector<Outcome>& results) {
  Timer timer;
  bool teacher_ok = true;
  for (double eps : {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const ThresholdDemoResult r = threshold_demo(eps, 10, 0);
    teacher_ok &= r.teaching_examples == 2 && r.teaching_error <= eps;
  }

  const ThresholdDemoResult pinned = threshold_demo(1e-4, 100, 0);
  const int bound = static_cast<int>(std::ceil(std::log2(2.0 / 1e-4)));  // 15
  const bool active_ok =
      pinned.active_error <= 1e-4 && pinned.active_queries <= bound && bound == 15;

  std::vector<double> errors;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    errors.push_back(threshold_demo(1e-4, 10000, seed).passive_error);
  std::nth_element(errors.begin(), errors.begin() + 50, errors.end());
  const double median = errors[50];
  const bool passive_ok = median >= 1e-4 / 4.0 && median <= 1e-4 * 4.0;

  const double elapsed = timer.seconds();
  results.push_back(
      {6, "threshold label complexity", teacher_ok && active_ok && passive_ok && elapsed < 10.0,
       elapsed, 10.0,
       "teacher 2 examples, active " + std::to_string(pinned.active_queries) + " <= 15 (13 cited)" +
           ", passive median " + format_real(median)});
}

// ---------------------------------------------------------------------------
// criterion 7: importance-weighting unbiasedness
// ---------------------------------------------------------------------------

void criterion_7(std::vector<Outcome>& results) {
  Timer timer;
  const int T = 100;
  const int runs = 100000;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uloss(0.0, 1.0);
  std::uniform_real_distribution<double> uprob(0.2, 1.0);

  ImportanceSamplingRun run;
  run.prob_floor = 0.2;
  run.probs.resize(T);
  run.losses.resize(T);
  run.draws.assign(T, 0);
  double plain_mean = 0.0;
  for (int t = 0; t < T; ++t) {
    run.probs[t] = uprob(rng);
    run.losses[t] = uloss(rng);
    plain_mean += run.losses[t];
  }
  plain_mean /= T;

  double sum = 0.0, sum_sq = 0.0;
  for (int rep = 0; rep < runs; ++rep) {
    for (int t = 0; t < T; ++t) {
      std::bernoulli_distribution coin(run.probs[t]);
      run.draws[t] = coin(rng) ? 1 : 0;
    }
    const double est = importance_weighted_risk(run);
    sum += est;
    sum_sq += est * est;
  }
  const double mc_mean = sum / runs;
  const double variance = (sum_sq - sum * sum / runs) / (runs - 1);
  const double stderr_mc = std::sqrt(variance / runs);
  const bool ok = std::abs(mc_mean - plain_mean) <= 3.0 * stderr_mc;

  const double elapsed = timer.seconds();
  results.push_back({7, "importance-weighting unbiasedness", ok && elapsed < 10.0, elapsed, 10.0,
                     "|" + format_real(mc_mean) + " - " + format_real(plain_mean) + "| vs 3se " +
                         format_real(3.0 * stderr_mc)});
}

// ---------------------------------------------------------------------------
// criterion 8: teaching-vs-random direction
// ---------------------------------------------------------------------------

void criterion_8(std::vector<Outcome>& results) {
  Timer timer;
  const BallDataset ds = ts_testing::gaussian_mixture_dataset(ts_testing::labeled_benchmark_spec());
  const std::vector<index_t> costs{19, 38, 76, 153, 307};

  Selector teaching;
  teaching.kind = SelectorKind::teaching;
  teaching.teaching.surrogate_frac = 0.878;
  teaching.teaching.radius_r = 0.4;
  teaching.teaching.eta = 1.0e-4;
  const RiskReport teach_curve = risk_curve(ds, teaching, costs);

  std::vector<double> random_mean(costs.size(), 0.0);
  const int random_reps = 20;
  for (int rep = 0; rep < random_reps; ++rep) {
    Selector random;
    random.kind = SelectorKind::random_uniform;
    random.seed = static_cast<std::uint64_t>(rep + 1);
    const RiskReport curve = risk_curve(ds, random, costs);
    for (std::size_t i = 0; i < costs.size(); ++i) random_mean[i] += curve.risks[i];
  }
  for (double& v : random_mean) v /= random_reps;

  int wins = 0;
  std::string detail;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const bool win = teach_curve.risks[i] <= random_mean[i] + 1e-12;
    wins += win;
    detail += (i ? " " : "") + std::to_string(costs[i]) + (win ? ":w" : ":l");
  }
  const bool ok = static_cast<double>(wins) / static_cast<double>(costs.size()) >= 0.7;

  const double elapsed = timer.seconds();
  results.push_back({8, "teaching-vs-random direction", ok && elapsed < 60.0, elapsed, 60.0,
                     std::to_string(wins) + "/5 cost points (" + detail + ")"});
}

// ---------------------------------------------------------------------------
// criterion 9: CLI determinism at 1 and 8 threads
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_9(std::vector<Outcome>& results) {
  Timer timer;
  const auto dir = std::filesystem::temp_directory_path() / "teachset_acceptance";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "case_study.csv";
  {
    const RawTable table = ts_testing::gaussian_mixture(ts_testing::case_study_spec());
    std::ostringstream out;
    out.precision(17);
    for (const auto& row : table.rows) out << row[0] << ',' << row[1] << '\n';
    std::ofstream file(csv, std::ios::binary | std::ios::trunc);
    file << out.str();
  }

  const auto indices = dir / "indices.txt";
  const auto report = dir / "report.txt";
  const std::string cmd = std::string(TEACHSET_CLI_PATH) + " teach --input " + csv.string() +
                          " --ball-norm 0.6 --surrogate-frac 0.878 --radius 0.4 --eta 1e-4" +
                          " --halvings 6 --seed 0 --out-indices " + indices.string() +
                          " --out-report " + report.string() + " >/dev/null 2>&1";

  bool ran_ok = true;
  std::vector<std::string> index_bytes, report_bytes;
  for (const char* threads : {"1", "1", "8", "8"}) {
    setenv("TEACHSET_THREADS", threads, 1);
    const int status = std::system(cmd.c_str());
    ran_ok &= status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    index_bytes.push_back(slurp(indices));
    report_bytes.push_back(slurp(report));
  }
  unsetenv("TEACHSET_THREADS");

  bool identical = ran_ok;
  for (std::size_t i = 1; i < index_bytes.size(); ++i) {
    identical &= index_bytes[i] == index_bytes[0];
    identical &= report_bytes[i] == report_bytes[0];
  }
  const bool sizes_ok =
      ran_ok && report_bytes[0].find("stage_sizes=1230,615,307,153,76,38,19") != std::string::npos;

  const double elapsed = timer.seconds();
  results.push_back({9, "CLI determinism", identical && sizes_ok && elapsed < 60.0, elapsed, 60.0,
                     std::string(ran_ok ? "4 runs byte-identical" : "CLI run failed") +
                         (sizes_ok ? ", stage sizes reproduced" : ", stage sizes wrong")});
}

}  // namespace

int main() {
  std::vector<Outcome> results;
  criteria_1_2(results);
  criterion_3(results);
  criterion_4(results);
  criterion_5(results);
  criterion_6(results);
  criterion_7(results);
  criterion_8(results);
  criterion_9(results);

  bool all_pass = true;
  for (const auto& r : results) {
    all_pass &= r.pass;
    std::printf("[%s] criterion %d: %s — %s (%.2f s < %.0f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds, r.limit);
  }
  std::printf("%s: %zu/%zu criteria passed\n", all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                     [](const Outcome& r) { return r.pass; })),
              results.size());
  return all_pass ? 0 : 1;
}
