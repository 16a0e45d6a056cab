#include "teachset/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "teachset/version.hpp"

namespace teachset {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_index_list(std::span<const index_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(values[i]);
  }
  return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
  return hex;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    if (!out) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename " + tmp + " -> " + path + ": " + ec.message());
}

namespace {

void kv(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out.push_back('=');
  out += value;
  out.push_back('\n');
}

}  // namespace

std::string RunManifest::to_text() const {
  std::string out;
  kv(out, "schema", "teachset-report/1");
  kv(out, "tool", kToolName);
  kv(out, "tool_version", kToolVersion);
  kv(out, "command", command);
  kv(out, "input_path", input_path);
  kv(out, "input_format", input_format);
  kv(out, "input_digest", input_digest);
  kv(out, "ball_norm", format_real(ball_norm));
  kv(out, "center", center ? "1" : "0");
  kv(out, "metric", metric_name(config.metric));
  kv(out, "radius", format_real(config.radius_r));
  kv(out, "eta", format_real(config.eta));
  kv(out, "surrogate_frac", format_real(config.surrogate_frac));
  kv(out, "sizing_mode", config.target_size ? "target" : "halvings");
  kv(out, "halvings", config.halvings ? std::to_string(*config.halvings) : "-");
  kv(out, "target_size", config.target_size ? std::to_string(*config.target_size) : "-");
  kv(out, "seed", std::to_string(config.seed));
  kv(out, "normalized_density", config.normalized_density ? "1" : "0");
  kv(out, "kernel",
     config.kernel == KernelTransform::gaussian_of_distance ? "gaussian" : "raw");
  kv(out, "kernel_sigma", format_real(config.kernel_sigma.value_or(config.radius_r)));
  for (const auto& [role, path] : outputs) kv(out, "out_" + role, path);
  return out;
}

std::string render_teaching_report(const RunManifest& manifest, const TeachingReport& report) {
  std::string out = manifest.to_text();
  kv(out, "cost", std::to_string(report.cost));
  kv(out, "adjusted_by_kmedoids", report.adjusted_by_kmedoids ? "1" : "0");
  kv(out, "surrogate_cutoff", format_real(report.surrogate_cutoff));
  kv(out, "stage_count", std::to_string(report.stages.size()));
  std::string sizes;
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    if (i) sizes.push_back(',');
    sizes += std::to_string(report.stages[i].size);
  }
  kv(out, "stage_sizes", sizes);
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const auto& s = report.stages[i];
    kv(out, "stage_" + std::to_string(i) + "_size", std::to_string(s.size));
    kv(out, "stage_" + std::to_string(i) + "_min_density", format_real(s.min_density));
    kv(out, "stage_" + std::to_string(i) + "_mean_density", format_real(s.mean_density));
  }
  return out;
}

std::string render_indices(std::span<const index_t> indices) {
  std::string out;
  for (index_t i : indices) {
    out += std::to_string(i);
    out.push_back('\n');
  }
  return out;
}

std::string render_density_csv(const DensityProfile& profile) {
  std::string out = "index,score,neighbors\n";
  for (index_t i = 0; i < profile.n(); ++i) {
    out += std::to_string(i);
    out.push_back(',');
    out += format_real(profile.scores[static_cast<std::size_t>(i)]);
    out.push_back(',');
    out += std::to_string(profile.neighbor_counts[static_cast<std::size_t>(i)]);
    out.push_back('\n');
  }
  return out;
}

std::string render_risk_report(const RunManifest& manifest, const RiskReport& report,
                               const std::string& strategy) {
  std::string out = manifest.to_text();
  kv(out, "strategy", strategy);
  kv(out, "learner", report.learner_tag);
  kv(out, "baseline_risk", format_real(report.baseline_risk));
  kv(out, "costs", format_index_list(report.costs));
  std::string risks;
  for (std::size_t i = 0; i < report.risks.size(); ++i) {
    if (i) risks.push_back(',');
    risks += format_real(report.risks[i]);
  }
  kv(out, "risk_disagreements", risks);
  return out;
}

std::string render_threshold_report(const RunManifest& manifest, const ThresholdDemoResult& res,
                                    int n_passive, std::uint64_t seed) {
  std::string out = manifest.to_text();
  kv(out, "epsilon", format_real(res.epsilon));
  kv(out, "passive_n", std::to_string(n_passive));
  kv(out, "demo_seed", std::to_string(seed));
  kv(out, "passive_queries", std::to_string(res.passive_queries));
  kv(out, "passive_error", format_real(res.passive_error));
  kv(out, "active_queries", std::to_string(res.active_queries));
  kv(out, "active_error", format_real(res.active_error));
  kv(out, "teaching_examples", std::to_string(res.teaching_examples));
  kv(out, "teaching_error", format_real(res.teaching_error));
  return out;
}

}  // namespace teachset
