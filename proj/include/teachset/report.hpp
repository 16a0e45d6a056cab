#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teachset/eval.hpp"
#include "teachset/teaching.hpp"

namespace teachset {

// 12-significant-digit formatting shared by every serialized real, so equal
// inputs give byte-equal files.
std::string format_real(double v);

std::string format_index_list(std::span<const index_t> values);

// FNV-1a 64-bit over the raw file bytes.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string file_digest(const std::string& path);

// write temp file in the target directory, then rename over the destination
void write_file_atomic(const std::string& path, const std::string& content);

// Fully resolved invocation record embedded at the top of every report.
struct RunManifest {
  std::string command;
  std::string input_path;
  std::string input_format;
  std::string input_digest;
  double ball_norm = kDefaultBallNorm;
  bool center = false;
  TeachingConfig config;
  std::vector<std::pair<std::string, std::string>> outputs;  // role -> path

  // fixed field order, "key=value" lines
  std::string to_text() const;
};

std::string render_teaching_report(const RunManifest& manifest, const TeachingReport& report);
std::string render_indices(std::span<const index_t> indices);
std::string render_density_csv(const DensityProfile& profile);
std::string render_risk_report(const RunManifest& manifest, const RiskReport& report,
                               const std::string& strategy);
std::string render_threshold_report(const RunManifest& manifest, const ThresholdDemoResult& res,
                                    int n_passive, std::uint64_t seed);

}  // namespace teachset
