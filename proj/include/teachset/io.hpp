#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teachset/geometry.hpp"

namespace teachset {

struct CsvOptions {
  char delimiter = ',';
  std::optional<bool> header;      // unset = auto-detect on the first line
  std::optional<int> label_column;
};

struct RawTable {
  std::vector<std::vector<double>> rows;  // feature columns only
  std::vector<std::string> header;        // empty when the file had none
  std::optional<int> label_column;
  std::optional<std::vector<int>> labels;

  std::size_t n() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }
};

RawTable parse_csv(const std::string& path, const CsvOptions& options = {});

// "label idx:val ..." lines, 1-based indices densified to the max index.
RawTable parse_libsvm(const std::string& path);

RawTable parse_table(const std::string& path, const std::string& format,
                     const CsvOptions& options = {});

// Projection plus label pass-through.
BallDataset to_ball_dataset(const RawTable& table, double target_max_norm = kDefaultBallNorm,
                            bool center = false);

}  // namespace teachset
