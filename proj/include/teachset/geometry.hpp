#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "teachset/errors.hpp"

namespace teachset {

using index_t = Eigen::Index;

enum class Metric { poincare, euclidean };

const char* metric_name(Metric m);
Metric metric_from_name(std::string_view name);

// Default projection target: strictly inside the open unit ball.
inline constexpr double kDefaultBallNorm = 0.999;

// Feature rows scaled into the open unit ball by one global factor.
// Invariant: every row norm <= target used at projection time (< 1), all
// entries finite, and points.row(i) == scale_factor * original.row(i)
// bit-exactly.
struct BallDataset {
  Eigen::MatrixXd points;  // n x dim
  std::optional<std::vector<int>> labels;
  double scale_factor = 1.0;

  index_t n() const { return points.rows(); }
  index_t dim() const { return points.cols(); }
};

struct DistanceMatrix {
  Eigen::MatrixXd values;  // symmetric, zero diagonal, nonnegative
  Metric metric = Metric::poincare;

  index_t n() const { return values.rows(); }
};

// Scales all rows by target_max_norm / max_row_norm (factor 1 when all rows
// are zero). Optional mean-centering happens before the norm is measured;
// it is off by default and not part of any reference setting.
BallDataset project_to_ball(const std::vector<std::vector<double>>& raw_rows,
                            double target_max_norm = kDefaultBallNorm,
                            bool center = false);

// arccosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))), both points strictly inside
// the unit ball.
double poincare_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                         const Eigen::Ref<const Eigen::RowVectorXd>& v);

double euclidean_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                          const Eigen::Ref<const Eigen::RowVectorXd>& v);

double point_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                      const Eigen::Ref<const Eigen::RowVectorXd>& v, Metric metric);

// Dense n x n matrix of pairwise distances. Rows are computed independently
// (parallel-safe) and the result does not depend on the worker count.
DistanceMatrix pairwise_distances(const BallDataset& ds, Metric metric);

}  // namespace teachset
