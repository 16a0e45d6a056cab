#include "teachset/geometry.hpp"

#include <cmath>

#include "teachset/parallel.hpp"

namespace teachset {

const char* metric_name(Metric m) {
  return m == Metric::poincare ? "poincare" : "euclidean";
}

Metric metric_from_name(std::string_view name) {
  if (name == "poincare") return Metric::poincare;
  if (name == "euclidean") return Metric::euclidean;
  throw BadConfig("unknown metric: " + std::string(name));
}

BallDataset project_to_ball(const std::vector<std::vector<double>>& raw_rows,
                            double target_max_norm, bool center) {
  if (raw_rows.empty()) throw EmptyDataset("project_to_ball: no rows");
  if (!(target_max_norm > 0.0 && target_max_norm < 1.0))
    throw BadConfig("target_max_norm must be in (0, 1)");

  const std::size_t dim = raw_rows.front().size();
  if (dim == 0) throw EmptyDataset("project_to_ball: zero-width rows");
  Eigen::MatrixXd x(static_cast<index_t>(raw_rows.size()), static_cast<index_t>(dim));
  for (std::size_t i = 0; i < raw_rows.size(); ++i) {
    if (raw_rows[i].size() != dim)
      throw RaggedRows("project_to_ball: row " + std::to_string(i) + " has " +
                       std::to_string(raw_rows[i].size()) + " columns, expected " +
                       std::to_string(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = raw_rows[i][j];
      if (!std::isfinite(v))
        throw NonFiniteInput("project_to_ball: non-finite value at row " + std::to_string(i) +
                             ", col " + std::to_string(j));
      x(static_cast<index_t>(i), static_cast<index_t>(j)) = v;
    }
  }

  if (center) {
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
  }

  const double max_norm = x.rowwise().norm().maxCoeff();
  double scale = max_norm > 0.0 ? target_max_norm / max_norm : 1.0;
  // Guard the rounding of |row * scale| past the target; shrink by ulps until
  // every scaled norm actually lands at or below it.
  if (max_norm > 0.0) {
    while ((x * scale).rowwise().norm().maxCoeff() > target_max_norm)
      scale = std::nextafter(scale, 0.0);
  }

  BallDataset ds;
  ds.points = x * scale;
  ds.scale_factor = scale;
  return ds;
}

namespace {

double squared_norm_checked(const Eigen::Ref<const Eigen::RowVectorXd>& u) {
  const double s = u.squaredNorm();
  if (!(s < 1.0))
    throw PointOutsideBall("poincare_distance: point norm " + std::to_string(std::sqrt(s)) +
                           " is not inside the unit ball");
  return s;
}

}  // namespace

double poincare_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                         const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("poincare_distance: dimensions " + std::to_string(u.size()) +
                            " vs " + std::to_string(v.size()));
  const double su = squared_norm_checked(u);
  const double sv = squared_norm_checked(v);
  const double diff = (u - v).squaredNorm();
  const double arg = 1.0 + 2.0 * diff / ((1.0 - su) * (1.0 - sv));
  return std::acosh(arg);
}

double euclidean_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                          const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("euclidean_distance: dimensions " + std::to_string(u.size()) +
                            " vs " + std::to_string(v.size()));
  return (u - v).norm();
}

double point_distance(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                      const Eigen::Ref<const Eigen::RowVectorXd>& v, Metric metric) {
  return metric == Metric::poincare ? poincare_distance(u, v) : euclidean_distance(u, v);
}

DistanceMatrix pairwise_distances(const BallDataset& ds, Metric metric) {
  const index_t n = ds.n();
  if (n < 1) throw EmptyDataset("pairwise_distances: empty dataset");
  // validate up front so the worker threads below cannot throw
  if (metric == Metric::poincare)
    for (index_t i = 0; i < n; ++i) squared_norm_checked(ds.points.row(i));

  DistanceMatrix dm;
  dm.metric = metric;
  dm.values.resize(n, n);
  Eigen::MatrixXd& d = dm.values;

  // Each pair (i, j), i < j, is written only by the worker owning row i.
  parallel_for(n, [&](index_t i) {
    d(i, i) = 0.0;
    for (index_t j = i + 1; j < n; ++j) {
      const double v = point_distance(ds.points.row(i), ds.points.row(j), metric);
      d(i, j) = v;
      d(j, i) = v;
    }
  });
  return dm;
}

}  // namespace teachset
