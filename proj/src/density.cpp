#include "teachset/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "teachset/parallel.hpp"

namespace teachset {

std::vector<index_t> hypersphere_members(index_t center_idx, const DistanceMatrix& dm,
                                         double radius_r) {
  if (center_idx < 0 || center_idx >= dm.n())
    throw IndexOutOfRange("hypersphere_members: index " + std::to_string(center_idx) +
                          " out of range for n=" + std::to_string(dm.n()));
  if (!(radius_r > 0.0)) throw BadConfig("hypersphere radius must be positive");
  std::vector<index_t> members;
  for (index_t j = 0; j < dm.n(); ++j)
    if (dm.values(center_idx, j) <= radius_r) members.push_back(j);
  return members;
}

std::pair<double, int> density_score(index_t center_idx, const DistanceMatrix& dm,
                                     const DensityConfig& config, index_t dim) {
  if (dm.metric != config.metric)
    throw MetricMismatch(std::string("density_score: distance matrix is ") +
                         metric_name(dm.metric) + ", config asks for " +
                         metric_name(config.metric));
  if (center_idx < 0 || center_idx >= dm.n())
    throw IndexOutOfRange("density_score: index out of range");
  const double r = config.radius_r;
  if (!(r > 0.0)) throw BadConfig("density radius must be positive");

  double sum = 0.0;
  int count = 0;
  for (index_t j = 0; j < dm.n(); ++j) {
    const double d = dm.values(center_idx, j);
    if (d <= r) {
      const double z = d / r;
      sum += std::exp(-0.5 * z * z);
      ++count;
    }
  }
  // Truncated-kernel mass inside the hypersphere. A per-member mean would
  // rank an isolated point (sole term exp(0) = 1) at the global maximum.
  double score = sum;
  if (config.normalized) {
    const double log_kappa =
        -0.5 * static_cast<double>(dim) * std::log(2.0 * M_PI) - static_cast<double>(dim) * std::log(r);
    score = std::exp(log_kappa + std::log(score));
  }
  return {score, count};
}

DensityProfile density_profile(const DistanceMatrix& dm, const DensityConfig& config,
                               index_t dim) {
  const index_t n = dm.n();
  if (n < 1) throw EmptyDataset("density_profile: empty distance matrix");
  // validate up front so the worker threads below cannot throw
  if (dm.metric != config.metric)
    throw MetricMismatch(std::string("density_profile: distance matrix is ") +
                         metric_name(dm.metric) + ", config asks for " +
                         metric_name(config.metric));
  if (!(config.radius_r > 0.0)) throw BadConfig("density radius must be positive");
  DensityProfile p;
  p.config = config;
  p.scores.resize(static_cast<std::size_t>(n));
  p.neighbor_counts.resize(static_cast<std::size_t>(n));
  parallel_for(n, [&](index_t i) {
    const auto [score, count] = density_score(i, dm, config, dim);
    p.scores[static_cast<std::size_t>(i)] = score;
    p.neighbor_counts[static_cast<std::size_t>(i)] = count;
  });
  return p;
}

DensityProfile density_profile(const BallDataset& ds, const DensityConfig& config) {
  const DistanceMatrix dm = pairwise_distances(ds, config.metric);
  return density_profile(dm, config, ds.dim());
}

std::vector<index_t> density_order(const DensityProfile& profile) {
  std::vector<index_t> order(static_cast<std::size_t>(profile.n()));
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    const double sa = profile.scores[static_cast<std::size_t>(a)];
    const double sb = profile.scores[static_cast<std::size_t>(b)];
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return order;
}

Surrogate build_surrogate(const DensityProfile& profile, index_t n_prime) {
  const index_t n = profile.n();
  if (n_prime < 1 || n_prime > n)
    throw NPrimeOutOfRange("build_surrogate: n_prime " + std::to_string(n_prime) +
                           " not in [1, " + std::to_string(n) + "]");
  std::vector<index_t> order = density_order(profile);
  order.resize(static_cast<std::size_t>(n_prime));

  Surrogate s;
  s.cutoff_score = profile.scores[static_cast<std::size_t>(order.back())];
  s.kept_indices = std::move(order);
  s.n_prime = n_prime;
  s.parent_n = n;
  return s;
}

}  // namespace teachset
