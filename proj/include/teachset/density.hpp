#pragma once

#include <utility>
#include <vector>

#include "teachset/geometry.hpp"

namespace teachset {

struct DensityConfig {
  double radius_r = 0.4;  // hypersphere radius
  Metric metric = Metric::poincare;
  // Apply the (2*pi)^(-d/2) * r^(-d) constant. Off by default: it is a
  // positive factor shared by all points at fixed (d, r), so every ranking
  // consumer sees the same order either way, and at large d it leaves the
  // double range.
  bool normalized = false;
};

struct DensityProfile {
  std::vector<double> scores;
  std::vector<int> neighbor_counts;  // |S| per point, always >= 1 (self)
  DensityConfig config;

  index_t n() const { return static_cast<index_t>(scores.size()); }
};

// Ordered index subset kept after dropping the lowest-density points.
struct Surrogate {
  std::vector<index_t> kept_indices;  // descending score, ties by ascending index
  double cutoff_score = 0.0;          // score of the last kept index
  index_t n_prime = 0;
  index_t parent_n = 0;
};

// { j : dm[center][j] <= radius_r }; always contains center itself.
std::vector<index_t> hypersphere_members(index_t center_idx, const DistanceMatrix& dm,
                                         double radius_r);

// Sum of kappa * exp(-(dist/r)^2 / 2) over the hypersphere members (the
// truncated-kernel mass around the point; self always contributes exp(0)).
// kappa = 1 unnormalized; otherwise evaluated in log space.
std::pair<double, int> density_score(index_t center_idx, const DistanceMatrix& dm,
                                     const DensityConfig& config, index_t dim);

DensityProfile density_profile(const BallDataset& ds, const DensityConfig& config);
DensityProfile density_profile(const DistanceMatrix& dm, const DensityConfig& config,
                               index_t dim);

Surrogate build_surrogate(const DensityProfile& profile, index_t n_prime);

// Descending-score order with ties broken by ascending index; shared by
// build_surrogate and by anything that needs density ranks.
std::vector<index_t> density_order(const DensityProfile& profile);

}  // namespace teachset
