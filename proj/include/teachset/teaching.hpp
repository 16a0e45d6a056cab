#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "teachset/halving.hpp"

namespace teachset {

struct TeachingConfig {
  double surrogate_frac = 0.95;  // n' = ceil(frac * n)
  double radius_r = 0.4;
  double eta = 1e-4;
  Metric metric = Metric::poincare;
  // Exactly one sizing mode must be set.
  std::optional<int> halvings;
  std::optional<index_t> target_size;
  std::uint64_t seed = 0;  // k-medoids initialization
  bool normalized_density = false;
  KernelTransform kernel = KernelTransform::gaussian_of_distance;
  std::optional<double> kernel_sigma;  // defaults to radius_r

  SelectionOptions selection_options() const {
    SelectionOptions o;
    o.transform = kernel;
    o.sigma = kernel_sigma.value_or(radius_r);
    return o;
  }
};

void validate(const TeachingConfig& config);

struct TeachingSet {
  std::vector<index_t> indices;  // the final teaching set
  HalvingTrace trace;
  bool adjusted_by_kmedoids = false;
  TeachingConfig config;
  Surrogate surrogate;
  DensityProfile profile;

  index_t cost() const { return static_cast<index_t>(indices.size()); }
};

// density profile -> top-n' surrogate -> iterative halving -> optional
// k-medoids reduction to an exact requested size.
TeachingSet teach(const BallDataset& ds, const TeachingConfig& config);

// PAM on the pool under the given metric. Initialization is greedy
// farthest-first seeded at the pool point of highest density rank (pool
// front when no scores are supplied); swaps take the best improving
// (medoid, candidate) pair in index order, capped at 100 sweeps.
// density_scores, when given, aligns with pool.
std::vector<index_t> kmedoids_reduce(const BallDataset& ds, std::span<const index_t> pool,
                                     index_t k, Metric metric, std::uint64_t seed,
                                     std::span<const double> density_scores = {});

struct StageSummary {
  std::size_t size = 0;
  double min_density = 0.0;
  double mean_density = 0.0;
};

struct TeachingReport {
  std::vector<StageSummary> stages;
  index_t cost = 0;
  bool adjusted_by_kmedoids = false;
  double surrogate_cutoff = 0.0;
  TeachingConfig config;
};

TeachingReport teaching_report(const TeachingSet& ts, const BallDataset& ds);

}  // namespace teachset
