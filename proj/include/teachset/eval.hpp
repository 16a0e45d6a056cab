#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teachset/teaching.hpp"

namespace teachset {

using Partition = std::vector<int>;

// Hubert-Arabie adjusted Rand index; 1 iff the partitions agree up to label
// renaming.
double adjusted_rand_index(const Partition& a, const Partition& b);

// Mutual information in nats.
double mutual_information(const Partition& a, const Partition& b);

// Fits per-class centroids on the subset, returns the 0-1 error over the
// full (labeled) dataset. The stand-in student learner.
double nearest_centroid_risk(std::span<const index_t> train_idx, const BallDataset& ds);

struct ImportanceSamplingRun {
  std::vector<double> probs;   // p_t in (0, 1]
  std::vector<int> draws;      // q_t in {0, 1}
  std::vector<double> losses;  // f(h(x_t), y_t)
  double prob_floor = 1e-3;    // phi

  std::size_t T() const { return probs.size(); }
};

// (1/T) sum_t (q_t / p_t) f_t
double importance_weighted_risk(const ImportanceSamplingRun& run);

struct ThresholdDemoResult {
  double epsilon = 0.0;
  int passive_queries = 0;
  int active_queries = 0;
  int teaching_examples = 2;
  double passive_error = 0.0;
  double active_error = 0.0;
  double teaching_error = 0.0;
};

// Threshold classifier at 0 on [-1, 1]: passive sampling, binary-search
// active learner, and the two-example teacher.
ThresholdDemoResult threshold_demo(double epsilon, int n_passive, std::uint64_t seed);

enum class SelectorKind { teaching, random_uniform, kmedoids_only };

struct Selector {
  SelectorKind kind = SelectorKind::teaching;
  std::uint64_t seed = 0;            // random_uniform / kmedoids
  TeachingConfig teaching;           // teaching pipeline parameters
};

const char* selector_name(SelectorKind kind);

struct RiskReport {
  std::vector<index_t> costs;
  std::vector<double> risks;  // |risk(subset) - baseline_risk| per cost
  std::string learner_tag;
  double baseline_risk = 0.0;
};

// For each cost, builds the subset with the strategy and records the risk
// disagreement against training on all of ds.
RiskReport risk_curve(const BallDataset& ds, const Selector& selector,
                      std::span<const index_t> costs);

}  // namespace teachset
