#include "teachset/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace teachset {

namespace {

// contingency table over two partitions
struct Contingency {
  std::map<std::pair<int, int>, std::size_t> cells;
  std::map<int, std::size_t> row_sums;
  std::map<int, std::size_t> col_sums;
  std::size_t n = 0;
};

Contingency contingency(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw LengthMismatch("partitions have lengths " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  if (a.empty()) throw EmptyDataset("empty partitions");
  Contingency c;
  c.n = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0) throw BadConfig("cluster ids must be nonnegative");
    ++c.cells[{a[i], b[i]}];
    ++c.row_sums[a[i]];
    ++c.col_sums[b[i]];
  }
  return c;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const Partition& a, const Partition& b) {
  const Contingency c = contingency(a, b);
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, v] : c.cells) sum_ij += choose2(static_cast<double>(v));
  for (const auto& [key, v] : c.row_sums) sum_a += choose2(static_cast<double>(v));
  for (const auto& [key, v] : c.col_sums) sum_b += choose2(static_cast<double>(v));
  const double pairs = choose2(static_cast<double>(c.n));
  if (pairs == 0.0) return 1.0;  // single point: identical by definition
  const double expected = sum_a * sum_b / pairs;
  const double maximum = 0.5 * (sum_a + sum_b);
  if (maximum - expected == 0.0) return 1.0;  // both partitions trivial
  return (sum_ij - expected) / (maximum - expected);
}

double mutual_information(const Partition& a, const Partition& b) {
  const Contingency c = contingency(a, b);
  const double n = static_cast<double>(c.n);
  double mi = 0.0;
  for (const auto& [key, v] : c.cells) {
    const double nij = static_cast<double>(v);
    const double ai = static_cast<double>(c.row_sums.at(key.first));
    const double bj = static_cast<double>(c.col_sums.at(key.second));
    mi += (nij / n) * std::log(n * nij / (ai * bj));
  }
  return std::max(0.0, mi);
}

double nearest_centroid_risk(std::span<const index_t> train_idx, const BallDataset& ds) {
  if (!ds.labels) throw NoLabels("nearest_centroid_risk: dataset has no labels");
  if (train_idx.empty()) throw EmptyTraining("nearest_centroid_risk: empty training subset");
  const auto& labels = *ds.labels;

  std::map<int, Eigen::RowVectorXd> centroid_sum;
  std::map<int, std::size_t> centroid_count;
  for (index_t i : train_idx) {
    if (i < 0 || i >= ds.n()) throw IndexOutOfRange("nearest_centroid_risk: bad index");
    const int cls = labels[static_cast<std::size_t>(i)];
    auto it = centroid_sum.find(cls);
    if (it == centroid_sum.end())
      centroid_sum.emplace(cls, ds.points.row(i));
    else
      it->second += ds.points.row(i);
    ++centroid_count[cls];
  }

  std::vector<std::pair<int, Eigen::RowVectorXd>> centroids;
  for (auto& [cls, sum] : centroid_sum)
    centroids.emplace_back(cls, sum / static_cast<double>(centroid_count[cls]));

  std::size_t errors = 0;
  for (index_t i = 0; i < ds.n(); ++i) {
    int best_cls = centroids.front().first;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [cls, cen] : centroids) {
      const double d = (ds.points.row(i) - cen).squaredNorm();
      if (d < best_d) {  // ties keep the lowest class id (map order)
        best_d = d;
        best_cls = cls;
      }
    }
    errors += best_cls != labels[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(errors) / static_cast<double>(ds.n());
}

double importance_weighted_risk(const ImportanceSamplingRun& run) {
  const std::size_t T = run.T();
  if (T == 0) throw EmptyDataset("importance_weighted_risk: empty run");
  if (run.draws.size() != T || run.losses.size() != T)
    throw LengthMismatch("importance_weighted_risk: field lengths differ");
  if (!(run.prob_floor > 0.0 && run.prob_floor <= 1.0))
    throw BadConfig("prob_floor must be in (0, 1]");

  double sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double p = run.probs[t];
    if (p < run.prob_floor || p > 1.0)
      throw ProbBelowFloor("p_" + std::to_string(t) + " = " + std::to_string(p) +
                           " outside [" + std::to_string(run.prob_floor) + ", 1]");
    const int q = run.draws[t];
    if (q != 0 && q != 1) throw BadConfig("q_t must be 0 or 1");
    sum += q / p * run.losses[t];
  }
  return sum / static_cast<double>(T);
}

ThresholdDemoResult threshold_demo(double epsilon, int n_passive, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw EpsilonOutOfRange("epsilon must be in (0, 1)");
  if (n_passive < 1) throw BadConfig("n_passive must be >= 1");

  ThresholdDemoResult res;
  res.epsilon = epsilon;

  const auto label = [](double x) { return x >= 0.0 ? +1 : -1; };

  // passive: n uniform labeled draws, threshold at the midpoint of the
  // innermost opposite-label pair
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double lo = -1.0, hi = 1.0;  // tightest negative / positive seen
  for (int i = 0; i < n_passive; ++i) {
    const double x = uni(rng);
    if (label(x) > 0)
      hi = std::min(hi, x);
    else
      lo = std::max(lo, x);
  }
  res.passive_queries = n_passive;
  res.passive_error = std::abs((lo + hi) / 2.0);

  // active: binary search, halving the version interval per query
  double a = -1.0, b = 1.0;
  int queries = 0;
  while ((b - a) / 2.0 > epsilon) {
    const double mid = (a + b) / 2.0;
    ++queries;
    if (label(mid) > 0)
      b = mid;
    else
      a = mid;
  }
  res.active_queries = queries;
  res.active_error = std::abs((a + b) / 2.0);

  // teacher: the two symmetric examples around the target threshold
  const double neg = -epsilon / 2.0, pos = +epsilon / 2.0;
  res.teaching_examples = 2;
  res.teaching_error = std::abs((neg + pos) / 2.0);
  return res;
}

const char* selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::teaching: return "teaching";
    case SelectorKind::random_uniform: return "random";
    case SelectorKind::kmedoids_only: return "kmedoids";
  }
  return "unknown";
}

RiskReport risk_curve(const BallDataset& ds, const Selector& selector,
                      std::span<const index_t> costs) {
  for (std::size_t i = 0; i + 1 < costs.size(); ++i)
    if (costs[i] > costs[i + 1]) throw BadConfig("risk_curve: costs must be ascending");
  for (index_t c : costs)
    if (c < 1 || c > ds.n()) throw BadConfig("risk_curve: cost out of range");

  std::vector<index_t> all(static_cast<std::size_t>(ds.n()));
  std::iota(all.begin(), all.end(), index_t{0});

  RiskReport rep;
  rep.learner_tag = "nearest_centroid";
  rep.baseline_risk = nearest_centroid_risk(all, ds);
  rep.costs.assign(costs.begin(), costs.end());

  for (index_t cost : costs) {
    std::vector<index_t> subset;
    switch (selector.kind) {
      case SelectorKind::teaching: {
        TeachingConfig cfg = selector.teaching;
        cfg.halvings.reset();
        cfg.target_size = cost;
        subset = teach(ds, cfg).indices;
        break;
      }
      case SelectorKind::random_uniform: {
        // partial Fisher-Yates keyed by (seed, cost)
        std::mt19937_64 rng(selector.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(cost));
        std::vector<index_t> pool = all;
        for (index_t i = 0; i < cost; ++i) {
          std::uniform_int_distribution<index_t> pick(i, static_cast<index_t>(pool.size()) - 1);
          std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
        }
        subset.assign(pool.begin(), pool.begin() + cost);
        break;
      }
      case SelectorKind::kmedoids_only:
        subset = kmedoids_reduce(ds, all, cost, selector.teaching.metric, selector.seed);
        break;
    }
    rep.risks.push_back(std::abs(nearest_centroid_risk(subset, ds) - rep.baseline_risk));
  }
  return rep;
}

}  // namespace teachset
