#include "teachset/teaching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teachset {

void validate(const TeachingConfig& config) {
  if (!(config.surrogate_frac > 0.0 && config.surrogate_frac <= 1.0))
    throw BadConfig("surrogate_frac must be in (0, 1]");
  if (!(config.radius_r > 0.0)) throw BadConfig("radius_r must be positive");
  if (!(config.eta > 0.0)) throw EtaNonPositive("eta must be positive");
  if (config.halvings.has_value() == config.target_size.has_value())
    throw BadConfig("exactly one of halvings / target_size must be set");
  if (config.halvings && *config.halvings < 0) throw BadConfig("halvings must be >= 0");
  if (config.target_size && *config.target_size < 1)
    throw BadConfig("target_size must be >= 1");
  if (config.kernel_sigma && !(*config.kernel_sigma > 0.0))
    throw BadConfig("kernel_sigma must be positive");
}

namespace {

// largest l whose iterated floor-halving of n_prime stays >= target
int halvings_for_target(index_t n_prime, index_t target) {
  int l = 0;
  index_t s = n_prime;
  while (s / 2 >= target && s >= 2) {
    s /= 2;
    ++l;
  }
  return l;
}

}  // namespace

TeachingSet teach(const BallDataset& ds, const TeachingConfig& config) {
  validate(config);
  const index_t n = ds.n();
  if (n < 2) throw EmptyDataset("teach: need at least 2 points");

  const index_t n_prime =
      std::min<index_t>(n, static_cast<index_t>(std::ceil(config.surrogate_frac * static_cast<double>(n))));

  DensityConfig dc;
  dc.radius_r = config.radius_r;
  dc.metric = config.metric;
  dc.normalized = config.normalized_density;

  TeachingSet ts;
  ts.config = config;
  ts.profile = density_profile(ds, dc);
  ts.surrogate = build_surrogate(ts.profile, n_prime);

  int l = 0;
  if (config.halvings) {
    l = *config.halvings;
  } else {
    if (*config.target_size > n_prime)
      throw TargetTooLarge("teach: target_size " + std::to_string(*config.target_size) +
                           " exceeds surrogate size " + std::to_string(n_prime));
    l = halvings_for_target(n_prime, *config.target_size);
  }

  ts.trace = run_halving(ds, ts.surrogate, config.eta, l, config.metric,
                         config.selection_options());
  ts.indices = ts.trace.final_stage();

  if (config.target_size && static_cast<index_t>(ts.indices.size()) > *config.target_size) {
    std::vector<double> pool_scores;
    pool_scores.reserve(ts.indices.size());
    for (index_t i : ts.indices)
      pool_scores.push_back(ts.profile.scores[static_cast<std::size_t>(i)]);
    ts.indices = kmedoids_reduce(ds, ts.indices, *config.target_size, config.metric,
                                 config.seed, pool_scores);
    ts.adjusted_by_kmedoids = true;
  }
  return ts;
}

std::vector<index_t> kmedoids_reduce(const BallDataset& ds, std::span<const index_t> pool,
                                     index_t k, Metric metric, std::uint64_t /*seed*/,
                                     std::span<const double> density_scores) {
  const index_t m = static_cast<index_t>(pool.size());
  if (k < 1 || k > m)
    throw KExceedsPool("kmedoids_reduce: k " + std::to_string(k) + " not in [1, " +
                       std::to_string(m) + "]");
  if (!density_scores.empty() && static_cast<index_t>(density_scores.size()) != m)
    throw LengthMismatch("kmedoids_reduce: density_scores length mismatch");
  if (k == m) {
    std::vector<index_t> out(pool.begin(), pool.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // local pairwise distances over the pool
  Eigen::MatrixXd d(m, m);
  for (index_t i = 0; i < m; ++i) {
    d(i, i) = 0.0;
    for (index_t j = i + 1; j < m; ++j) {
      const double v = point_distance(ds.points.row(pool[static_cast<std::size_t>(i)]),
                                      ds.points.row(pool[static_cast<std::size_t>(j)]), metric);
      d(i, j) = v;
      d(j, i) = v;
    }
  }

  // farthest-first init from the highest-density pool point
  index_t start = 0;
  if (!density_scores.empty()) {
    double best = -std::numeric_limits<double>::infinity();
    for (index_t i = 0; i < m; ++i) {
      if (density_scores[static_cast<std::size_t>(i)] > best) {
        best = density_scores[static_cast<std::size_t>(i)];
        start = i;
      }
    }
  }
  std::vector<index_t> medoids{start};
  std::vector<char> is_medoid(static_cast<std::size_t>(m), 0);
  is_medoid[static_cast<std::size_t>(start)] = 1;
  Eigen::VectorXd nearest = d.col(start);
  while (static_cast<index_t>(medoids.size()) < k) {
    index_t far = -1;
    double far_d = -1.0;
    for (index_t i = 0; i < m; ++i) {
      if (is_medoid[static_cast<std::size_t>(i)]) continue;
      if (nearest(i) > far_d) {
        far_d = nearest(i);
        far = i;
      }
    }
    medoids.push_back(far);
    is_medoid[static_cast<std::size_t>(far)] = 1;
    nearest = nearest.cwiseMin(d.col(far));
  }

  // nearest / second-nearest medoid distances per pool point; nearest slot
  // ties go to the earlier medoid in list order
  std::vector<double> d1(static_cast<std::size_t>(m)), d2(static_cast<std::size_t>(m));
  std::vector<index_t> n1(static_cast<std::size_t>(m));
  auto refresh_caches = [&] {
    for (index_t i = 0; i < m; ++i) {
      double a = std::numeric_limits<double>::infinity();
      double b = std::numeric_limits<double>::infinity();
      index_t slot = 0;
      for (std::size_t s = 0; s < medoids.size(); ++s) {
        const double v = d(i, medoids[s]);
        if (v < a) {
          b = a;
          a = v;
          slot = static_cast<index_t>(s);
        } else if (v < b) {
          b = v;
        }
      }
      d1[static_cast<std::size_t>(i)] = a;
      d2[static_cast<std::size_t>(i)] = b;
      n1[static_cast<std::size_t>(i)] = slot;
    }
  };
  auto total_cost = [&] {
    refresh_caches();
    double c = 0.0;
    for (index_t i = 0; i < m; ++i) c += d1[static_cast<std::size_t>(i)];
    return c;
  };

  double current = total_cost();
  for (int sweep = 0; sweep < 100; ++sweep) {
    // best improving swap; ties resolved by (slot, candidate) scan order
    double best_delta = 0.0;
    index_t best_slot = -1, best_candidate = -1;
    for (std::size_t slot = 0; slot < medoids.size(); ++slot) {
      for (index_t cand = 0; cand < m; ++cand) {
        if (is_medoid[static_cast<std::size_t>(cand)]) continue;
        double delta = 0.0;
        for (index_t i = 0; i < m; ++i) {
          const double dh = d(i, cand);
          if (n1[static_cast<std::size_t>(i)] == static_cast<index_t>(slot))
            delta += std::min(dh, d2[static_cast<std::size_t>(i)]) - d1[static_cast<std::size_t>(i)];
          else if (dh < d1[static_cast<std::size_t>(i)])
            delta += dh - d1[static_cast<std::size_t>(i)];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_slot = static_cast<index_t>(slot);
          best_candidate = cand;
        }
      }
    }
    if (best_slot < 0) break;
    const index_t out_medoid = medoids[static_cast<std::size_t>(best_slot)];
    is_medoid[static_cast<std::size_t>(out_medoid)] = 0;
    medoids[static_cast<std::size_t>(best_slot)] = best_candidate;
    is_medoid[static_cast<std::size_t>(best_candidate)] = 1;
    const double updated = total_cost();
    if (!(updated < current)) {  // rounding disagreement: undo and stop
      is_medoid[static_cast<std::size_t>(best_candidate)] = 0;
      medoids[static_cast<std::size_t>(best_slot)] = out_medoid;
      is_medoid[static_cast<std::size_t>(out_medoid)] = 1;
      refresh_caches();
      break;
    }
    current = updated;
  }

  std::vector<index_t> out;
  out.reserve(medoids.size());
  for (index_t local : medoids) out.push_back(pool[static_cast<std::size_t>(local)]);
  std::sort(out.begin(), out.end());
  return out;
}

TeachingReport teaching_report(const TeachingSet& ts, const BallDataset& ds) {
  (void)ds;
  TeachingReport rep;
  rep.config = ts.config;
  rep.cost = ts.cost();
  rep.adjusted_by_kmedoids = ts.adjusted_by_kmedoids;
  rep.surrogate_cutoff = ts.surrogate.cutoff_score;

  auto summarize = [&](const std::vector<index_t>& stage) {
    StageSummary s;
    s.size = stage.size();
    double mn = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (index_t i : stage) {
      const double v = ts.profile.scores[static_cast<std::size_t>(i)];
      mn = std::min(mn, v);
      sum += v;
    }
    s.min_density = stage.empty() ? 0.0 : mn;
    s.mean_density = stage.empty() ? 0.0 : sum / static_cast<double>(stage.size());
    return s;
  };

  for (const auto& stage : ts.trace.stages) rep.stages.push_back(summarize(stage));
  if (ts.adjusted_by_kmedoids) rep.stages.push_back(summarize(ts.indices));
  return rep;
}

}  // namespace teachset
