#include "teachset/halving.hpp"

#include <cmath>

namespace teachset {

KernelMatrix build_kernel(const BallDataset& ds, std::span<const index_t> subset,
                          double eta, Metric metric) {
  if (!(eta > 0.0)) throw EtaNonPositive("build_kernel: eta must be positive");
  const index_t m = static_cast<index_t>(subset.size());
  if (m < 1) throw EmptyDataset("build_kernel: empty subset");
  for (index_t i : subset)
    if (i < 0 || i >= ds.n())
      throw IndexOutOfRange("build_kernel: dataset index " + std::to_string(i) +
                            " out of range");

  KernelMatrix km;
  km.eta = eta;
  km.index_map.assign(subset.begin(), subset.end());
  km.H.resize(m, m);
  km.C_diag.resize(m);
  for (index_t i = 0; i < m; ++i) {
    km.C_diag(i) = ds.points.row(subset[static_cast<std::size_t>(i)]).squaredNorm();
    km.H(i, i) = 0.0;
    for (index_t j = i + 1; j < m; ++j) {
      const double d = point_distance(ds.points.row(subset[static_cast<std::size_t>(i)]),
                                      ds.points.row(subset[static_cast<std::size_t>(j)]), metric);
      km.H(i, j) = d;
      km.H(j, i) = d;
    }
  }
  return km;
}

SelectionState init_selection(const KernelMatrix& km, const SelectionOptions& opts) {
  const index_t m = km.m();
  SelectionState st;
  if (opts.transform == KernelTransform::gaussian_of_distance) {
    if (!(opts.sigma > 0.0)) throw BadConfig("kernel sigma must be positive");
    const double denom = 2.0 * opts.sigma * opts.sigma;
    st.residual = (-km.H.array().square() / denom).exp();
  } else {
    st.residual = km.H;
  }
  st.is_selected.assign(static_cast<std::size_t>(m), 0);

  double scale = st.residual.trace();
  if (scale <= 0.0) scale = st.residual.sum();
  st.eps_abs = scale > 0.0 ? 1e-9 * scale / static_cast<double>(m) : 0.0;
  return st;
}

namespace {

double gain_at(const SelectionState& st, const KernelMatrix& km, index_t c,
               double col_sq_norm) {
  const double denom = st.residual(c, c) + km.eta * km.C_diag(c) + st.eps_abs;
  if (denom <= 0.0) return 0.0;  // all-coincident degenerate kernel
  return col_sq_norm / denom;
}

}  // namespace

double deflation_gain(const SelectionState& state, const KernelMatrix& km, index_t candidate) {
  if (candidate < 0 || candidate >= km.m())
    throw IndexOutOfRange("deflation_gain: candidate out of range");
  if (state.is_selected[static_cast<std::size_t>(candidate)])
    throw AlreadySelected("deflation_gain: candidate " + std::to_string(candidate) +
                          " already selected");
  return gain_at(state, km, candidate, state.residual.col(candidate).squaredNorm());
}

SelectionState greedy_select(const KernelMatrix& km, index_t k, const SelectionOptions& opts) {
  const index_t m = km.m();
  if (k < 1 || k > m)
    throw KOutOfRange("greedy_select: k " + std::to_string(k) + " not in [1, " +
                      std::to_string(m) + "]");

  SelectionState st = init_selection(km, opts);
  st.selected.reserve(static_cast<std::size_t>(k));
  st.gains.reserve(static_cast<std::size_t>(k));
  const bool maximize = opts.objective == SelectionObjective::maximize_gain;

  Eigen::VectorXd col_norms(m);
  for (index_t pick = 0; pick < k; ++pick) {
    col_norms = st.residual.colwise().squaredNorm();
    index_t best = -1;
    double best_gain = 0.0;
    for (index_t c = 0; c < m; ++c) {
      if (st.is_selected[static_cast<std::size_t>(c)]) continue;
      const double g = gain_at(st, km, c, col_norms(c));
      if (best < 0 || (maximize ? g > best_gain : g < best_gain)) {
        best = c;
        best_gain = g;
      }
    }

    st.is_selected[static_cast<std::size_t>(best)] = 1;
    st.selected.push_back(best);
    st.gains.push_back(best_gain);

    const double beta = st.residual(best, best) + km.eta * km.C_diag(best) + st.eps_abs;
    if (beta > 0.0) {
      const Eigen::VectorXd w = st.residual.col(best);
      st.residual.noalias() -= (w * w.transpose()) / beta;
      st.residual.triangularView<Eigen::StrictlyUpper>() =
          st.residual.triangularView<Eigen::StrictlyLower>().transpose();
      for (index_t i = 0; i < m; ++i)
        if (st.residual(i, i) < 0.0) st.residual(i, i) = 0.0;
    }
  }
  return st;
}

std::vector<index_t> halve_once(const BallDataset& ds, std::span<const index_t> current,
                                double eta, Metric metric, const SelectionOptions& opts) {
  if (current.size() < 2)
    throw TooSmallToHalve("halve_once: need at least 2 points, got " +
                          std::to_string(current.size()));
  const KernelMatrix km = build_kernel(ds, current, eta, metric);
  const index_t k = static_cast<index_t>(current.size() / 2);
  const SelectionState st = greedy_select(km, k, opts);
  std::vector<index_t> out;
  out.reserve(st.selected.size());
  for (index_t local : st.selected) out.push_back(km.index_map[static_cast<std::size_t>(local)]);
  return out;
}

HalvingTrace run_halving(const BallDataset& ds, const Surrogate& surrogate, double eta,
                         int halvings, Metric metric, const SelectionOptions& opts) {
  if (halvings < 0) throw TooManyHalvings("run_halving: negative halving count");
  // every stage must stay halvable: 2^l <= n'
  index_t size = surrogate.n_prime;
  for (int j = 0; j < halvings; ++j) {
    if (size < 2)
      throw TooManyHalvings("run_halving: " + std::to_string(halvings) +
                            " halvings exhaust n'=" + std::to_string(surrogate.n_prime));
    size /= 2;
  }

  HalvingTrace trace;
  trace.halvings = halvings;
  trace.stages.push_back(surrogate.kept_indices);
  for (int j = 0; j < halvings; ++j) {
    const auto& cur = trace.stages.back();
    const KernelMatrix km = build_kernel(ds, cur, eta, metric);
    const index_t k = static_cast<index_t>(cur.size() / 2);
    SelectionState st = greedy_select(km, k, opts);
    std::vector<index_t> next;
    next.reserve(st.selected.size());
    for (index_t local : st.selected) next.push_back(km.index_map[static_cast<std::size_t>(local)]);
    trace.stages.push_back(std::move(next));
    trace.stage_gains.push_back(std::move(st.gains));
  }
  return trace;
}

}  // namespace teachset
