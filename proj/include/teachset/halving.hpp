#pragma once

#include <span>
#include <vector>

#include "teachset/density.hpp"
#include "teachset/geometry.hpp"

namespace teachset {

// Working-kernel form used by the greedy deflation. The stored kernel H is
// always the raw pairwise metric distances; the transform is applied to the
// working copy the selection deflates.
//
// gaussian_of_distance, exp(-h^2 / (2 sigma^2)), is the default: with the
// raw distance matrix the diagonal is zero, the (H_cc + eta*C_cc)^-1 pivot
// is ~1e-4-sized, and each rank-one deflation amplifies the residual by
// ~|col|^2/pivot, which leaves the double range within a handful of picks
// at surrogate sizes in the hundreds. The transformed kernel has unit
// diagonal, so the pivot is O(1) and the residual contracts.
enum class KernelTransform { gaussian_of_distance, raw_distance };

// maximize_gain subtracts the largest explainable part per pick (the
// transductive-design reading). minimize_gain is the literal argmin rule,
// kept only for side-by-side comparison in tests.
enum class SelectionObjective { maximize_gain, minimize_gain };

struct SelectionOptions {
  KernelTransform transform = KernelTransform::gaussian_of_distance;
  double sigma = 0.4;  // bandwidth of the gaussian transform
  SelectionObjective objective = SelectionObjective::maximize_gain;
};

struct KernelMatrix {
  Eigen::MatrixXd H;                // raw distances restricted to the subset
  std::vector<index_t> index_map;   // local row -> dataset index
  double eta = 1e-4;
  Eigen::VectorXd C_diag;           // Gram diagonal <x_i, x_i>

  index_t m() const { return H.rows(); }
};

struct SelectionState {
  Eigen::MatrixXd residual;        // working kernel, deflated after each pick
  std::vector<index_t> selected;   // local indices in pick order
  std::vector<double> gains;       // deflation gain per pick
  std::vector<char> is_selected;
  double eps_abs = 0.0;            // absolute denominator floor
};

struct HalvingTrace {
  std::vector<std::vector<index_t>> stages;      // stage 0 = surrogate
  std::vector<std::vector<double>> stage_gains;  // one list per halving
  int halvings = 0;

  const std::vector<index_t>& final_stage() const { return stages.back(); }
};

KernelMatrix build_kernel(const BallDataset& ds, std::span<const index_t> subset,
                          double eta, Metric metric = Metric::poincare);

// Working copy plus the denominator floor: eps = 1e-9 * trace(W)/m, falling
// back to 1e-9 * sum(W)/m when the working kernel has a zero diagonal.
SelectionState init_selection(const KernelMatrix& km, const SelectionOptions& opts = {});

// |residual column|^2 / (residual_cc + eta * C_cc + eps_abs).
double deflation_gain(const SelectionState& state, const KernelMatrix& km, index_t candidate);

// k rounds of pick-best-gain followed by the rank-one deflation update
// (re-symmetrized, diagonal clamped at zero). Ties go to the lowest local
// index. Deterministic for fixed inputs regardless of worker count.
SelectionState greedy_select(const KernelMatrix& km, index_t k,
                             const SelectionOptions& opts = {});

// Rebuilds the kernel on `current` and keeps the best floor(|current|/2).
std::vector<index_t> halve_once(const BallDataset& ds, std::span<const index_t> current,
                                double eta, Metric metric = Metric::poincare,
                                const SelectionOptions& opts = {});

// Algorithm: stage 0 is the surrogate; each of the l halvings reselects half
// of the previous stage with a freshly built kernel.
HalvingTrace run_halving(const BallDataset& ds, const Surrogate& surrogate, double eta,
                         int halvings, Metric metric = Metric::poincare,
                         const SelectionOptions& opts = {});

}  // namespace teachset
