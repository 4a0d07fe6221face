#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seriation/graphon.hpp"
#include "seriation/postproc.hpp"

namespace seriation {

/// Numeric checks of the model assumptions on a discretization grid.
struct AssumptionReport {
  int resolution = 0;
  double alpha = 0.0;
  double beta = 0.0;

  double lipschitz_estimate = 0.0;  // max finite-difference ratio

  bool robinsonian_ok = false;
  double robinsonian_worst_violation = 0.0;
  double robinsonian_witness[3] = {0.0, 0.0, 0.0};  // x < y < z of the worst triple

  bool derivative_nonzero_ok = false;  // |dw/dx| > 1e-8 on >= 99% of grid
  double derivative_nonzero_fraction = 0.0;

  int degree_critical_points = 0;  // sign changes of d' on the grid

  bool gap_ok = false;  // lambda2 of the discretized operator < min degree
  double lambda2 = 0.0;
  double min_degree = 0.0;

  bool mdi_ok = false;  // mean-distance inequality for (alpha, beta)
  double mdi_margin_right = 0.0;
  double mdi_margin_left = 0.0;

  double distinguishability_d1 = 0.0;  // min |w(y,z)-w(x,z)|/|x-y|, z outside [x,y]
  bool distinguishability_ok = false;

  bool fiedler_monotone_ok = false;
  double fiedler_min_slope = 0.0;  // min forward difference, diagnostic only
  double fiedler_gap = 0.0;        // lambda3 - lambda2

  bool all_ok() const {
    return robinsonian_ok && derivative_nonzero_ok && gap_ok && mdi_ok &&
           distinguishability_ok && fiedler_monotone_ok && fiedler_gap > 0.0;
  }
  std::string to_kv() const;  // flat "key value" lines
};

// Evaluates every assumption on the resolution grid. Never throws on a
// failed check; failures live in the report.
AssumptionReport check_assumptions(const Graphon& graphon,
                                   const SplitConfig& cfg, int resolution);

struct ConvergenceRow {
  int resolution = 0;   // the coarse side of the pair
  double norm_diff = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;   // log-log fit of norm_diff vs resolution
  bool slope_defined = false;  // false when some diff is 0 (exact kernels)
};

// Operator-norm differences between consecutive nested discretizations.
// Each resolution must divide the next.
ConvergenceStudy laplacian_convergence_study(
    const Graphon& graphon, const std::vector<int>& resolutions);

struct ConsistencyRow {
  int n = 0;
  double median_distance = 0.0;  // L2, after sign and reversal matching
  int disconnected_skipped = 0;
  int trials_used = 0;
};

// Samples graphs with rho = n^{-rho_exponent} and measures how far their
// Fiedler vectors sit from the noise-free discretized reference.
std::vector<ConsistencyRow> fiedler_consistency_study(
    const Graphon& graphon, const std::vector<int>& n_list,
    double rho_exponent, int trials, std::uint64_t seed);

}  // namespace seriation
