#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "seriation/graph.hpp"
#include "seriation/graphon.hpp"
#include "seriation/ordering.hpp"

namespace seriation {

/// Thrown when a computation requires a connected graph but the Laplacian's
/// zero eigenvalue is not simple.
class DisconnectedGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the iterative eigensolver fails to converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LaplacianMatrix {
  Eigen::MatrixXd entries;  // symmetric, rows sum to zero
  int resolution = 0;       // dimension n
  bool scaled = false;      // true when entries carry the 1/n factor
  Eigen::MatrixXd kernel;   // the generating kernel, kept for scaled matrices

  int size() const { return resolution; }
};

struct SpectralResult {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  Eigen::VectorXd fiedler;  // unit norm, orthogonal to constants
  bool degenerate = false;  // gap3 below 1e-10 (ordering only bijective)
  double solver_tolerance = 0.0;

  double gap2() const { return lambda2 - lambda1; }
  double gap3() const { return lambda3 - lambda2; }
};

// L = diag(row sums) - input. Input must be square, symmetric, nonnegative.
LaplacianMatrix laplacian(const Eigen::MatrixXd& adjacency_or_model);

// Three smallest eigenvalues and the lambda2-eigenvector. Dense solve for
// n <= 2048, deflated Lanczos above. Sign fixed so that sum_i i*phi_i >= 0.
SpectralResult fiedler_pair(const LaplacianMatrix& laplacian,
                            double tolerance = 1e-8);

// Algorithm: rank vertices by their Fiedler-vector entries, ties by id.
Ordering spectral_seriation(const SampledGraph& g, double tolerance = 1e-8);

// Same on the induced subgraph; the result's support is `vertices`.
Ordering spectral_seriation_subset(const SampledGraph& g,
                                   const std::vector<int>& vertices,
                                   double tolerance = 1e-8);

// Noise-free Laplacian of the graphon's model matrix at the given
// resolution, scaled by 1/resolution so its spectrum approximates the
// integral operator f -> int w(x,y)(f(x)-f(y)) dy.
LaplacianMatrix discretized_graphon_laplacian(const Graphon& graphon,
                                              int resolution);

// Spectral norm of coarse-vs-fine discretizations: block-replicates the
// coarse kernel to the fine resolution and measures the scaled Laplacian
// difference. Both inputs must be scaled; resolutions must nest.
double operator_norm_diff(const LaplacianMatrix& coarse,
                          const LaplacianMatrix& fine);

}  // namespace seriation
