#include "seriation/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "seriation/rng.hpp"

namespace seriation {

namespace {

constexpr int kDenseSolveLimit = 2048;
constexpr double kDegenerateGap = 1e-10;

void fix_sign(Eigen::VectorXd& phi) {
  double weighted = 0.0;
  for (int i = 0; i < phi.size(); ++i) weighted += i * phi[i];
  if (weighted < 0.0) phi = -phi;
}

SpectralResult dense_fiedler(const LaplacianMatrix& lap, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap.entries);
  if (solver.info() != Eigen::Success) {
    throw SolverError("dense symmetric eigensolve failed");
  }
  SpectralResult result;
  result.lambda1 = solver.eigenvalues()[0];
  result.lambda2 = solver.eigenvalues()[1];
  result.lambda3 = lap.resolution > 2 ? solver.eigenvalues()[2]
                                      : solver.eigenvalues()[1];
  result.fiedler = solver.eigenvectors().col(1);
  result.solver_tolerance = tolerance;
  return result;
}

// Lanczos with full reorthogonalization on B = cI - L restricted to the
// orthogonal complement of the constant vector. The two largest Ritz values
// of B there are c - lambda2 and c - lambda3.
SpectralResult lanczos_fiedler(const LaplacianMatrix& lap, double tolerance) {
  const int n = lap.resolution;
  const double shift = 2.0 * lap.entries.diagonal().maxCoeff() + 1.0;
  const int max_iter = std::min(n - 1, 600);

  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;

  Eigen::VectorXd v(n);
  rng::Stream stream(rng::derive(0x4C414E43ULL, static_cast<std::uint64_t>(n)));
  for (int i = 0; i < n; ++i) v[i] = stream.next_uniform01() - 0.5;
  v -= ones.dot(v) * ones;
  v.normalize();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_solver;
  int converged_at = -1;
  for (int k = 0; k < max_iter; ++k) {
    basis.push_back(v);
    Eigen::VectorXd w = shift * v - lap.entries * v;
    alpha.push_back(v.dot(w));
    w -= alpha.back() * v;
    if (k > 0) w -= beta.back() * basis[static_cast<std::size_t>(k - 1)];
    // Full reorthogonalization against the constant vector and all iterates.
    w -= ones.dot(w) * ones;
    for (const auto& u : basis) w -= u.dot(w) * u;
    const double norm = w.norm();
    beta.push_back(norm);

    if (k >= 2) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (int i = 0; i <= k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i < k) {
          t(i, i + 1) = beta[static_cast<std::size_t>(i)];
          t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      tri_solver.compute(t);
      const auto& ritz = tri_solver.eigenvalues();
      const auto& vecs = tri_solver.eigenvectors();
      const double r1 = norm * std::abs(vecs(k, k));
      const double r2 = norm * std::abs(vecs(k, k - 1));
      if (std::max(r1, r2) <= 1e-8 * shift) {
        converged_at = k;
        (void)ritz;
        break;
      }
    }
    if (norm < 1e-14) {  // invariant subspace found; Ritz values exact
      converged_at = k;
      break;
    }
    v = w / norm;
  }
  if (converged_at < 0) {
    throw SolverError("Lanczos did not converge within " +
                      std::to_string(max_iter) + " iterations");
  }

  const int m = converged_at + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < m) {
      t(i, i + 1) = beta[static_cast<std::size_t>(i)];
      t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  tri_solver.compute(t);

  SpectralResult result;
  result.lambda1 = 0.0;  // constant eigenvector, deflated exactly
  result.lambda2 = shift - tri_solver.eigenvalues()[m - 1];
  result.lambda3 = shift - tri_solver.eigenvalues()[m - 2];
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    phi += tri_solver.eigenvectors()(i, m - 1) *
           basis[static_cast<std::size_t>(i)];
  }
  phi -= ones.dot(phi) * ones;
  phi.normalize();
  result.fiedler = phi;
  result.solver_tolerance = tolerance;
  return result;
}

Ordering ordering_from_vector(const Eigen::VectorXd& phi,
                              const std::vector<int>& vertices) {
  std::map<int, double> values;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    values[vertices[k]] = phi[static_cast<Eigen::Index>(k)];
  }
  return Ordering::from_values(values);
}

}  // namespace

LaplacianMatrix laplacian(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("laplacian needs a nonempty square matrix");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("laplacian needs a symmetric matrix");
  }
  if (m.minCoeff() < 0.0) {
    throw std::invalid_argument("laplacian needs nonnegative entries");
  }
  LaplacianMatrix lap;
  lap.resolution = static_cast<int>(m.rows());
  lap.entries = Eigen::MatrixXd(m.rowwise().sum().asDiagonal()) - m;
  return lap;
}

SpectralResult fiedler_pair(const LaplacianMatrix& lap, double tolerance) {
  if (lap.resolution < 2) {
    throw std::invalid_argument("fiedler_pair needs dimension >= 2");
  }
  SpectralResult result = lap.resolution <= kDenseSolveLimit
                              ? dense_fiedler(lap, tolerance)
                              : lanczos_fiedler(lap, tolerance);
  if (result.gap2() < tolerance) {
    throw DisconnectedGraphError(
        "disconnected graph: zero Laplacian eigenvalue is not simple");
  }
  result.degenerate = result.gap3() < kDegenerateGap;
  fix_sign(result.fiedler);
  return result;
}

Ordering spectral_seriation(const SampledGraph& g, double tolerance) {
  const SpectralResult spec = fiedler_pair(laplacian(g.dense_adjacency()),
                                           tolerance);
  std::vector<int> vertices(static_cast<std::size_t>(g.size()));
  std::iota(vertices.begin(), vertices.end(), 0);
  return ordering_from_vector(spec.fiedler, vertices);
}

Ordering spectral_seriation_subset(const SampledGraph& g,
                                   const std::vector<int>& vertices,
                                   double tolerance) {
  const SpectralResult spec =
      fiedler_pair(laplacian(g.induced_adjacency(vertices)), tolerance);
  return ordering_from_vector(spec.fiedler, vertices);
}

LaplacianMatrix discretized_graphon_laplacian(const Graphon& graphon,
                                              int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("resolution must be >= 2");
  }
  LaplacianMatrix lap;
  lap.resolution = resolution;
  lap.scaled = true;
  lap.kernel = model_matrix(graphon, resolution);
  lap.entries =
      (Eigen::MatrixXd(lap.kernel.rowwise().sum().asDiagonal()) - lap.kernel) /
      resolution;
  return lap;
}

double operator_norm_diff(const LaplacianMatrix& coarse,
                          const LaplacianMatrix& fine) {
  if (!coarse.scaled || !fine.scaled || coarse.kernel.size() == 0 ||
      fine.kernel.size() == 0) {
    throw std::invalid_argument(
        "operator_norm_diff needs scaled kernel-backed Laplacians");
  }
  if (fine.resolution % coarse.resolution != 0) {
    throw std::invalid_argument(
        "fine resolution must be a multiple of the coarse resolution");
  }
  const int n1 = coarse.resolution;
  const int n2 = fine.resolution;
  const int factor = n2 / n1;

  Eigen::MatrixXd replicated(n2, n2);
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n2; ++j) {
      replicated(i, j) = coarse.kernel(i / factor, j / factor);
    }
  }
  const Eigen::MatrixXd diff =
      (Eigen::MatrixXd(replicated.rowwise().sum().asDiagonal()) - replicated) /
          n2 -
      fine.entries;

  // Power iteration on the symmetric difference; |Rayleigh| -> spectral norm.
  Eigen::VectorXd v(n2);
  rng::Stream stream(rng::derive(0x4E4F524DULL, static_cast<std::uint64_t>(n2)));
  for (int i = 0; i < n2; ++i) v[i] = stream.next_uniform01() - 0.5;
  v.normalize();
  double norm = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    Eigen::VectorXd w = diff * v;
    const double next = w.norm();
    if (next < 1e-300) return 0.0;
    v = w / next;
    if (iter > 10 && std::abs(next - norm) <= 1e-12 * std::max(next, 1e-30)) {
      norm = next;
      break;
    }
    norm = next;
  }
  return norm;
}

}  // namespace seriation
