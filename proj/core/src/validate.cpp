#include "seriation/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "seriation/experiment.hpp"
#include "seriation/graph.hpp"
#include "seriation/rng.hpp"
#include "seriation/spectral.hpp"

namespace seriation {

namespace {

constexpr int kTripleGridCap = 150;
constexpr double kDerivativeFloor = 1e-8;
constexpr double kRequiredDerivativeFraction = 0.99;
constexpr double kTripleTolerance = 1e-12;

double grid_point(int i, int m) { return (i + 1.0) / m; }

}  // namespace

std::string AssumptionReport::to_kv() const {
  std::ostringstream out;
  out.precision(12);
  out << "resolution " << resolution << '\n'
      << "alpha " << alpha << '\n'
      << "beta " << beta << '\n'
      << "lipschitz_estimate " << lipschitz_estimate << '\n'
      << "robinsonian_ok " << (robinsonian_ok ? 1 : 0) << '\n'
      << "robinsonian_worst_violation " << robinsonian_worst_violation << '\n'
      << "robinsonian_witness " << robinsonian_witness[0] << ' '
      << robinsonian_witness[1] << ' ' << robinsonian_witness[2] << '\n'
      << "derivative_nonzero_ok " << (derivative_nonzero_ok ? 1 : 0) << '\n'
      << "derivative_nonzero_fraction " << derivative_nonzero_fraction << '\n'
      << "degree_critical_points " << degree_critical_points << '\n'
      << "gap_ok " << (gap_ok ? 1 : 0) << '\n'
      << "lambda2 " << lambda2 << '\n'
      << "min_degree " << min_degree << '\n'
      << "mdi_ok " << (mdi_ok ? 1 : 0) << '\n'
      << "mdi_margin_right " << mdi_margin_right << '\n'
      << "mdi_margin_left " << mdi_margin_left << '\n'
      << "distinguishability_d1 " << distinguishability_d1 << '\n'
      << "distinguishability_ok " << (distinguishability_ok ? 1 : 0) << '\n'
      << "fiedler_monotone_ok " << (fiedler_monotone_ok ? 1 : 0) << '\n'
      << "fiedler_min_slope " << fiedler_min_slope << '\n'
      << "fiedler_gap " << fiedler_gap << '\n'
      << "all_ok " << (all_ok() ? 1 : 0) << '\n';
  return out.str();
}

AssumptionReport check_assumptions(const Graphon& graphon,
                                   const SplitConfig& cfg, int resolution) {
  if (resolution < 100) {
    throw std::invalid_argument("assumption checks need resolution >= 100");
  }
  AssumptionReport report;
  report.resolution = resolution;
  report.alpha = cfg.alpha;
  report.beta = cfg.beta;

  const int n = resolution;
  const double h = 1.0 / n;
  const Eigen::MatrixXd kernel = model_matrix(graphon, n);

  // Lipschitz constant: largest one-step difference quotient on the grid.
  double lipschitz = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lipschitz = std::max(
          lipschitz, std::abs(kernel(i + 1, j) - kernel(i, j)) / h);
    }
  }
  report.lipschitz_estimate = lipschitz;

  // Diagonally-increasing check on a coarse subgrid; cubic in grid size.
  const int m = std::min(n, kTripleGridCap);
  report.robinsonian_ok = true;
  for (int i = 0; i < m; ++i) {
    const double x = grid_point(i, m);
    for (int j = i + 1; j < m; ++j) {
      const double y = grid_point(j, m);
      const double wxy = graphon(x, y);
      for (int k = j + 1; k < m; ++k) {
        const double z = grid_point(k, m);
        const double wxz = graphon(x, z);
        const double violation =
            std::max(wxz - wxy, wxz - graphon(y, z));
        if (violation > kTripleTolerance &&
            violation > report.robinsonian_worst_violation) {
          report.robinsonian_ok = false;
          report.robinsonian_worst_violation = violation;
          report.robinsonian_witness[0] = x;
          report.robinsonian_witness[1] = y;
          report.robinsonian_witness[2] = z;
        }
      }
    }
  }

  // Assumption on dw/dx: central differences away from the diagonal kink.
  std::int64_t nonzero = 0;
  std::int64_t total = 0;
  for (int i = 1; i + 1 < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(i - j) <= 1) continue;
      ++total;
      const double deriv = (kernel(i + 1, j) - kernel(i - 1, j)) / (2.0 * h);
      if (std::abs(deriv) > kDerivativeFloor) ++nonzero;
    }
  }
  report.derivative_nonzero_fraction =
      total > 0 ? static_cast<double>(nonzero) / static_cast<double>(total)
                : 0.0;
  report.derivative_nonzero_ok =
      report.derivative_nonzero_fraction >= kRequiredDerivativeFraction;

  // Critical points of the degree function: sign changes of its forward
  // difference. The count is a diagnostic, not a pass/fail flag.
  const Eigen::VectorXd degrees = kernel.rowwise().mean();
  int critical = 0;
  double previous_slope = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double slope = degrees[i + 1] - degrees[i];
    if (i > 0 && ((slope > 0) != (previous_slope > 0) || slope == 0.0)) {
      ++critical;
    }
    if (slope != 0.0) previous_slope = slope;
  }
  report.degree_critical_points = critical;
  report.min_degree = degrees.minCoeff();

  // Spectral-gap assumption: lambda2 on the mean-zero subspace must stay
  // below the smallest degree. Deflating the constant vector exposes
  // lambda2 as the smallest eigenvalue.
  const LaplacianMatrix lap = discretized_graphon_laplacian(graphon, n);
  const double shift = lap.entries.diagonal().maxCoeff() + 1.0;
  Eigen::MatrixXd deflated = lap.entries;
  deflated.array() += shift / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(deflated);
  report.lambda2 = solver.eigenvalues()[0];
  report.gap_ok = report.lambda2 < report.min_degree;

  // Mean-distance inequality for (alpha, beta).
  {
    const int probes = 200;
    double inf_right = std::numeric_limits<double>::infinity();
    double inf_left = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= probes; ++i) {
      const double xr = 1.0 - cfg.alpha + cfg.alpha * i / probes;
      const double xl = cfg.alpha * i / probes;
      inf_right = std::min(inf_right,
                           psi_functions(graphon, cfg.alpha, xr).right);
      inf_left = std::min(inf_left,
                          psi_functions(graphon, cfg.alpha, xl).left);
    }
    report.mdi_margin_right =
        inf_right - psi_functions(graphon, cfg.alpha, 1.0 - cfg.beta).right;
    report.mdi_margin_left =
        inf_left - psi_functions(graphon, cfg.alpha, cfg.beta).left;
    report.mdi_ok =
        report.mdi_margin_right > 0.0 && report.mdi_margin_left > 0.0;
  }

  // Pairwise distinguishability constant: smallest difference quotient
  // |w(y,z)-w(x,z)|/|x-y| over triples with the probe z outside [x,y].
  // Probes between x and y are excluded: symmetric distance kernels always
  // admit an interior z equidistant from both, which says nothing about
  // whether x and y can be told apart from the rest of the graph.
  {
    double d1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double x = grid_point(i, m);
      for (int j = i + 1; j < m; ++j) {
        const double y = grid_point(j, m);
        for (int k = 0; k < m; ++k) {
          if (k >= i && k <= j) continue;
          const double z = grid_point(k, m);
          d1 = std::min(d1,
                        std::abs(graphon(y, z) - graphon(x, z)) / (y - x));
        }
      }
    }
    report.distinguishability_d1 = std::isfinite(d1) ? d1 : 0.0;
    report.distinguishability_ok = report.distinguishability_d1 > 0.0;
  }

  // Fiedler shape: strictly increasing entries after sign normalization,
  // and a gap above the Fiedler value.
  {
    const SpectralResult spec = fiedler_pair(lap, 1e-10);
    report.fiedler_gap = spec.gap3();
    double min_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
      min_slope = std::min(min_slope, spec.fiedler[i + 1] - spec.fiedler[i]);
    }
    report.fiedler_min_slope = min_slope;
    report.fiedler_monotone_ok = min_slope > 0.0;
  }
  return report;
}

ConvergenceStudy laplacian_convergence_study(
    const Graphon& graphon, const std::vector<int>& resolutions) {
  if (resolutions.size() < 2) {
    throw std::invalid_argument("convergence study needs >= 2 resolutions");
  }
  for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
    if (resolutions[k] < 2 || resolutions[k + 1] % resolutions[k] != 0) {
      throw std::invalid_argument("resolutions must be nested");
    }
  }
  ConvergenceStudy study;
  LaplacianMatrix coarse =
      discretized_graphon_laplacian(graphon, resolutions.front());
  for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
    LaplacianMatrix fine =
        discretized_graphon_laplacian(graphon, resolutions[k + 1]);
    study.rows.push_back(
        {resolutions[k], operator_norm_diff(coarse, fine)});
    coarse = std::move(fine);
  }
  std::vector<std::pair<double, double>> points;
  bool positive = true;
  for (const auto& row : study.rows) {
    if (row.norm_diff <= 0.0) positive = false;
    points.emplace_back(row.resolution, row.norm_diff);
  }
  if (positive && points.size() >= 3) {
    study.slope = fit_slope(points);
    study.slope_defined = true;
  }
  return study;
}

std::vector<ConsistencyRow> fiedler_consistency_study(
    const Graphon& graphon, const std::vector<int>& n_list,
    double rho_exponent, int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  if (rho_exponent < 0.0 || rho_exponent >= 1.0) {
    throw std::invalid_argument("rho exponent must lie in [0, 1)");
  }
  std::vector<ConsistencyRow> rows;
  for (int n : n_list) {
    const SpectralResult reference =
        fiedler_pair(discretized_graphon_laplacian(graphon, n), 1e-10);
    const double rho = std::pow(n, -rho_exponent);

    ConsistencyRow row;
    row.n = n;
    std::vector<double> distances;
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t sub_seed = rng::derive(
          seed, (static_cast<std::uint64_t>(n) << 20) +
                    static_cast<std::uint64_t>(trial));
      const SampledGraph g = SampledGraph::sample(graphon, n, rho, sub_seed);
      try {
        const SpectralResult sampled =
            fiedler_pair(laplacian(g.dense_adjacency()), 1e-8);
        double best = std::numeric_limits<double>::infinity();
        for (const bool reverse : {false, true}) {
          Eigen::VectorXd phi = sampled.fiedler;
          if (reverse) phi.reverseInPlace();
          best = std::min({best, (phi - reference.fiedler).norm(),
                           (-phi - reference.fiedler).norm()});
        }
        distances.push_back(best);
      } catch (const DisconnectedGraphError&) {
        ++row.disconnected_skipped;
      }
    }
    row.trials_used = static_cast<int>(distances.size());
    row.median_distance = distances.empty() ? 0.0 : median(distances);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace seriation
