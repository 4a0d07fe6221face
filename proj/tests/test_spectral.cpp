#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <lapacke.h>

#include "seriation/graph.hpp"
#include "seriation/graphon.hpp"
#include "seriation/ordering.hpp"
#include "seriation/rng.hpp"
#include "seriation/spectral.hpp"

using namespace seriation;

namespace {

// Independent eigensolver: LAPACK dsyevd on a copy of the matrix.
// Returns eigenvalues ascending; columns of `vectors` are eigenvectors.
void lapack_eigh(const Eigen::MatrixXd& m, Eigen::VectorXd& values,
                 Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(m.rows());
  vectors = m;
  values.resize(n);
  const int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, vectors.data(), n,
                     values.data());
  REQUIRE(info == 0);
}

Eigen::MatrixXd path_adjacency(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
  return a;
}

SampledGraph banded_graph(int n, int bandwidth) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= bandwidth; ++j) {
      edges.emplace_back(i, j);
    }
  }
  return SampledGraph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("laplacian of small graphs") {
  const LaplacianMatrix p3 = laplacian(path_adjacency(3));
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((p3.entries - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(p3.resolution == 3);
  CHECK_FALSE(p3.scaled);

  const LaplacianMatrix empty = laplacian(Eigen::MatrixXd::Zero(4, 4));
  CHECK(empty.entries.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // Complete graph on 3: L = 2I - (J - I).
  Eigen::MatrixXd k3 = Eigen::MatrixXd::Ones(3, 3);
  k3.diagonal().setZero();
  const LaplacianMatrix lk3 = laplacian(k3);
  const Eigen::MatrixXd want =
      3.0 * Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Ones(3, 3);
  CHECK((lk3.entries - want).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("laplacian input validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 0, 0;  // asymmetric
  CHECK_THROWS_AS(laplacian(bad), std::invalid_argument);
  CHECK_THROWS_AS(laplacian(Eigen::MatrixXd::Zero(2, 3)),
                  std::invalid_argument);
  Eigen::MatrixXd neg(2, 2);
  neg << 0, -1, -1, 0;
  CHECK_THROWS_AS(laplacian(neg), std::invalid_argument);
}

TEST_CASE("path Laplacian eigenvalues match the closed form") {
  // lambda_k = 2(1 - cos(pi k / n)) for the n-path.
  const int n = 8;
  const SpectralResult res = fiedler_pair(laplacian(path_adjacency(n)));
  CHECK(std::abs(res.lambda1) < 1e-10);
  CHECK(res.lambda2 ==
        doctest::Approx(2.0 * (1.0 - std::cos(M_PI / n))).epsilon(1e-10));
  CHECK(res.lambda3 ==
        doctest::Approx(2.0 * (1.0 - std::cos(2.0 * M_PI / n)))
            .epsilon(1e-10));
  CHECK_FALSE(res.degenerate);
  CHECK(res.fiedler.norm() == doctest::Approx(1.0));
  CHECK(std::abs(res.fiedler.sum()) < 1e-9);
  // cos profile is strictly monotone: the Fiedler entries sort the path.
  for (int i = 0; i + 1 < n; ++i) {
    CHECK(res.fiedler(i) < res.fiedler(i + 1));
  }
}

TEST_CASE("complete graph has a degenerate Fiedler space") {
  Eigen::MatrixXd k6 = Eigen::MatrixXd::Ones(6, 6);
  k6.diagonal().setZero();
  const SpectralResult res = fiedler_pair(laplacian(k6));
  CHECK(res.lambda2 == doctest::Approx(6.0));
  CHECK(res.degenerate);
}

TEST_CASE("disconnected graphs are rejected") {
  const SampledGraph g = SampledGraph::from_edges(
      6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_THROWS_AS(spectral_seriation(g), DisconnectedGraphError);
}

TEST_CASE("noiseless banded graph is seriated exactly") {
  const SampledGraph g = banded_graph(30, 4);
  const Ordering pi = spectral_seriation(g);
  const Ordering id = Ordering::identity(30);
  CHECK((pi == id || pi == id.reversed()));
}

TEST_CASE("seriation of a relabeled graph inverts the relabeling") {
  const int n = 40;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng::shuffle(perm, 99);
  // Edge {i,j} in the band becomes {perm[i], perm[j]}.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= 5; ++j) {
      edges.emplace_back(std::min(perm[i], perm[j]),
                         std::max(perm[i], perm[j]));
    }
  }
  const Ordering pi = spectral_seriation(SampledGraph::from_edges(n, edges));
  // perm[i] must get rank i+1, up to a global reversal.
  std::vector<int> support(n);
  std::iota(support.begin(), support.end(), 0);
  std::vector<int> ranks(n);
  for (int i = 0; i < n; ++i) ranks[static_cast<std::size_t>(perm[i])] = i + 1;
  const Ordering want(support, ranks);
  CHECK((pi == want || pi == want.reversed()));
}

TEST_CASE("subset seriation uses the induced subgraph") {
  const SampledGraph g = banded_graph(40, 4);
  std::vector<int> subset;
  for (int v = 10; v < 30; ++v) subset.push_back(v);
  const Ordering pi = spectral_seriation_subset(g, subset);
  CHECK(pi.support() == subset);
  const Ordering id = Ordering::identity_on(subset);
  CHECK((pi == id || pi == id.reversed()));
}

TEST_CASE("scaled Laplacian of the constant graphon") {
  // w == 1: the operator f -> f - avg(f) has lambda2 = 1 exactly at every
  // resolution up to the 1/n diagonal correction.
  const Graphon w = Graphon::step(1.0, 1.0);
  for (int n : {100, 400}) {
    const LaplacianMatrix lap = discretized_graphon_laplacian(w, n);
    CHECK(lap.scaled);
    const SpectralResult res = fiedler_pair(lap);
    CHECK(res.lambda2 == doctest::Approx(1.0).epsilon(2.0 / n));
  }
}

TEST_CASE("graphon Laplacian lambda2 converges with resolution") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const double l400 =
      fiedler_pair(discretized_graphon_laplacian(w, 400)).lambda2;
  const double l800 =
      fiedler_pair(discretized_graphon_laplacian(w, 800)).lambda2;
  CHECK(std::abs(l800 - l400) < 4.0 * 0.8 / 400.0);
}

TEST_CASE("nice graphon Fiedler vector is monotone") {
  const Graphon w = Graphon::affine_distance(1.0, 1.0);
  const SpectralResult res =
      fiedler_pair(discretized_graphon_laplacian(w, 300));
  CHECK(std::abs(res.lambda1) < 1e-10);
  for (int i = 0; i + 1 < 300; ++i) {
    CHECK(res.fiedler(i) < res.fiedler(i + 1));
  }
}

TEST_CASE("operator norm difference") {
  const Graphon constant = Graphon::step(0.7, 1.0);
  const LaplacianMatrix c100 = discretized_graphon_laplacian(constant, 100);
  const LaplacianMatrix c200 = discretized_graphon_laplacian(constant, 200);
  CHECK(operator_norm_diff(c100, c100) == doctest::Approx(0.0));
  // Piecewise-constant kernels discretize identically at nested resolutions
  // apart from the diagonal correction.
  CHECK(operator_norm_diff(c100, c200) < 2.0 / 100.0);

  const Graphon affine = Graphon::affine_distance(0.8, 1.0);
  const double diff =
      operator_norm_diff(discretized_graphon_laplacian(affine, 100),
                         discretized_graphon_laplacian(affine, 1600));
  CHECK(diff > 0.0);
  CHECK(diff <= 4.0 * 0.8 / 100.0);
}

TEST_CASE("eigensolver agrees with LAPACK on random Laplacians") {
  for (int n : {20, 120, 500}) {
    // Random graph, dense branch of the solver.
    Graphon w = Graphon::affine_distance(0.9, 1.0);
    SampledGraph g = SampledGraph::sample(
        w, n, 1.0, rng::derive(0xABCD, static_cast<std::uint64_t>(n)));
    const LaplacianMatrix lap = laplacian(g.dense_adjacency());
    const SpectralResult res = fiedler_pair(lap);

    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    lapack_eigh(lap.entries, values, vectors);
    CHECK(std::abs(res.lambda1 - values(0)) < 1e-6);
    CHECK(std::abs(res.lambda2 - values(1)) < 1e-6);
    CHECK(std::abs(res.lambda3 - values(2)) < 1e-6);

    Eigen::VectorXd oracle = vectors.col(1);
    if (oracle.dot(res.fiedler) < 0) oracle = -oracle;
    CHECK((oracle - res.fiedler).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("iterative solver matches LAPACK above the dense cutoff") {
  const int n = 2500;
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const SampledGraph g = SampledGraph::sample(w, n, 1.0, 4242);
  const LaplacianMatrix lap = laplacian(g.dense_adjacency());
  const SpectralResult res = fiedler_pair(lap);

  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  lapack_eigh(lap.entries, values, vectors);
  CHECK(std::abs(res.lambda2 - values(1)) < 1e-5 * values(1));
  Eigen::VectorXd oracle = vectors.col(1);
  if (oracle.dot(res.fiedler) < 0) oracle = -oracle;
  CHECK((oracle - res.fiedler).norm() < 1e-4);
}

TEST_CASE("Laplacians are positive semidefinite") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SampledGraph g = SampledGraph::sample(
        Graphon::rbf(0.4), 150, 1.0, rng::derive(7, s));
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    lapack_eigh(laplacian(g.dense_adjacency()).entries, values, vectors);
    CHECK(values(0) > -1e-9);
  }
}

TEST_CASE("sign convention orients the Fiedler vector upward") {
  const SpectralResult res = fiedler_pair(laplacian(path_adjacency(9)));
  double weighted = 0.0;
  for (int i = 0; i < 9; ++i) weighted += i * res.fiedler(i);
  CHECK(weighted >= 0.0);
}
