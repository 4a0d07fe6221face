#include <doctest.h>

#include <cmath>
#include <sstream>

#include "seriation/graph.hpp"
#include "seriation/rng.hpp"

using namespace seriation;

TEST_CASE("probability-one kernel gives the complete graph") {
  const Graphon w = Graphon::step(1.0, 1.0);
  const SampledGraph g = SampledGraph::sample(w, 5, 1.0, 123);
  CHECK(g.edge_count() == 10);
  for (int i = 0; i < 5; ++i) {
    CHECK(g.degree(i) == 4);
    CHECK_FALSE(g.edge(i, i));
  }
  CHECK(g.is_connected());
}

TEST_CASE("probability-zero kernel gives the empty graph") {
  const Graphon w = Graphon::step(0.0, 1.0);
  const SampledGraph g = SampledGraph::sample(w, 6, 1.0, 5);
  CHECK(g.edge_count() == 0);
  CHECK_FALSE(g.is_connected());
}

TEST_CASE("edge frequency matches the kernel probability") {
  // Pair (i,j) = (9, 29) of n=50 at w = 1 - 0.8|x-y|: p = 1 - 0.8*0.4 = 0.68.
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  int hits = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const SampledGraph g =
        SampledGraph::sample(w, 50, 1.0, rng::derive(777, s));
    if (g.edge(9, 29)) ++hits;
  }
  const double p = 0.68;
  const double sd = std::sqrt(p * (1 - p) * trials);
  CHECK(std::abs(hits - p * trials) < 3.0 * sd);
}

TEST_CASE("rho thins edges multiplicatively") {
  const Graphon w = Graphon::step(1.0, 1.0);
  int hits = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const SampledGraph g =
        SampledGraph::sample(w, 10, 0.3, rng::derive(888, s));
    if (g.edge(2, 7)) ++hits;
  }
  CHECK(std::abs(hits - 3000) < 3.0 * std::sqrt(10000 * 0.3 * 0.7));
}

TEST_CASE("sampling is deterministic in the seed") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const SampledGraph a = SampledGraph::sample(w, 40, 1.0, 99);
  const SampledGraph b = SampledGraph::sample(w, 40, 1.0, 99);
  const SampledGraph c = SampledGraph::sample(w, 40, 1.0, 100);
  int diffs_ab = 0;
  int diffs_ac = 0;
  for (int i = 0; i < 40; ++i) {
    for (int j = i + 1; j < 40; ++j) {
      diffs_ab += a.edge(i, j) != b.edge(i, j);
      diffs_ac += a.edge(i, j) != c.edge(i, j);
    }
  }
  CHECK(diffs_ab == 0);
  CHECK(diffs_ac > 0);
}

TEST_CASE("neighbors and dense adjacency agree with edge()") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const SampledGraph g = SampledGraph::sample(w, 25, 0.8, 4);
  const Eigen::MatrixXd a = g.dense_adjacency();
  for (int i = 0; i < 25; ++i) {
    int degree = 0;
    for (int j = 0; j < 25; ++j) {
      CHECK(a(i, j) == doctest::Approx(g.edge(i, j) ? 1.0 : 0.0));
      CHECK(a(i, j) == a(j, i));
      degree += g.edge(i, j);
    }
    CHECK(degree == g.degree(i));
    CHECK(static_cast<std::size_t>(degree) == g.neighbors(i).size());
  }
}

TEST_CASE("induced adjacency follows the vertex selection") {
  const SampledGraph g = SampledGraph::from_edges(
      5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const Eigen::MatrixXd sub = g.induced_adjacency({0, 2, 4});
  CHECK(sub.rows() == 3);
  CHECK(sub(0, 1) == doctest::Approx(0.0));  // 0-2 not adjacent
  CHECK(sub(0, 2) == doctest::Approx(1.0));  // 0-4 adjacent
  CHECK(sub(1, 2) == doctest::Approx(0.0));  // 2-4 not adjacent
}

TEST_CASE("connectivity detection on the whole graph and subsets") {
  // Two triangles.
  const SampledGraph g = SampledGraph::from_edges(
      6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(g.is_connected());
  CHECK(g.is_connected_on({0, 1, 2}));
  CHECK(g.is_connected_on({3, 4, 5}));
  CHECK_FALSE(g.is_connected_on({0, 3}));
}

TEST_CASE("edge lists round-trip bit-exactly") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const SampledGraph g = SampledGraph::sample(w, 30, 0.7, 31337);
  std::stringstream buffer;
  write_edge_list(buffer, g);
  const SampledGraph back = read_edge_list(buffer);
  CHECK(back.size() == g.size());
  CHECK(back.rho() == doctest::Approx(g.rho()));
  CHECK(back.seed() == g.seed());
  CHECK(back.edge_count() == g.edge_count());
  for (int i = 0; i < 30; ++i) {
    for (int j = i + 1; j < 30; ++j) {
      CHECK(back.edge(i, j) == g.edge(i, j));
    }
  }
  // Serializing again yields identical bytes.
  std::stringstream again;
  write_edge_list(again, back);
  std::stringstream original;
  write_edge_list(original, g);
  CHECK(again.str() == original.str());
}

TEST_CASE("edge list parse errors name the line") {
  std::stringstream bad("3 2 1 0\n1 2\n1 9\n");
  try {
    read_edge_list(bad);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
