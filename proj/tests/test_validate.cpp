#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "seriation/graphon.hpp"
#include "seriation/postproc.hpp"
#include "seriation/validate.hpp"

using namespace seriation;

TEST_CASE("smooth decreasing kernel passes every assumption") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const AssumptionReport r = check_assumptions(w, SplitConfig(0.05, 0.31), 600);
  CHECK(r.all_ok());
  CHECK(r.robinsonian_ok);
  CHECK(r.robinsonian_worst_violation == doctest::Approx(0.0));
  CHECK(r.derivative_nonzero_ok);
  CHECK(r.derivative_nonzero_fraction > 0.99);
  CHECK(r.gap_ok);
  CHECK(r.lambda2 < r.min_degree);
  CHECK(r.mdi_ok);
  CHECK(r.mdi_margin_right > 0.0);
  CHECK(r.mdi_margin_left > 0.0);
  CHECK(r.distinguishability_ok);
  CHECK(r.fiedler_monotone_ok);
  CHECK(r.fiedler_gap > 0.0);
  // w = 1 - 0.8|x-y|: both the Lipschitz constant and the distinguishability
  // rate equal the slope 0.8.
  CHECK(r.lipschitz_estimate == doctest::Approx(0.8).epsilon(0.01));
  CHECK(r.distinguishability_d1 == doctest::Approx(0.8).epsilon(0.01));
  CHECK(r.degree_critical_points == 1);  // degree peaks at x = 1/2
}

TEST_CASE("gaussian kernel passes as well") {
  const Graphon w = Graphon::rbf(0.4);
  const AssumptionReport r = check_assumptions(w, SplitConfig(0.05, 0.31), 400);
  CHECK(r.all_ok());
  CHECK(r.lipschitz_estimate ==
        doctest::Approx(std::exp(-0.5) / 0.4).epsilon(0.02));
}

TEST_CASE("step kernel fails the derivative check") {
  const Graphon w = Graphon::step(1.0, 0.3);
  const AssumptionReport r = check_assumptions(w, SplitConfig(0.05, 0.31), 300);
  CHECK_FALSE(r.derivative_nonzero_ok);
  CHECK_FALSE(r.all_ok());
}

TEST_CASE("constant kernel fails the separation checks") {
  const Graphon w = Graphon::step(0.5, 1.0);
  const AssumptionReport r = check_assumptions(w, SplitConfig(0.05, 0.31), 300);
  CHECK_FALSE(r.mdi_ok);
  CHECK_FALSE(r.all_ok());
}

TEST_CASE("report is deterministic and serializes all fields") {
  const Graphon w = Graphon::affine_distance(0.5, 1.0);
  const AssumptionReport a = check_assumptions(w, SplitConfig(0.05, 0.31), 200);
  const AssumptionReport b = check_assumptions(w, SplitConfig(0.05, 0.31), 200);
  CHECK(a.to_kv() == b.to_kv());
  const std::string kv = a.to_kv();
  for (const char* key :
       {"resolution", "alpha", "beta", "lipschitz_estimate", "robinsonian_ok",
        "derivative_nonzero_ok", "gap_ok", "mdi_ok", "distinguishability_d1",
        "fiedler_monotone_ok", "fiedler_gap", "all_ok"}) {
    CHECK_MESSAGE(kv.find(key) != std::string::npos, key);
  }
}

TEST_CASE("convergence study on an exact kernel reports zero diffs") {
  const Graphon w = Graphon::step(0.7, 1.0);
  const ConvergenceStudy study =
      laplacian_convergence_study(w, {50, 100, 200});
  REQUIRE(study.rows.size() == 2);
  for (const ConvergenceRow& row : study.rows) {
    CHECK(row.norm_diff < 2.0 / row.resolution);
  }
  CHECK_FALSE(study.slope_defined);
}

TEST_CASE("convergence study recovers the 1/n rate") {
  const Graphon w = Graphon::affine_distance(1.0, 1.0);
  const ConvergenceStudy study =
      laplacian_convergence_study(w, {100, 200, 400, 800, 1600});
  REQUIRE(study.rows.size() == 4);
  for (const ConvergenceRow& row : study.rows) {
    CHECK(row.norm_diff > 0.0);
    CHECK(row.norm_diff <= 4.0 * 1.0 / row.resolution);
  }
  REQUIRE(study.slope_defined);
  CHECK(study.slope == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("consistency study is reproducible and shrinks with n") {
  const Graphon w = Graphon::affine_distance(0.8, 1.0);
  const std::vector<int> sizes{200, 400, 800};
  const auto rows = fiedler_consistency_study(w, sizes, 0.0, 9, 123);
  const auto again = fiedler_consistency_study(w, sizes, 0.0, 9, 123);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == sizes[i]);
    CHECK(rows[i].trials_used + rows[i].disconnected_skipped == 9);
    CHECK(rows[i].median_distance == again[i].median_distance);
  }
  CHECK(rows[1].median_distance < rows[0].median_distance);
  CHECK(rows[2].median_distance < rows[1].median_distance);
}
