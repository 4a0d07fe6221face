#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "seriation/graph.hpp"
#include "seriation/ordering.hpp"

namespace seriation {

/// Split-refinement parameters; mu is derived, never stored.
struct SplitConfig {
  double alpha;
  double beta;

  SplitConfig(double alpha, double beta);
  double mu() const { return (alpha + beta) / 2.0; }
};

/// Three disjoint vertex sets covering {0..n-1}, sizes within one of n/3 and
/// descending: |s1| >= |s2| >= |s3|.
struct GoodPartition {
  std::vector<int> s1;
  std::vector<int> s2;
  std::vector<int> s3;
};

/// Per-vertex neighbourhood fractions for a target set S, measured against
/// the right/left extreme sets estimated on a disjoint set T.
struct NeighborStats {
  std::vector<int> s_vertices;  // ascending
  std::vector<double> psi_r;    // parallel to s_vertices
  std::vector<double> psi_l;
  std::vector<int> right_set;
  std::vector<int> left_set;
  int t_size = 0;
  bool cutoffs_set = false;
  double cutoff_r = 0.0;
  double cutoff_l = 0.0;

  double psi_r_of(int vertex) const;
  double psi_l_of(int vertex) const;
};

// R = {u : rank(u) >= (1-alpha)|T|}, L = {u : rank(u) <= alpha|T|}.
std::pair<std::vector<int>, std::vector<int>> estimate_extremes(
    const Ordering& order_t, double alpha);

// psi_r(v) = |N(v) cap R| / t_size for v in S; psi_l likewise with L.
// S must be disjoint from R and L. Cutoffs are left unset.
NeighborStats neighbor_stats(const SampledGraph& g,
                             const std::vector<int>& right_set,
                             const std::vector<int>& left_set,
                             const std::vector<int>& s, int t_size);

// Smallest c with |{v : psi(v) <= c}| >= (1-beta)|S|, i.e. the
// ceil((1-beta)|S|)-th smallest psi value. Stores the cutoffs in `stats`.
std::pair<double, double> empirical_cutoffs(NeighborStats& stats, double beta);

// Antisymmetric pairwise comparator; requires cutoffs to be set.
int fhat_compare(const NeighborStats& stats, int u, int v);

// fhat(v) = sum_u fhat_compare(u, v), ranked ascending with ties by id.
Ordering score_and_order(const NeighborStats& stats);

// Split refinement: seriate g|T spectrally, estimate extremes, measure
// neighbourhood fractions on S, order S by the comparator scores.
Ordering split_postprocess(const SampledGraph& g, const std::vector<int>& t,
                           const std::vector<int>& s, const SplitConfig& cfg,
                           double tolerance = 1e-8);

// Uniform partition of {0..n-1} into sizes (|s1|,|s2|,|s3|) with
// floor(n/3) <= |s3| <= |s2| <= |s1| <= floor(n/3)+1.
GoodPartition sample_good_partition(int n, std::uint64_t seed);

struct PostprocessDiagnostics {
  int reference_resamples = 0;   // second partitions discarded for overlap
  int reversed_parts = 0;        // part orders flipped to match the reference
  int ambiguous_alignments = 0;  // neither side of the test was decisive
};

// Partition/refine/align/merge pipeline over two independent good
// partitions. Requires n >= 30. Deterministic in (g, cfg, seed).
Ordering full_postprocess(const SampledGraph& g, const SplitConfig& cfg,
                          std::uint64_t seed, double tolerance = 1e-8,
                          PostprocessDiagnostics* diagnostics = nullptr);

// alpha in {0.02..0.14 step 0.02}, beta in {alpha+0.05..0.45 step 0.05}.
std::vector<std::pair<double, double>> default_learning_grid();

// Tests each grid pair against the strengthened mean-distance criterion with
// margin delta, using neighbourhood fractions from one sampled split and
// positions estimated spectrally; returns the first passing pair.
std::optional<SplitConfig> learn_alpha_beta(
    const SampledGraph& g, const std::vector<std::pair<double, double>>& grid,
    double delta, std::uint64_t seed, double tolerance = 1e-8);

}  // namespace seriation
