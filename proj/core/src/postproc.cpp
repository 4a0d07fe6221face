#include "seriation/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "seriation/rng.hpp"
#include "seriation/spectral.hpp"

namespace seriation {

namespace {

constexpr int kMinFullPostprocessSize = 30;
constexpr int kMaxPartitionResamples = 16;

bool sorted_contains(const std::vector<int>& sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

double psi_lookup(const std::vector<int>& vertices,
                  const std::vector<double>& values, int vertex) {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), vertex);
  if (it == vertices.end() || *it != vertex) {
    throw std::invalid_argument("vertex " + std::to_string(vertex) +
                                " not in the statistics' target set");
  }
  return values[static_cast<std::size_t>(it - vertices.begin())];
}

}  // namespace

SplitConfig::SplitConfig(double alpha, double beta)
    : alpha(alpha), beta(beta) {
  if (!(0.0 < alpha && alpha < beta && beta < 0.5)) {
    throw std::invalid_argument("split parameters need 0 < alpha < beta < 0.5");
  }
}

double NeighborStats::psi_r_of(int vertex) const {
  return psi_lookup(s_vertices, psi_r, vertex);
}

double NeighborStats::psi_l_of(int vertex) const {
  return psi_lookup(s_vertices, psi_l, vertex);
}

std::pair<std::vector<int>, std::vector<int>> estimate_extremes(
    const Ordering& order_t, double alpha) {
  if (!(0.0 < alpha && alpha < 0.5)) {
    throw std::invalid_argument("alpha must lie in (0, 0.5)");
  }
  const double t = order_t.size();
  std::vector<int> right;
  std::vector<int> left;
  for (int v : order_t.support()) {
    const int rank = order_t.rank_of(v);
    if (rank >= (1.0 - alpha) * t) right.push_back(v);
    if (rank <= alpha * t) left.push_back(v);
  }
  std::sort(right.begin(), right.end());
  std::sort(left.begin(), left.end());
  return {std::move(right), std::move(left)};
}

NeighborStats neighbor_stats(const SampledGraph& g,
                             const std::vector<int>& right_set,
                             const std::vector<int>& left_set,
                             const std::vector<int>& s, int t_size) {
  if (t_size <= 0) {
    throw std::invalid_argument("t_size must be positive");
  }
  NeighborStats stats;
  stats.right_set = right_set;
  stats.left_set = left_set;
  std::sort(stats.right_set.begin(), stats.right_set.end());
  std::sort(stats.left_set.begin(), stats.left_set.end());
  stats.s_vertices = s;
  std::sort(stats.s_vertices.begin(), stats.s_vertices.end());
  stats.t_size = t_size;

  for (int v : stats.s_vertices) {
    if (sorted_contains(stats.right_set, v) ||
        sorted_contains(stats.left_set, v)) {
      throw std::invalid_argument(
          "target set overlaps the extreme sets at vertex " +
          std::to_string(v));
    }
    int count_r = 0;
    int count_l = 0;
    for (int u : g.neighbors(v)) {
      if (sorted_contains(stats.right_set, u)) ++count_r;
      if (sorted_contains(stats.left_set, u)) ++count_l;
    }
    stats.psi_r.push_back(static_cast<double>(count_r) / t_size);
    stats.psi_l.push_back(static_cast<double>(count_l) / t_size);
  }
  return stats;
}

std::pair<double, double> empirical_cutoffs(NeighborStats& stats,
                                            double beta) {
  if (!(0.0 < beta && beta < 0.5)) {
    throw std::invalid_argument("beta must lie in (0, 0.5)");
  }
  if (stats.s_vertices.empty()) {
    throw std::invalid_argument("cutoffs need a nonempty target set");
  }
  const auto order_statistic = [&](std::vector<double> values) {
    const int k = static_cast<int>(
        std::ceil((1.0 - beta) * static_cast<double>(values.size())));
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
    return values[static_cast<std::size_t>(k - 1)];
  };
  stats.cutoff_r = order_statistic(stats.psi_r);
  stats.cutoff_l = order_statistic(stats.psi_l);
  stats.cutoffs_set = true;
  return {stats.cutoff_r, stats.cutoff_l};
}

int fhat_compare(const NeighborStats& stats, int u, int v) {
  if (u == v) {
    throw std::invalid_argument("comparator requires distinct vertices");
  }
  if (!stats.cutoffs_set) {
    throw std::invalid_argument("cutoffs not set");
  }
  if (u > v) return -fhat_compare(stats, v, u);
  const double ru = stats.psi_r_of(u), rv = stats.psi_r_of(v);
  const double lu = stats.psi_l_of(u), lv = stats.psi_l_of(v);
  if (ru < stats.cutoff_r && rv < stats.cutoff_r) {
    return ru > rv ? -1 : 1;
  }
  if (lu < stats.cutoff_l && lv < stats.cutoff_l) {
    return lu < lv ? -1 : 1;
  }
  return ru < stats.cutoff_r ? 1 : -1;
}

Ordering score_and_order(const NeighborStats& stats) {
  std::map<int, double> scores;
  for (int v : stats.s_vertices) {
    double score = 0.0;
    for (int u : stats.s_vertices) {
      if (u != v) score += fhat_compare(stats, u, v);
    }
    scores[v] = score;
  }
  return Ordering::from_values(scores);
}

Ordering split_postprocess(const SampledGraph& g, const std::vector<int>& t,
                           const std::vector<int>& s, const SplitConfig& cfg,
                           double tolerance) {
  const Ordering order_t = spectral_seriation_subset(g, t, tolerance);
  auto [right, left] = estimate_extremes(order_t, cfg.alpha);
  NeighborStats stats =
      neighbor_stats(g, right, left, s, static_cast<int>(t.size()));
  empirical_cutoffs(stats, cfg.beta);
  return score_and_order(stats);
}

GoodPartition sample_good_partition(int n, std::uint64_t seed) {
  if (n < 3) {
    throw std::invalid_argument("good partitions need n >= 3");
  }
  std::vector<int> vertices(static_cast<std::size_t>(n));
  std::iota(vertices.begin(), vertices.end(), 0);
  rng::shuffle(vertices, seed);

  const int q = n / 3;
  const int r = n % 3;
  const int size1 = q + (r >= 1 ? 1 : 0);
  const int size2 = q + (r >= 2 ? 1 : 0);
  GoodPartition partition;
  partition.s1.assign(vertices.begin(), vertices.begin() + size1);
  partition.s2.assign(vertices.begin() + size1,
                      vertices.begin() + size1 + size2);
  partition.s3.assign(vertices.begin() + size1 + size2, vertices.end());
  std::sort(partition.s1.begin(), partition.s1.end());
  std::sort(partition.s2.begin(), partition.s2.end());
  std::sort(partition.s3.begin(), partition.s3.end());
  return partition;
}

namespace {

int overlap_size(const std::vector<int>& sorted_a,
                 const std::vector<int>& sorted_b) {
  int count = 0;
  for (int v : sorted_a) {
    if (sorted_contains(sorted_b, v)) ++count;
  }
  return count;
}

}  // namespace

Ordering full_postprocess(const SampledGraph& g, const SplitConfig& cfg,
                          std::uint64_t seed, double tolerance,
                          PostprocessDiagnostics* diagnostics) {
  const int n = g.size();
  if (n < kMinFullPostprocessSize) {
    throw std::invalid_argument("full_postprocess needs at least " +
                                std::to_string(kMinFullPostprocessSize) +
                                " vertices");
  }
  PostprocessDiagnostics local;
  PostprocessDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag = PostprocessDiagnostics{};

  const GoodPartition first = sample_good_partition(n, rng::derive(seed, 1));

  GoodPartition second;
  bool found = false;
  for (int attempt = 0; attempt < kMaxPartitionResamples; ++attempt) {
    second = sample_good_partition(
        n, rng::derive(seed, 100 + static_cast<std::uint64_t>(attempt)));
    if (overlap_size(first.s1, second.s2) >= 2 &&
        overlap_size(first.s2, second.s2) >= 2 &&
        overlap_size(first.s3, second.s2) >= 2) {
      found = true;
      break;
    }
    ++diag.reference_resamples;
  }
  if (!found) {
    throw std::runtime_error(
        "reference partition kept missing the parts after " +
        std::to_string(kMaxPartitionResamples) + " resamples");
  }

  Ordering order1 = split_postprocess(g, first.s3, first.s1, cfg, tolerance);
  Ordering order2 = split_postprocess(g, first.s1, first.s2, cfg, tolerance);
  Ordering order3 = split_postprocess(g, first.s2, first.s3, cfg, tolerance);
  const Ordering reference =
      split_postprocess(g, second.s1, second.s2, cfg, tolerance);

  for (Ordering* part : {&order1, &order2, &order3}) {
    const Alignment alignment = check_aligned(*part, reference);
    const Alignment flipped = check_aligned(part->reversed(), reference);
    if (!alignment.closely_aligned && !flipped.closely_aligned) {
      ++diag.ambiguous_alignments;
      std::cerr << "warning: ambiguous part alignment (lhs="
                << alignment.lhs << ", rhs=" << alignment.rhs << ")\n";
    }
    if (!alignment.aligned) {
      *part = part->reversed();
      ++diag.reversed_parts;
    }
  }
  return merge_orderings(order1, order2, order3, n);
}

std::vector<std::pair<double, double>> default_learning_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int a = 1; a <= 7; ++a) {
    const double alpha = 0.02 * a;
    for (double beta = alpha + 0.05; beta < 0.45 + 1e-12; beta += 0.05) {
      grid.emplace_back(alpha, beta);
    }
  }
  return grid;
}

std::optional<SplitConfig> learn_alpha_beta(
    const SampledGraph& g, const std::vector<std::pair<double, double>>& grid,
    double delta, std::uint64_t seed, double tolerance) {
  if (grid.empty()) return std::nullopt;
  if (g.size() < kMinFullPostprocessSize) {
    throw std::invalid_argument("learning needs at least " +
                                std::to_string(kMinFullPostprocessSize) +
                                " vertices");
  }
  const GoodPartition partition =
      sample_good_partition(g.size(), rng::derive(seed, 1));
  const std::vector<int>& t = partition.s1;
  const std::vector<int>& s = partition.s2;
  const Ordering order_t = spectral_seriation_subset(g, t, tolerance);
  const Ordering order_s = spectral_seriation_subset(g, s, tolerance);
  const double s_size = order_s.size();

  for (const auto& [alpha, beta] : grid) {
    if (!(0.0 < alpha && alpha < beta && beta < 0.5)) {
      throw std::invalid_argument("grid pairs need 0 < alpha < beta < 0.5");
    }
    auto [right, left] = estimate_extremes(order_t, alpha);
    const NeighborStats stats =
        neighbor_stats(g, right, left, s, static_cast<int>(t.size()));

    // Estimated latent positions from the spectral order on S, oriented so
    // that psi_r increases with position.
    std::vector<double> position(stats.s_vertices.size());
    double covariance = 0.0;
    const double mean_rank = (s_size + 1.0) / (2.0 * s_size);
    double mean_psi = 0.0;
    for (double p : stats.psi_r) mean_psi += p;
    mean_psi /= static_cast<double>(stats.psi_r.size());
    for (std::size_t k = 0; k < stats.s_vertices.size(); ++k) {
      position[k] = order_s.rank_of(stats.s_vertices[k]) / s_size;
      covariance += (position[k] - mean_rank) * (stats.psi_r[k] - mean_psi);
    }
    if (covariance < 0.0) {
      for (double& p : position) p = (s_size + 1.0) / s_size - p;
    }

    const auto passes = [&](const std::vector<double>& psi, double lo,
                            double probe_at) {
      double extreme_min = std::numeric_limits<double>::infinity();
      double probe = 0.0;
      double probe_gap = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < position.size(); ++k) {
        if (position[k] >= lo) extreme_min = std::min(extreme_min, psi[k]);
        const double gap = std::abs(position[k] - probe_at);
        if (gap < probe_gap) {
          probe_gap = gap;
          probe = psi[k];
        }
      }
      return std::isfinite(extreme_min) && extreme_min > probe + delta;
    };

    // Right test on [1-alpha-delta, 1] against 1-beta; the left test mirrors
    // through x -> 1-x, so it reuses `passes` with flipped positions.
    const bool right_ok = passes(stats.psi_r, 1.0 - alpha - delta, 1.0 - beta);
    std::vector<double> mirrored(position.size());
    for (std::size_t k = 0; k < position.size(); ++k) {
      mirrored[k] = 1.0 + 1.0 / s_size - position[k];
    }
    mirrored.swap(position);
    const bool left_ok = passes(stats.psi_l, 1.0 - alpha - delta, 1.0 - beta);
    mirrored.swap(position);

    if (right_ok && left_ok) return SplitConfig(alpha, beta);
  }
  return std::nullopt;
}

}  // namespace seriation
