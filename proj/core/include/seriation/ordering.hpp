#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace seriation {

/// A bijection from a finite vertex set S onto ranks 1..|S|.
class Ordering {
 public:
  // `support` ascending, `ranks[k]` = rank of support[k]; a permutation of
  // 1..|S|.
  Ordering(std::vector<int> support, std::vector<int> ranks);

  static Ordering identity(int n);  // support {0..n-1}, rank(i) = i+1
  static Ordering identity_on(std::vector<int> support);

  // Rank by value: rank(i) = |{j : f(j) <= f(i)}| with ties broken by
  // ascending vertex id.
  static Ordering from_values(const std::map<int, double>& values);

  int size() const { return static_cast<int>(support_.size()); }
  const std::vector<int>& support() const { return support_; }
  bool contains(int vertex) const;
  int rank_of(int vertex) const;       // 1-based
  int vertex_at_rank(int rank) const;  // inverse bijection

  Ordering reversed() const;  // rank'(i) = |S|+1-rank(i)

  bool operator==(const Ordering& other) const = default;

 private:
  int index_of(int vertex) const;

  std::vector<int> support_;     // ascending vertex ids
  std::vector<int> ranks_;       // parallel to support_
  std::vector<int> by_rank_;     // by_rank_[r-1] = vertex with rank r
};

double l1_distance(const Ordering& a, const Ordering& b, bool symmetrized);
double linf_distance(const Ordering& a, const Ordering& b, bool symmetrized);

// Number of discordant pairs against the latent order. Requires the support
// to be exactly {0..N-1}; runs in O(N log N).
std::int64_t kendall_tau(const Ordering& pi);

// Merged ordering of Algorithm-3 parts: rank 3k+j goes to the vertex of
// rank k+1 under part j. Parts must form a good partition of {0..n_total-1}
// with |parts[0]| >= |parts[1]| >= |parts[2]| within one of n_total/3.
Ordering merge_orderings(const Ordering& part1, const Ordering& part2,
                         const Ordering& part3, int n_total);

struct Alignment {
  bool aligned;          // lhs <= rhs of the normalized-rank comparison
  bool closely_aligned;  // lhs < 0.001 and rhs > 0.999
  double lhs;
  double rhs;
};

// Compares normalized ranks of `a` against `b` on the support intersection;
// disjoint supports count as aligned.
Alignment check_aligned(const Ordering& a, const Ordering& b);

// One line of space-separated ranks in ascending vertex order.
std::string ordering_to_line(const Ordering& ordering);
Ordering ordering_from_line(const std::string& line,
                            const std::vector<int>& support);

}  // namespace seriation
