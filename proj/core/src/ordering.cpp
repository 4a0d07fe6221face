#include "seriation/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace seriation {

Ordering::Ordering(std::vector<int> support, std::vector<int> ranks)
    : support_(std::move(support)), ranks_(std::move(ranks)) {
  if (support_.empty() || support_.size() != ranks_.size()) {
    throw std::invalid_argument("ordering needs a nonempty support with ranks");
  }
  if (!std::is_sorted(support_.begin(), support_.end()) ||
      std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
    throw std::invalid_argument("ordering support must be strictly ascending");
  }
  by_rank_.assign(support_.size(), -1);
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    const int r = ranks_[k];
    if (r < 1 || r > static_cast<int>(ranks_.size()) ||
        by_rank_[static_cast<std::size_t>(r - 1)] != -1) {
      throw std::invalid_argument("ranks must be a bijection onto 1..|S|");
    }
    by_rank_[static_cast<std::size_t>(r - 1)] = support_[k];
  }
}

Ordering Ordering::identity(int n) {
  std::vector<int> support(static_cast<std::size_t>(n));
  std::iota(support.begin(), support.end(), 0);
  return identity_on(std::move(support));
}

Ordering Ordering::identity_on(std::vector<int> support) {
  std::vector<int> ranks(support.size());
  std::iota(ranks.begin(), ranks.end(), 1);
  return Ordering(std::move(support), std::move(ranks));
}

Ordering Ordering::from_values(const std::map<int, double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("from_values needs a nonempty map");
  }
  std::vector<std::pair<int, double>> items(values.begin(), values.end());
  // Ties break by ascending vertex id; items are already id-ascending, so a
  // stable sort on the value alone realizes that rule.
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) {
                     return a.second < b.second;
                   });
  std::vector<int> support;
  support.reserve(items.size());
  for (const auto& [vertex, value] : values) {
    (void)value;
    support.push_back(vertex);
  }
  std::vector<int> ranks(items.size());
  for (std::size_t r = 0; r < items.size(); ++r) {
    const auto pos = std::lower_bound(support.begin(), support.end(),
                                      items[r].first);
    ranks[static_cast<std::size_t>(pos - support.begin())] =
        static_cast<int>(r + 1);
  }
  return Ordering(std::move(support), std::move(ranks));
}

bool Ordering::contains(int vertex) const { return index_of(vertex) >= 0; }

int Ordering::index_of(int vertex) const {
  const auto it = std::lower_bound(support_.begin(), support_.end(), vertex);
  if (it == support_.end() || *it != vertex) return -1;
  return static_cast<int>(it - support_.begin());
}

int Ordering::rank_of(int vertex) const {
  const int k = index_of(vertex);
  if (k < 0) {
    throw std::invalid_argument("vertex " + std::to_string(vertex) +
                                " not in ordering support");
  }
  return ranks_[static_cast<std::size_t>(k)];
}

int Ordering::vertex_at_rank(int rank) const {
  if (rank < 1 || rank > size()) {
    throw std::invalid_argument("rank out of range");
  }
  return by_rank_[static_cast<std::size_t>(rank - 1)];
}

Ordering Ordering::reversed() const {
  std::vector<int> ranks(ranks_.size());
  const int n = size();
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    ranks[k] = n + 1 - ranks_[k];
  }
  return Ordering(support_, std::move(ranks));
}

namespace {

void require_same_support(const Ordering& a, const Ordering& b) {
  if (a.support() != b.support()) {
    throw std::invalid_argument("orderings must share a support");
  }
}

double raw_l1(const Ordering& a, const Ordering& b) {
  double sum = 0.0;
  for (int v : a.support()) sum += std::abs(a.rank_of(v) - b.rank_of(v));
  return sum;
}

double raw_linf(const Ordering& a, const Ordering& b) {
  double best = 0.0;
  for (int v : a.support()) {
    best = std::max(best,
                    static_cast<double>(std::abs(a.rank_of(v) - b.rank_of(v))));
  }
  return best;
}

}  // namespace

double l1_distance(const Ordering& a, const Ordering& b, bool symmetrized) {
  require_same_support(a, b);
  const double raw = raw_l1(a, b);
  return symmetrized ? std::min(raw, raw_l1(a.reversed(), b)) : raw;
}

double linf_distance(const Ordering& a, const Ordering& b, bool symmetrized) {
  require_same_support(a, b);
  const double raw = raw_linf(a, b);
  return symmetrized ? std::min(raw, raw_linf(a.reversed(), b)) : raw;
}

namespace {

// Inversion count by merge sort.
std::int64_t count_inversions(std::vector<int>& v, std::vector<int>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(v, scratch, lo, mid) +
                       count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) {
      scratch[k++] = v[i++];
    } else {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

std::int64_t kendall_tau(const Ordering& pi) {
  const int n = pi.size();
  for (int k = 0; k < n; ++k) {
    if (pi.support()[static_cast<std::size_t>(k)] != k) {
      throw std::invalid_argument("kendall_tau needs support {0..N-1}");
    }
  }
  std::vector<int> ranks(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ranks[static_cast<std::size_t>(i)] = pi.rank_of(i);
  }
  std::vector<int> scratch(ranks.size());
  return count_inversions(ranks, scratch, 0, ranks.size());
}

Ordering merge_orderings(const Ordering& part1, const Ordering& part2,
                         const Ordering& part3, int n_total) {
  const Ordering* parts[3] = {&part1, &part2, &part3};
  const int n = n_total / 3;
  const int s1 = part1.size(), s2 = part2.size(), s3 = part3.size();
  if (s1 + s2 + s3 != n_total || !(n <= s3 && s3 <= s2 && s2 <= s1 &&
                                   s1 <= n + 1)) {
    throw std::invalid_argument("parts must form a good partition");
  }
  std::vector<int> vertex_of_rank(static_cast<std::size_t>(n_total), -1);
  for (int j = 1; j <= 3; ++j) {
    for (int k = 0; 3 * k + j <= n_total; ++k) {
      if (k + 1 > parts[j - 1]->size()) {
        throw std::invalid_argument("part sizes incompatible with n_total");
      }
      vertex_of_rank[static_cast<std::size_t>(3 * k + j - 1)] =
          parts[j - 1]->vertex_at_rank(k + 1);
    }
  }
  std::vector<int> support(static_cast<std::size_t>(n_total));
  std::iota(support.begin(), support.end(), 0);
  std::vector<int> ranks(static_cast<std::size_t>(n_total), 0);
  for (int r = 1; r <= n_total; ++r) {
    const int v = vertex_of_rank[static_cast<std::size_t>(r - 1)];
    if (v < 0 || v >= n_total || ranks[static_cast<std::size_t>(v)] != 0) {
      throw std::invalid_argument("parts do not partition {0..n_total-1}");
    }
    ranks[static_cast<std::size_t>(v)] = r;
  }
  return Ordering(std::move(support), std::move(ranks));
}

Alignment check_aligned(const Ordering& a, const Ordering& b) {
  double lhs = 0.0;
  double rhs = 0.0;
  bool overlap = false;
  const double na = a.size(), nb = b.size();
  for (int v : a.support()) {
    if (!b.contains(v)) continue;
    overlap = true;
    const double ra = a.rank_of(v) / na;
    const double rb = b.rank_of(v) / nb;
    lhs = std::max(lhs, std::abs(ra - rb));
    rhs = std::max(rhs, std::abs((a.size() + 1 - a.rank_of(v)) / na - rb));
  }
  if (!overlap) return {true, false, 0.0, 0.0};
  return {lhs <= rhs, lhs < 0.001 && rhs > 0.999, lhs, rhs};
}

std::string ordering_to_line(const Ordering& ordering) {
  std::ostringstream out;
  for (std::size_t k = 0; k < ordering.support().size(); ++k) {
    if (k > 0) out << ' ';
    out << ordering.rank_of(ordering.support()[k]);
  }
  return out.str();
}

Ordering ordering_from_line(const std::string& line,
                            const std::vector<int>& support) {
  std::istringstream in(line);
  std::vector<int> ranks;
  ranks.reserve(support.size());
  int r = 0;
  while (in >> r) ranks.push_back(r);
  if (ranks.size() != support.size()) {
    throw std::invalid_argument("ordering line has " +
                                std::to_string(ranks.size()) +
                                " ranks for a support of size " +
                                std::to_string(support.size()));
  }
  return Ordering(support, std::move(ranks));
}

}  // namespace seriation
