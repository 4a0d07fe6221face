#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seriation/graphon.hpp"

namespace seriation {

/// An undirected simple graph on vertices 0..n-1 sampled from a graphon.
/// Vertex i carries latent position (i+1)/n. The adjacency is stored as a
/// bit-packed upper triangle; the graph is immutable after construction.
class SampledGraph {
 public:
  // Edge (i,j), i<j, appears independently with probability
  // rho * w((i+1)/n, (j+1)/n). Coins are drawn in row-major (i<j) order
  // from the counter-based stream of `seed`, so the result is bit-identical
  // across runs and platforms.
  static SampledGraph sample(const Graphon& graphon, int n, double rho,
                             std::uint64_t seed);

  // Deterministic graph from a 0/1 adjacency matrix (tests, file loads).
  static SampledGraph from_adjacency(const Eigen::MatrixXd& adjacency,
                                     double rho = 1.0, std::uint64_t seed = 0);

  static SampledGraph from_edges(int n,
                                 const std::vector<std::pair<int, int>>& edges,
                                 double rho = 1.0, std::uint64_t seed = 0);

  int size() const { return n_; }
  double rho() const { return rho_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t edge_count() const { return edge_count_; }

  bool edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    const std::int64_t k = pair_index(i, j);
    return (bits_[static_cast<std::size_t>(k >> 6)] >> (k & 63)) & 1u;
  }

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;

  // Dense 0/1 adjacency (row expansion for the eigensolver).
  Eigen::MatrixXd dense_adjacency() const;
  // Dense adjacency of the subgraph induced by `vertices` (ascending order
  // assumed; row k corresponds to vertices[k]).
  Eigen::MatrixXd induced_adjacency(const std::vector<int>& vertices) const;

  bool is_connected() const;
  bool is_connected_on(const std::vector<int>& vertices) const;

  // Row-major pair index of (i,j), i<j, within the packed upper triangle.
  std::int64_t pair_index(int i, int j) const {
    return static_cast<std::int64_t>(i) * n_ -
           static_cast<std::int64_t>(i) * (i + 1) / 2 + (j - i - 1);
  }

 private:
  SampledGraph(int n, double rho, std::uint64_t seed,
               std::vector<std::uint64_t> bits);

  int n_;
  double rho_;
  std::uint64_t seed_;
  std::int64_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Plain-text edge list: first line "n m rho seed", then m lines "i j" with
// 1-based endpoints in row-major order. Round-trips bit-exactly.
void write_edge_list(std::ostream& out, const SampledGraph& graph);
SampledGraph read_edge_list(std::istream& in);
void write_edge_list_file(const std::string& path, const SampledGraph& graph);
SampledGraph read_edge_list_file(const std::string& path);

}  // namespace seriation
