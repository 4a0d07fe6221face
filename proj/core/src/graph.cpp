#include "seriation/graph.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "seriation/rng.hpp"

namespace seriation {

SampledGraph::SampledGraph(int n, double rho, std::uint64_t seed,
                           std::vector<std::uint64_t> bits)
    : n_(n), rho_(rho), seed_(seed), bits_(std::move(bits)) {
  for (std::uint64_t word : bits_) edge_count_ += __builtin_popcountll(word);
}

SampledGraph SampledGraph::sample(const Graphon& graphon, int n, double rho,
                                  std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_graph needs n >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("sample_graph needs rho in (0, 1]");
  }
  const std::int64_t pairs =
      static_cast<std::int64_t>(n) * (n - 1) / 2;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((pairs + 63) / 64),
                                  0);
  std::int64_t k = 0;  // row-major pair counter doubles as the rng counter
  for (int i = 0; i < n; ++i) {
    const double xi = latent_position(i, n);
    for (int j = i + 1; j < n; ++j, ++k) {
      const double p = rho * graphon(xi, latent_position(j, n));
      if (rng::uniform01(seed, static_cast<std::uint64_t>(k)) < p) {
        bits[static_cast<std::size_t>(k >> 6)] |= 1ull << (k & 63);
      }
    }
  }
  return SampledGraph(n, rho, seed, std::move(bits));
}

SampledGraph SampledGraph::from_adjacency(const Eigen::MatrixXd& adjacency,
                                          double rho, std::uint64_t seed) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n || n < 1) {
    throw std::invalid_argument("adjacency must be square and nonempty");
  }
  if (!adjacency.isApprox(adjacency.transpose())) {
    throw std::invalid_argument("adjacency must be symmetric");
  }
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((pairs + 63) / 64),
                                  0);
  std::int64_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      if (adjacency(i, j) != 0.0) {
        bits[static_cast<std::size_t>(k >> 6)] |= 1ull << (k & 63);
      }
    }
  }
  return SampledGraph(n, rho, seed, std::move(bits));
}

SampledGraph SampledGraph::from_edges(
    int n, const std::vector<std::pair<int, int>>& edges, double rho,
    std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph needs n >= 1");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((pairs + 63) / 64),
                                  0);
  SampledGraph g(n, rho, seed, std::move(bits));
  for (auto [i, j] : edges) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("edge endpoints out of range or self-loop");
    }
    if (i > j) std::swap(i, j);
    const std::int64_t k = g.pair_index(i, j);
    g.bits_[static_cast<std::size_t>(k >> 6)] |= 1ull << (k & 63);
  }
  g.edge_count_ = 0;
  for (std::uint64_t word : g.bits_) {
    g.edge_count_ += __builtin_popcountll(word);
  }
  return g;
}

int SampledGraph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d += edge(v, u);
  return d;
}

std::vector<int> SampledGraph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u) {
    if (edge(v, u)) out.push_back(u);
  }
  return out;
}

Eigen::MatrixXd SampledGraph::dense_adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (edge(i, j)) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return a;
}

Eigen::MatrixXd SampledGraph::induced_adjacency(
    const std::vector<int>& vertices) const {
  const int m = static_cast<int>(vertices.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (edge(vertices[i], vertices[j])) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return a;
}

bool SampledGraph::is_connected() const {
  std::vector<int> all(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) all[static_cast<std::size_t>(i)] = i;
  return is_connected_on(all);
}

bool SampledGraph::is_connected_on(const std::vector<int>& vertices) const {
  if (vertices.empty()) return false;
  if (vertices.size() == 1) return true;
  // BFS over the induced subgraph.
  std::vector<int> index(static_cast<std::size_t>(n_), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    index[static_cast<std::size_t>(vertices[k])] = static_cast<int>(k);
  }
  std::vector<char> seen(vertices.size(), 0);
  std::deque<int> queue{vertices[0]};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : vertices) {
      const int ku = index[static_cast<std::size_t>(u)];
      if (!seen[static_cast<std::size_t>(ku)] && edge(v, u)) {
        seen[static_cast<std::size_t>(ku)] = 1;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  return reached == vertices.size();
}

void write_edge_list(std::ostream& out, const SampledGraph& graph) {
  out << graph.size() << ' ' << graph.edge_count() << ' ' << graph.rho() << ' '
      << graph.seed() << '\n';
  for (int i = 0; i < graph.size(); ++i) {
    for (int j = i + 1; j < graph.size(); ++j) {
      if (graph.edge(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
    }
  }
}

SampledGraph read_edge_list(std::istream& in) {
  int n = 0;
  std::int64_t m = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("edge list parse error at line 1: empty input");
  }
  {
    std::istringstream hs(header);
    if (!(hs >> n >> m >> rho >> seed) || n < 1) {
      throw std::invalid_argument(
          "edge list parse error at line 1: expected 'n m rho seed'");
    }
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::string line;
  for (std::int64_t k = 0; k < m; ++k) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(k + 2) + ": missing edge");
    }
    std::istringstream ls(line);
    int i = 0, j = 0;
    if (!(ls >> i >> j) || i < 1 || j < 1 || i > n || j > n || i == j) {
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(k + 2) + ": bad edge '" +
                                  line + "'");
    }
    edges.emplace_back(i - 1, j - 1);
  }
  return SampledGraph::from_edges(n, edges, rho, seed);
}

void write_edge_list_file(const std::string& path, const SampledGraph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_edge_list(out, graph);
}

SampledGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_edge_list(in);
}

}  // namespace seriation
