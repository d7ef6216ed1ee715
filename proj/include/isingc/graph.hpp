#pragma once

#include "isingc/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isingc {

struct Edge {
  int u = 0;
  int v = 0;
  Rational weight{1};

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected simple graph on vertices 0..n-1, the compilation target.
///
/// Edges are stored with u < v, sorted lexicographically, without duplicates.
/// Zero-weight edges are dropped at construction, so num_edges() counts only
/// nonzero couplings.
class Graph {
 public:
  Graph() = default;
  /// Throws Error(invalid_argument) on self-loops, out-of-range indices or duplicate pairs.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// True when every edge weight is exactly one.
  bool is_unweighted() const;
  /// True when all edges share one weight (vacuously true for the empty graph).
  bool has_uniform_weight() const;
  bool has_edge(int u, int v) const;
  Rational weight(int u, int v) const;
  /// Z = sum of |z_e|.
  Rational total_abs_weight() const;
  std::vector<int> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Symmetric n x n matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int n);

  int size() const noexcept { return n_; }
  const Rational& at(int i, int j) const { return entries_[index(i, j)]; }
  /// Sets both (i, j) and (j, i); i must differ from j.
  void set(int i, int j, const Rational& value);
  void add(int i, int j, const Rational& value);
  bool is_symmetric() const;
  bool has_zero_diagonal() const;

  AdjacencyMatrix& operator+=(const AdjacencyMatrix& other);
  friend AdjacencyMatrix operator+(AdjacencyMatrix a, const AdjacencyMatrix& b) { return a += b; }
  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<Rational> entries_;
};

AdjacencyMatrix to_adjacency(const Graph& g);

/// Edge-list text: a header "n <count>" then lines "u v [z]"; '#' starts a comment.
/// Weights accept integers, decimals and "p/q". Errors carry the 1-based line number.
Graph parse_edge_list(std::string_view text);
std::string to_edge_list(const Graph& g);

/// {"n": int, "edges": [[u, v, "p/q"], ...]}
nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

/// Erdos-Renyi G(n, p). Pairs (u, v), u < v, are visited in lexicographic
/// order; each draws one 64-bit word from std::mt19937_64(seed) and is kept
/// when (word >> 11) * 2^-53 < p. Kept edges draw a second word and take
/// weight_set[word % size], or weight 1 when weight_set is empty.
Graph random_er_graph(int n, double p, std::span<const Rational> weight_set, std::uint64_t seed);

/// Largest n accepted by enumerate_labeled_graphs.
inline constexpr int kMaxEnumerationVertices = 5;

/// Unweighted graph whose edges are the set bits of `mask`, bit k standing for
/// the k-th pair (u, v), u < v, in lexicographic order.
Graph graph_from_edge_mask(int n, std::uint64_t mask);
std::uint64_t edge_mask(const Graph& g);
/// Smallest edge mask over all n! relabelings.
std::uint64_t canonical_edge_mask(int n, std::uint64_t mask);

/// Every labeled unweighted graph on n vertices in edge-mask order, or one
/// representative (the canonical mask) per isomorphism class when dedupe is set.
std::vector<Graph> enumerate_labeled_graphs(int n, bool dedupe_isomorphic = false);

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
/// K_{1,leaves} centered at vertex 0.
Graph star_graph(int leaves);
/// The six-vertex example decomposed into two stars: vertices u0,u1,u2,w0,w1,w2
/// map to 0..5; u2 is adjacent to u0,w0,w1,w2 and u1 to w0,w1,w2.
Graph two_star_example_graph();

/// Index of pair (i, j), i < j, in lexicographic pair order.
inline int pair_index(int n, int i, int j) { return i * (2 * n - i - 1) / 2 + (j - i - 1); }

}  // namespace isingc
