#pragma once

#include "isingc/graph.hpp"
#include "isingc/pulse.hpp"

#include <span>
#include <vector>

namespace isingc {

/// Complete bipartite coupling `left` x `right` with uniform weight; every
/// other vertex is isolated.
struct Biclique {
  std::vector<int> left;
  std::vector<int> right;
  Rational weight{1};
};

struct Star {
  int center = 0;
  std::vector<int> leaves;
};

/// Four rows with block signs (left, right, rest) = (+,+,-), (+,-,-), (+,+,+), (+,-,+)
/// and strengths (w/4, -w/4, w/4, -w/4). Not canonicalized.
PulseSequence biclique_sequence(const Biclique& b, int n);

/// One biclique per edge, composed and canonicalized. L0 <= 3m + 1.
PulseSequence weighted_edge_by_edge(const Graph& g);

/// Star i is centered at order[i] and holds its edges to vertices later in the
/// order; empty stars are omitted. Requires uniform edge weights.
std::vector<Star> star_decomposition(const Graph& g, std::span<const int> order);

/// Repeatedly takes the vertex of largest residual degree (lowest index on
/// ties) and removes its edges; untouched vertices follow in index order.
std::vector<int> greedy_star_order(const Graph& g);

/// Stars over the greedy order, each realized by a biclique with the common
/// edge weight, composed and canonicalized. L0 <= 3n - 2, L1 <= (n - 1)|w|.
PulseSequence union_of_stars(const Graph& g);
PulseSequence union_of_stars(const Graph& g, std::span<const int> order);

/// ceil(log2(n(n-1)/2 - 1)): Ising operations needed in the worst case over
/// complete graphs with pairwise distinct weights. Requires n >= 3.
int lower_bound(int n);

}  // namespace isingc
