#include "isingc/constructions.hpp"

#include "isingc/error.hpp"

#include <algorithm>
#include <numeric>

namespace isingc {
namespace {

void require_uniform(const Graph& g) {
  if (!g.has_uniform_weight()) {
    throw Error(ErrorKind::requires_unweighted, "method requires unweighted (uniform-weight) graph");
  }
}

void check_order(const Graph& g, std::span<const int> order) {
  const int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  if (static_cast<int>(order.size()) != n) throw Error(ErrorKind::invalid_argument, "vertex order must list every vertex once");
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw Error(ErrorKind::invalid_argument, "vertex order must be a permutation");
    seen[v] = 1;
  }
}

}  // namespace

PulseSequence biclique_sequence(const Biclique& b, int n) {
  if (b.left.empty() || b.right.empty()) throw Error(ErrorKind::invalid_argument, "biclique sides must be nonempty");
  // Block of each vertex: 0 = left, 1 = right, 2 = isolated remainder.
  std::vector<int> block(n, 2);
  for (const auto* side : {&b.left, &b.right}) {
    const int tag = side == &b.left ? 0 : 1;
    for (int v : *side) {
      if (v < 0 || v >= n) throw Error(ErrorKind::invalid_argument, "biclique vertex out of range");
      if (block[v] != 2) throw Error(ErrorKind::invalid_argument, "biclique vertex sets overlap");
      block[v] = tag;
    }
  }
  static constexpr int kPattern[4][3] = {{1, 1, -1}, {1, -1, -1}, {1, 1, 1}, {1, -1, 1}};
  static constexpr int kStrengthSign[4] = {1, -1, 1, -1};
  const Rational quarter = b.weight / 4;

  PulseSequence seq(n);
  for (int a = 0; a < 4; ++a) {
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v)
      if (kPattern[a][block[v]] < 0) mask |= std::uint64_t{1} << v;
    seq.append(FlipRow(n, mask), kStrengthSign[a] * quarter);
  }
  return seq;
}

PulseSequence weighted_edge_by_edge(const Graph& g) {
  PulseSequence seq(g.num_vertices());
  for (const auto& e : g.edges()) seq = compose(seq, biclique_sequence({{e.u}, {e.v}, e.weight}, g.num_vertices()));
  return canonicalize(seq);
}

std::vector<Star> star_decomposition(const Graph& g, std::span<const int> order) {
  require_uniform(g);
  check_order(g, order);
  std::vector<int> position(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) position[order[i]] = i;

  std::vector<Star> stars;
  for (int center : order) {
    Star star{center, {}};
    for (const auto& e : g.edges()) {
      int other = e.u == center ? e.v : (e.v == center ? e.u : -1);
      if (other >= 0 && position[other] > position[center]) star.leaves.push_back(other);
    }
    if (!star.leaves.empty()) {
      std::sort(star.leaves.begin(), star.leaves.end());
      stars.push_back(std::move(star));
    }
  }
  return stars;
}

std::vector<int> greedy_star_order(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<int> residual = g.degrees();
  std::vector<char> placed(n, 0);
  std::vector<int> order;

  while (true) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!placed[v] && residual[v] > 0 && (best < 0 || residual[v] > residual[best])) best = v;
    if (best < 0) break;
    order.push_back(best);
    placed[best] = 1;
    for (int u = 0; u < n; ++u) {
      if (adj[best][u]) {
        adj[best][u] = adj[u][best] = 0;
        --residual[u];
      }
    }
    residual[best] = 0;
  }
  for (int v = 0; v < n; ++v)
    if (!placed[v]) order.push_back(v);
  return order;
}

PulseSequence union_of_stars(const Graph& g) { return union_of_stars(g, greedy_star_order(g)); }

PulseSequence union_of_stars(const Graph& g, std::span<const int> order) {
  const int n = g.num_vertices();
  PulseSequence seq(n);
  if (g.num_edges() == 0) return seq;
  const Rational weight = g.edges().front().weight;
  for (const auto& star : star_decomposition(g, order)) {
    seq = compose(seq, biclique_sequence({{star.center}, star.leaves, weight}, n));
  }
  return canonicalize(seq);
}

int lower_bound(int n) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "lower bound needs n >= 3");
  const long long target = static_cast<long long>(n) * (n - 1) / 2 - 1;
  int k = 0;
  while ((1LL << k) < target) ++k;
  return k;
}

}  // namespace isingc
