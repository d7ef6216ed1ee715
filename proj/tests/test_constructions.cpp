#include "isingc/constructions.hpp"
#include "isingc/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <set>

using namespace isingc;

namespace {

// u0 u1 u2 w0 w1 w2
constexpr int u0 = 0, u1 = 1, u2 = 2, w0 = 3, w1 = 4, w2 = 5;

int max_star_degree(const std::vector<Star>& stars) {
  std::size_t d = 0;
  for (const auto& s : stars) d = std::max(d, s.leaves.size());
  return static_cast<int>(d);
}

void check_cover(const Graph& g, const std::vector<Star>& stars) {
  std::multiset<std::pair<int, int>> covered;
  for (const auto& s : stars) {
    CHECK_FALSE(s.leaves.empty());
    for (int leaf : s.leaves) covered.insert({std::min(s.center, leaf), std::max(s.center, leaf)});
  }
  std::multiset<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) edges.insert({e.u, e.v});
  CHECK(covered == edges);
}

}  // namespace

TEST_CASE("biclique_sequence examples") {
  auto edge = biclique_sequence({{0}, {1}, 1}, 3);
  REQUIRE(edge.l0() == 4);
  CHECK(edge.ops()[0].row.to_string() == "++-");
  CHECK(edge.ops()[1].row.to_string() == "+--");
  CHECK(edge.ops()[2].row.to_string() == "+++");
  CHECK(edge.ops()[3].row.to_string() == "+-+");
  CHECK(edge.ops()[0].strength == Rational(1, 4));
  CHECK(edge.ops()[1].strength == Rational(-1, 4));
  CHECK(edge.ops()[2].strength == Rational(1, 4));
  CHECK(edge.ops()[3].strength == Rational(-1, 4));
  CHECK(verify(edge, Graph(3, {{0, 1, 1}})));

  auto star = biclique_sequence({{0}, {1, 2}, 1}, 3);
  CHECK(oracle::equals(oracle::product(star), to_adjacency(Graph(3, {{0, 1, 1}, {0, 2, 1}}))));

  CHECK(canonicalize(biclique_sequence({{0}, {1}, 0}, 3)).empty());
}

TEST_CASE("biclique_sequence realizes every bipartition") {
  // All ways to split 5 vertices into (left, right, rest) with nonempty sides.
  const int n = 5;
  for (int code = 0; code < 243; ++code) {
    Biclique b;
    b.weight = make_rational(code % 7 - 3, 2);
    int c = code;
    for (int v = 0; v < n; ++v, c /= 3) {
      if (c % 3 == 0) b.left.push_back(v);
      if (c % 3 == 1) b.right.push_back(v);
    }
    if (b.left.empty() || b.right.empty()) continue;
    std::vector<Edge> edges;
    for (int l : b.left)
      for (int r : b.right) edges.push_back({l, r, b.weight});
    CHECK(verify(biclique_sequence(b, n), Graph(n, edges)));
  }
}

TEST_CASE("biclique_sequence errors") {
  CHECK_THROWS_AS(biclique_sequence({{0, 1}, {1}, 1}, 3), Error);
  CHECK_THROWS_AS(biclique_sequence({{}, {1}, 1}, 3), Error);
  CHECK_THROWS_AS(biclique_sequence({{0}, {3}, 1}, 3), Error);
}

TEST_CASE("weighted_edge_by_edge") {
  auto single = weighted_edge_by_edge(Graph(4, {{1, 3, 5}}));
  CHECK(single.l0() <= 4);
  CHECK(verify(single, Graph(4, {{1, 3, 5}})));
  CHECK(weighted_edge_by_edge(Graph(4, {})).empty());

  const std::vector<Rational> weights{1, 2, 3};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_er_graph(7, 0.5, weights, seed);
    auto seq = weighted_edge_by_edge(g);
    CHECK(verify(seq, g));
    CHECK(seq.l0() <= 3 * g.num_edges() + 1);
    CHECK(seq.is_canonical());
  }
  auto mixed = Graph(4, {{0, 1, Rational(-1, 3)}, {2, 3, Rational(7, 2)}, {0, 3, 1}});
  CHECK(verify(weighted_edge_by_edge(mixed), mixed));
}

TEST_CASE("star_decomposition on the two-star example") {
  auto g = two_star_example_graph();
  auto two = star_decomposition(g, std::vector<int>{u1, u2, u0, w0, w1, w2});
  REQUIRE(two.size() == 2);
  CHECK(two[0].center == u1);
  CHECK(two[0].leaves == std::vector<int>{w0, w1, w2});
  CHECK(two[1].center == u2);
  CHECK(two[1].leaves == std::vector<int>{u0, w0, w1, w2});
  check_cover(g, two);

  auto small = star_decomposition(g, std::vector<int>{u0, w0, w1, w2, u2, u1});
  CHECK(small.size() == 4);
  CHECK(max_star_degree(small) == 2);
  check_cover(g, small);

  auto path = star_decomposition(path_graph(3), std::vector<int>{1, 0, 2});
  REQUIRE(path.size() == 1);
  CHECK(path[0].center == 1);
  CHECK(path[0].leaves == std::vector<int>{0, 2});
}

TEST_CASE("star_decomposition errors") {
  auto weighted = Graph(3, {{0, 1, 1}, {1, 2, 2}});
  CHECK_THROWS_AS(star_decomposition(weighted, std::vector<int>{0, 1, 2}), Error);
  try {
    union_of_stars(weighted);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::requires_unweighted);
    CHECK(std::string(e.what()).find("method requires unweighted") != std::string::npos);
  }
  CHECK_THROWS_AS(star_decomposition(path_graph(3), std::vector<int>{0, 1}), Error);
  CHECK_THROWS_AS(star_decomposition(path_graph(3), std::vector<int>{0, 1, 1}), Error);
}

TEST_CASE("greedy_star_order") {
  auto order = greedy_star_order(two_star_example_graph());
  REQUIRE(order.size() == 6);
  CHECK(order[0] == u2);
  CHECK(order[1] == u1);
  CHECK(star_decomposition(two_star_example_graph(), order).size() == 2);

  auto k3 = greedy_star_order(complete_graph(3));
  CHECK(k3 == std::vector<int>{0, 1, 2});
  CHECK(star_decomposition(complete_graph(3), k3).size() == 2);

  CHECK(greedy_star_order(cycle_graph(5))[0] == 0);
  CHECK(greedy_star_order(Graph(4, {})) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("union_of_stars examples") {
  auto fig1 = union_of_stars(two_star_example_graph());
  // Two stars give 8 rows; the flip of u1 cancels and the all-plus rows merge.
  CHECK(fig1.l0() == 5);
  CHECK(verify(fig1, two_star_example_graph()));

  auto path = union_of_stars(path_graph(3));
  CHECK(verify(path, path_graph(3)));
  CHECK(path.l0() <= 7);
  // The construction reproduces the worked example exactly.
  REQUIRE(path.l0() == 2);
  CHECK(path.ops()[0] == PulseOp{FlipRow::parse("+++"), Rational(1, 2)});
  CHECK(path.ops()[1] == PulseOp{FlipRow::parse("+-+"), Rational(-1, 2)});

  CHECK(union_of_stars(Graph(5, {})).empty());

  // Uniform non-unit weight scales the strengths.
  auto doubled = Graph(3, {{0, 1, 2}, {1, 2, 2}});
  CHECK(verify(union_of_stars(doubled), doubled));
  CHECK(union_of_stars(doubled).l1() == 2);
}

TEST_CASE("union_of_stars is exhaustively within bounds for n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& g : enumerate_labeled_graphs(n)) {
      auto seq = union_of_stars(g);
      CHECK(verify(seq, g));
      CHECK(seq.l0() <= static_cast<std::size_t>(3 * n - 2));
      CHECK(seq.l1() <= n - 1);
      auto edges = weighted_edge_by_edge(g);
      CHECK(verify(edges, g));
      CHECK(edges.l0() <= 3 * g.num_edges() + 1);
    }
  }
}

TEST_CASE("union_of_stars with arbitrary orders") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    auto g = random_er_graph(n, 0.5, {}, rng());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto stars = star_decomposition(g, order);
    CHECK(static_cast<int>(stars.size()) <= n - 1);
    check_cover(g, stars);
    auto seq = union_of_stars(g, order);
    CHECK(verify(seq, g));
    CHECK(seq.l0() <= static_cast<std::size_t>(3 * n - 2));
  }
}

TEST_CASE("complete graph needs one all-ones row") {
  for (int n = 2; n <= 9; ++n) {
    PulseSequence seq(n);
    seq.append(FlipRow::all_plus(n), 1);
    CHECK(verify(seq, complete_graph(n)));
  }
}

TEST_CASE("lower_bound") {
  CHECK(lower_bound(3) == 1);
  CHECK(lower_bound(4) == 3);
  CHECK(lower_bound(100) == 13);
  for (int n = 3; n <= 200; ++n) CHECK(lower_bound(n) == static_cast<int>(std::ceil(std::log2(n * (n - 1) / 2.0 - 1))));
  CHECK_THROWS_AS(lower_bound(2), Error);
}
