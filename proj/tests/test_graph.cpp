#include "isingc/error.hpp"
#include "isingc/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace isingc;

namespace {

// Isomorphism classes by brute force: a graph joins the first class it maps onto.
int count_classes(int n) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::set<std::pair<int, int>>> reps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::set<std::pair<int, int>> edges;
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k)
        if (mask >> k & 1) edges.insert({i, j});
    bool found = false;
    for (const auto& rep : reps) {
      if (rep.size() != edges.size()) continue;
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::set<std::pair<int, int>> mapped;
        for (auto [a, b] : edges) mapped.insert({std::min(perm[a], perm[b]), std::max(perm[a], perm[b])});
        if (mapped == rep) found = true;
      } while (!found && std::next_permutation(perm.begin(), perm.end()));
      if (found) break;
    }
    if (!found) reps.push_back(edges);
  }
  return static_cast<int>(reps.size());
}

}  // namespace

TEST_CASE("parse_edge_list examples") {
  auto g = parse_edge_list("n 3\n0 1\n1 2");
  CHECK(g.num_vertices() == 3);
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0] == Edge{0, 1, 1});
  CHECK(g.edges()[1] == Edge{1, 2, 1});

  auto empty = parse_edge_list("n 2");
  CHECK(empty.num_vertices() == 2);
  CHECK(empty.num_edges() == 0);

  auto half = parse_edge_list("n 3\n0 1 1/2");
  CHECK(half.weight(0, 1) == Rational(1, 2));
  CHECK(half.weight(1, 0) == Rational(1, 2));
}

TEST_CASE("parse_edge_list comments, decimals and zero weights") {
  auto g = parse_edge_list("# header comment\nn 4  # four qubits\n\n2 0 0.5\n1 3 0\n3 2 -2\n");
  CHECK(g.num_edges() == 2);
  CHECK(g.weight(0, 2) == Rational(1, 2));
  CHECK(g.weight(2, 3) == -2);
  CHECK_FALSE(g.has_edge(1, 3));
}

TEST_CASE("parse_edge_list errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_edge_list(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("n 3\n0 1\n0 x") == 3);
  CHECK(line_of("n 3\n0 1\n1 0") == 3);
  CHECK(line_of("n 3\n1 1") == 2);
  CHECK(line_of("n 3\n0 3") == 2);
  CHECK(line_of("0 1") == 1);
  CHECK(line_of("n 3\n0 1 2 3") == 2);
  CHECK(line_of("n 3\n0 1 1/0") == 2);
  CHECK(line_of("n 0") == 1);
  CHECK(line_of("# nothing\n") == 2);
  CHECK_THROWS_WITH(parse_edge_list("n 3\n0 1\n1 0"), doctest::Contains("line 3"));
}

TEST_CASE("Graph constructor validates and normalizes") {
  Graph g(4, {{3, 1, 2}, {0, 2, 1}, {1, 2, 0}});
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0] == Edge{0, 2, 1});
  CHECK(g.edges()[1] == Edge{1, 3, 2});
  CHECK_THROWS_AS(Graph(3, {{1, 1, 1}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 3, 1}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1}, {1, 0, 2}}), Error);
  CHECK_THROWS_AS(Graph(0, {}), Error);
  CHECK(g.total_abs_weight() == 3);
  CHECK(Graph(3, {{0, 1, -2}, {1, 2, 3}}).total_abs_weight() == 5);
  CHECK(g.degrees() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("weight predicates") {
  CHECK(path_graph(3).is_unweighted());
  CHECK(Graph(3, {{0, 1, 2}, {1, 2, 2}}).has_uniform_weight());
  CHECK_FALSE(Graph(3, {{0, 1, 2}, {1, 2, 2}}).is_unweighted());
  CHECK_FALSE(Graph(3, {{0, 1, 2}, {1, 2, 1}}).has_uniform_weight());
  CHECK(Graph(3, {}).has_uniform_weight());
}

TEST_CASE("to_adjacency examples") {
  auto a = to_adjacency(path_graph(3));
  const int expected[3][3] = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.at(i, j) == expected[i][j]);

  auto z = to_adjacency(Graph(2, {}));
  CHECK(z == AdjacencyMatrix(2));

  auto k3 = to_adjacency(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k3.at(i, j) == (i == j ? 0 : 1));
}

TEST_CASE("to_adjacency invariants hold on random graphs") {
  const std::vector<Rational> weights{1, Rational(-1, 2), 3};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_er_graph(1 + static_cast<int>(seed % 9), 0.5, weights, seed);
    auto a = to_adjacency(g);
    CHECK(a.is_symmetric());
    CHECK(a.has_zero_diagonal());
    for (const auto& e : g.edges()) CHECK(a.at(e.v, e.u) == e.weight);
  }
}

TEST_CASE("edge list and JSON round trips") {
  const std::vector<Rational> weights{1, Rational(2, 3), -5};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_er_graph(2 + static_cast<int>(seed % 7), 0.4, weights, seed);
    CHECK(parse_edge_list(to_edge_list(g)) == g);
    CHECK(graph_from_json(to_json(g)) == g);
    CHECK(graph_from_json(nlohmann::json::parse(to_json(g).dump())) == g);
  }
  auto j = nlohmann::json::parse(R"({"n": 3, "edges": [[0, 1, "1/2"], [1, 2, 2], [0, 2]]})");
  auto g = graph_from_json(j);
  CHECK(g.weight(0, 1) == Rational(1, 2));
  CHECK(g.weight(1, 2) == 2);
  CHECK(g.weight(0, 2) == 1);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"edges": []})")), Error);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[0]]})")), Error);
}

TEST_CASE("random_er_graph examples") {
  const std::vector<Rational> weights{1, 2, 3};
  CHECK(random_er_graph(7, 0.0, weights, 5).num_edges() == 0);
  CHECK(random_er_graph(7, 1.0, {}, 5) == complete_graph(7));
  CHECK(random_er_graph(9, 1.0, weights, 5).num_edges() == 36);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto g = random_er_graph(7, 0.5, weights, seed);
    for (const auto& e : g.edges()) CHECK((e.weight == 1 || e.weight == 2 || e.weight == 3));
  }
  CHECK(random_er_graph(7, 0.5, weights, 42) == random_er_graph(7, 0.5, weights, 42));
  CHECK_THROWS_AS(random_er_graph(7, 1.5, weights, 1), Error);
  CHECK_THROWS_AS(random_er_graph(7, -0.1, weights, 1), Error);
}

TEST_CASE("random_er_graph edge frequency tracks p") {
  int kept = 0;
  const int trials = 400;
  for (int s = 0; s < trials; ++s) kept += static_cast<int>(random_er_graph(8, 0.3, {}, s).num_edges());
  const double freq = static_cast<double>(kept) / (trials * 28);
  CHECK(freq == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("random_er_graph follows the documented mt19937_64 draw order") {
  std::mt19937_64 rng(99);
  std::vector<Edge> expected;
  const std::vector<Rational> weights{1, 2, 3};
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      const double draw = static_cast<double>(rng() >> 11) / 9007199254740992.0;
      if (draw < 0.6) expected.push_back({u, v, weights[rng() % 3]});
    }
  CHECK(random_er_graph(5, 0.6, weights, 99) == Graph(5, expected));
}

TEST_CASE("enumerate_labeled_graphs counts") {
  CHECK(enumerate_labeled_graphs(1).size() == 1);
  CHECK(enumerate_labeled_graphs(2).size() == 2);
  CHECK(enumerate_labeled_graphs(3).size() == 8);
  CHECK(enumerate_labeled_graphs(3, true).size() == 4);
  CHECK(enumerate_labeled_graphs(4).size() == 64);
  CHECK(enumerate_labeled_graphs(4, true).size() == 11);
  CHECK(enumerate_labeled_graphs(5).size() == 1024);
  CHECK(enumerate_labeled_graphs(5, true).size() == 34);
  CHECK_THROWS_AS(enumerate_labeled_graphs(6), Error);
}

TEST_CASE("isomorphism class counts match a brute-force oracle") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(static_cast<int>(enumerate_labeled_graphs(n, true).size()) == count_classes(n));
  }
}

TEST_CASE("edge masks") {
  for (const auto& g : enumerate_labeled_graphs(4)) CHECK(graph_from_edge_mask(4, edge_mask(g)) == g);
  // Pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3): edge (1,2) is bit 3.
  CHECK(edge_mask(Graph(4, {{1, 2, 1}})) == 8);
  CHECK(pair_index(4, 1, 2) == 3);
  CHECK(pair_index(4, 2, 3) == 5);
  // A single edge anywhere canonicalizes to the lowest pair.
  CHECK(canonical_edge_mask(4, 32) == 1);
}

TEST_CASE("named graphs") {
  CHECK(complete_graph(5).num_edges() == 10);
  CHECK(path_graph(4).num_edges() == 3);
  CHECK(cycle_graph(6).num_edges() == 6);
  CHECK_THROWS_AS(cycle_graph(2), Error);
  auto s = star_graph(5);
  CHECK(s.num_vertices() == 6);
  CHECK(s.degrees()[0] == 5);
  auto t = two_star_example_graph();
  CHECK(t.num_vertices() == 6);
  CHECK(t.num_edges() == 7);
  CHECK(t.degrees() == std::vector<int>{1, 3, 4, 2, 2, 2});
}
