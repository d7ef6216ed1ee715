#include "isingc/graph.hpp"

#include "isingc/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace isingc {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw Error(ErrorKind::invalid_argument, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) {
      throw Error(ErrorKind::invalid_argument, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                                   ") out of range for n = " + std::to_string(n));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v) {
      throw Error(ErrorKind::invalid_argument, "duplicate edge (" + std::to_string(edges[k].u) + ", " +
                                                   std::to_string(edges[k].v) + ")");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0; });
  edges_ = std::move(edges);
}

bool Graph::is_unweighted() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1; });
}

bool Graph::has_uniform_weight() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.weight == edges_.front().weight; });
}

bool Graph::has_edge(int u, int v) const { return weight(u, v) != 0; }

Rational Graph::weight(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v}, [](const Edge& e, const std::pair<int, int>& key) {
    return std::pair{e.u, e.v} < key;
  });
  if (it != edges_.end() && it->u == u && it->v == v) return it->weight;
  return 0;
}

Rational Graph::total_abs_weight() const {
  Rational total = 0;
  for (const auto& e : edges_) total += abs(e.weight);
  return total;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

AdjacencyMatrix::AdjacencyMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}

void AdjacencyMatrix::set(int i, int j, const Rational& value) {
  if (i == j) throw Error(ErrorKind::invalid_argument, "adjacency diagonal is fixed at zero");
  entries_[index(i, j)] = value;
  entries_[index(j, i)] = value;
}

void AdjacencyMatrix::add(int i, int j, const Rational& value) {
  if (i == j) throw Error(ErrorKind::invalid_argument, "adjacency diagonal is fixed at zero");
  entries_[index(i, j)] += value;
  entries_[index(j, i)] += value;
}

bool AdjacencyMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool AdjacencyMatrix::has_zero_diagonal() const {
  for (int i = 0; i < n_; ++i)
    if (at(i, i) != 0) return false;
  return true;
}

AdjacencyMatrix& AdjacencyMatrix::operator+=(const AdjacencyMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::dimension_mismatch, "adjacency dimensions differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

AdjacencyMatrix to_adjacency(const Graph& g) {
  AdjacencyMatrix a(g.num_vertices());
  for (const auto& e : g.edges()) a.set(e.u, e.v, e.weight);
  return a;
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

int parse_index(const std::string& tok, int line) {
  if (tok.empty() || tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    throw ParseError(line, "expected a vertex index, got '" + tok + "'");
  }
  return std::stoi(tok);
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  int n = -1;
  int line_no = 0;
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;

    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n") throw ParseError(line_no, "expected header 'n <count>'");
      n = parse_index(tokens[1], line_no);
      if (n < 1) throw ParseError(line_no, "vertex count must be positive");
      continue;
    }
    if (tokens.size() < 2 || tokens.size() > 3) throw ParseError(line_no, "expected 'u v [weight]'");
    int u = parse_index(tokens[0], line_no);
    int v = parse_index(tokens[1], line_no);
    if (u >= n || v >= n) throw ParseError(line_no, "vertex index >= n = " + std::to_string(n));
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    Rational w = 1;
    if (tokens.size() == 3) {
      try {
        w = parse_rational(tokens[2]);
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw ParseError(line_no, "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    edges.push_back({u, v, w});
  }
  if (n < 0) throw ParseError(line_no, "missing header 'n <count>'");
  return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << to_string(e.weight) << '\n';
  return out.str();
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, to_string(e.weight)});
  return {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& item : j.at("edges")) {
      if (!item.is_array() || item.size() < 2 || item.size() > 3) {
        throw Error(ErrorKind::parse, "graph JSON edge must be [u, v, weight]");
      }
      Rational w = 1;
      if (item.size() == 3) w = item[2].is_string() ? parse_rational(item[2].get<std::string>())
                                                     : parse_rational(item[2].dump());
      edges.push_back({item[0].get<int>(), item[1].get<int>(), w});
    }
    return Graph(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("graph JSON: ") + e.what());
  }
}

Graph random_er_graph(int n, double p, std::span<const Rational> weight_set, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_argument, "edge probability must lie in [0, 1]");
  if (n < 1) throw Error(ErrorKind::invalid_argument, "graph needs at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw >= p) continue;
      Rational w = 1;
      if (!weight_set.empty()) w = weight_set[rng() % weight_set.size()];
      edges.push_back({u, v, w});
    }
  }
  return Graph(n, std::move(edges));
}

Graph graph_from_edge_mask(int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  int k = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++k)
      if (mask >> k & 1U) edges.push_back({u, v, 1});
  return Graph(n, std::move(edges));
}

std::uint64_t edge_mask(const Graph& g) {
  std::uint64_t mask = 0;
  for (const auto& e : g.edges()) mask |= std::uint64_t{1} << pair_index(g.num_vertices(), e.u, e.v);
  return mask;
}

std::uint64_t canonical_edge_mask(int n, std::uint64_t mask) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (mask >> pair_index(n, u, v) & 1U) pairs.emplace_back(u, v);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = mask;
  do {
    std::uint64_t m = 0;
    for (auto [u, v] : pairs) {
      int a = std::min(perm[u], perm[v]);
      int b = std::max(perm[u], perm[v]);
      m |= std::uint64_t{1} << pair_index(n, a, b);
    }
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Graph> enumerate_labeled_graphs(int n, bool dedupe_isomorphic) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "graph needs at least one vertex");
  if (n > kMaxEnumerationVertices) {
    throw Error(ErrorKind::too_large, "labeled graph enumeration is limited to n <= " +
                                          std::to_string(kMaxEnumerationVertices));
  }
  const int pairs = n * (n - 1) / 2;
  const std::uint64_t count = std::uint64_t{1} << pairs;
  std::vector<Graph> graphs;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (dedupe_isomorphic && canonical_edge_mask(n, mask) != mask) continue;
    graphs.push_back(graph_from_edge_mask(n, mask));
  }
  return graphs;
}

Graph complete_graph(int n) { return graph_from_edge_mask(n, (std::uint64_t{1} << (n * (n - 1) / 2)) - 1); }

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1});
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.push_back({0, v, 1});
  return Graph(leaves + 1, std::move(edges));
}

Graph two_star_example_graph() {
  // u0=0, u1=1, u2=2, w0=3, w1=4, w2=5
  return Graph(6, {{2, 0, 1}, {2, 3, 1}, {2, 4, 1}, {2, 5, 1}, {1, 3, 1}, {1, 4, 1}, {1, 5, 1}});
}

}  // namespace isingc
