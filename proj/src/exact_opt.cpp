#include "isingc/exact_opt.hpp"

#include "isingc/constructions.hpp"
#include "isingc/error.hpp"
#include "isingc/lp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace isingc {

CompleteFlipMatrix::CompleteFlipMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxExactQubits) {
    throw Error(ErrorKind::too_large, "complete flip matrix supports 1 <= n <= " + std::to_string(kMaxExactQubits));
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Arithmetic modulo the Mersenne prime 2^31 - 1.

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 31) - 1;

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t x = static_cast<std::uint64_t>(a) * b;
  x = (x & kPrime) + (x >> 31);
  x = (x & kPrime) + (x >> 31);
  return static_cast<std::uint32_t>(x >= kPrime ? x - kPrime : x);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b) {
  return a >= b ? a - b : static_cast<std::uint32_t>(a + kPrime - b);
}

std::uint32_t mod_inv(std::uint32_t a) {
  std::uint32_t result = 1;
  std::uint32_t base = a;
  for (std::uint64_t e = kPrime - 2; e > 0; e >>= 1) {
    if (e & 1U) result = mod_mul(result, base);
    base = mod_mul(base, base);
  }
  return result;
}

std::uint32_t mod_from(const mpz_class& z) {
  mpz_class r = z % static_cast<unsigned long>(kPrime);
  if (r < 0) r += static_cast<unsigned long>(kPrime);
  return static_cast<std::uint32_t>(r.get_ui());
}

// ---------------------------------------------------------------------------

struct Timeout {};

class Deadline {
 public:
  Deadline(Clock::time_point start, std::chrono::milliseconds limit) : end_(start + limit) {}
  void check() const {
    if (Clock::now() >= end_) throw Timeout{};
  }

 private:
  Clock::time_point end_;
};

// Coupling column of a flip row: entry per pair (i < j) is s_i s_j.
std::vector<int> coupling_column(const FlipRow& row) {
  const int n = row.size();
  std::vector<int> col;
  col.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) col.push_back(row.sign(i) * row.sign(j));
  return col;
}

std::vector<Rational> target_vector(const Graph& g) {
  const auto a = to_adjacency(g);
  std::vector<Rational> t;
  for (int i = 0; i < g.num_vertices(); ++i)
    for (int j = i + 1; j < g.num_vertices(); ++j) t.push_back(a.at(i, j));
  return t;
}

// Exact strengths for a support whose columns are independent; nullopt when
// the target is outside their span.
std::optional<std::vector<Rational>> solve_support(const std::vector<std::vector<int>>& columns,
                                                   const std::vector<Rational>& target) {
  const int rows = static_cast<int>(target.size());
  const int cols = static_cast<int>(columns.size());
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m[r][c] = columns[c][r];
    m[r][cols] = target[r];
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int sel = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) return std::nullopt;  // dependent columns
    std::swap(m[sel], m[rank]);
    const Rational inv = 1 / m[rank][c];
    for (int k = c; k <= cols; ++k) m[rank][k] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (int k = c; k <= cols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank < cols) return std::nullopt;
  for (int r = rank; r < rows; ++r)
    if (m[r][cols] != 0) return std::nullopt;
  std::vector<Rational> w(cols);
  for (int r = 0; r < rank; ++r) w[pivot_col[r]] = m[r][cols];
  return w;
}

// Enumerates supports of a fixed size over a list of candidate rows, in
// lexicographic order of row positions.
class SupportSearch {
 public:
  SupportSearch(int n, std::vector<FlipRow> rows, std::vector<Rational> target, Rational m_bound,
                const Deadline& deadline)
      : n_(n),
        dim_(n * (n - 1) / 2),
        rows_(std::move(rows)),
        target_(std::move(target)),
        m_bound_(std::move(m_bound)),
        deadline_(deadline) {
    const int k = static_cast<int>(rows_.size());
    for (const auto& r : rows_) columns_.push_back(coupling_column(r));

    mpz_class scale = 1;
    for (const auto& t : target_) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.get_den_mpz_t());
    base_target_.resize(dim_);
    for (int e = 0; e < dim_; ++e) {
      mpz_class scaled = target_[e].get_num() * (scale / target_[e].get_den());
      base_target_[e] = mod_from(scaled);
    }
    base_columns_.resize(static_cast<std::size_t>(k) * dim_);
    for (int c = 0; c < k; ++c)
      for (int e = 0; e < dim_; ++e)
        base_columns_[static_cast<std::size_t>(c) * dim_ + e] =
            columns_[c][e] > 0 ? 1U : static_cast<std::uint32_t>(kPrime - 1);
    std::mt19937_64 rng(0x9E3779B97F4A7C15ULL);
    hash_coeff_.resize(dim_);
    for (auto& h : hash_coeff_) h = rng() | 1U;
  }

  int num_candidates() const { return static_cast<int>(rows_.size()); }
  std::int64_t nodes() const { return nodes_; }
  /// Smallest support size whose exact strengths exceeded M.
  std::optional<int> first_m_rejection() const { return m_rejection_; }

  /// First accepted support of exactly `size` rows, or nullopt when none exists.
  std::optional<PulseSequence> search(int size) {
    const int k = num_candidates();
    if (size < 1 || size > k) return std::nullopt;
    size_ = size;
    reduced_.assign(size + 1, std::vector<std::uint32_t>(static_cast<std::size_t>(k) * dim_));
    residual_.assign(size + 1, std::vector<std::uint32_t>(dim_));
    reduced_[0] = base_columns_;
    residual_[0] = base_target_;
    chosen_.assign(size, -1);
    found_.reset();
    descend(0, 0);
    return found_;
  }

 private:
  const std::uint32_t* reduced(int depth, int c) const {
    return reduced_[depth].data() + static_cast<std::size_t>(c) * dim_;
  }
  std::uint32_t* reduced(int depth, int c) { return reduced_[depth].data() + static_cast<std::size_t>(c) * dim_; }

  int first_nonzero(const std::uint32_t* v) const {
    for (int e = 0; e < dim_; ++e)
      if (v[e] != 0) return e;
    return -1;
  }

  // Scales v so its first nonzero entry is 1; returns a hash of the result.
  std::uint64_t normalize(std::uint32_t* v) const {
    int p = first_nonzero(v);
    if (p < 0) return 0;
    const std::uint32_t inv = mod_inv(v[p]);
    std::uint64_t h = 0;
    for (int e = p; e < dim_; ++e) {
      v[e] = mod_mul(v[e], inv);
      h += hash_coeff_[e] * v[e];
    }
    return h;
  }

  void tick() {
    if ((++nodes_ & 0x3FF) == 0) deadline_.check();
  }

  void descend(int depth, int start) {
    if (found_) return;
    tick();
    const int remaining = size_ - depth;
    if (remaining == 1) {
      last_column(depth, start);
      return;
    }
    if (remaining == 2) {
      pair_test(depth, start);
      return;
    }
    const int k = num_candidates();
    std::vector<std::uint32_t> pivot_vec(dim_);
    for (int c = start; c <= k - remaining && !found_; ++c) {
      const std::uint32_t* v = reduced(depth, c);
      int p = first_nonzero(v);
      if (p < 0) continue;  // dependent on the chosen rows
      const std::uint32_t inv = mod_inv(v[p]);
      for (int e = 0; e < dim_; ++e) pivot_vec[e] = mod_mul(v[e], inv);

      const auto& res = residual_[depth];
      auto& next_res = residual_[depth + 1];
      bool residual_zero = true;
      for (int e = 0; e < dim_; ++e) {
        next_res[e] = mod_sub(res[e], mod_mul(res[p], pivot_vec[e]));
        residual_zero = residual_zero && next_res[e] == 0;
      }
      // A smaller support already spans the target; its supersets are never minimal.
      if (residual_zero) continue;
      for (int c2 = c + 1; c2 < k; ++c2) {
        const std::uint32_t* src = reduced(depth, c2);
        std::uint32_t* dst = reduced(depth + 1, c2);
        const std::uint32_t f = src[p];
        if (f == 0) {
          std::copy(src, src + dim_, dst);
        } else {
          for (int e = 0; e < dim_; ++e) dst[e] = mod_sub(src[e], mod_mul(f, pivot_vec[e]));
        }
      }
      chosen_[depth] = c;
      descend(depth + 1, c + 1);
    }
  }

  void last_column(int depth, int start) {
    std::vector<std::uint32_t> res(residual_[depth]);
    normalize(res.data());
    std::vector<std::uint32_t> v(dim_);
    for (int c = start; c < num_candidates() && !found_; ++c) {
      std::copy(reduced(depth, c), reduced(depth, c) + dim_, v.begin());
      if (first_nonzero(v.data()) < 0) continue;
      normalize(v.data());
      if (v == res) {
        chosen_[depth] = c;
        try_accept(size_);
      }
    }
  }

  // Two more rows a < b complete the support iff their images modulo
  // span(chosen + residual) are parallel while they stay independent modulo
  // span(chosen): then the residual is a combination of the two.
  void pair_test(int depth, int start) {
    const int k = num_candidates();
    std::vector<std::uint32_t> res(residual_[depth]);
    const int rp = first_nonzero(res.data());
    normalize(res.data());

    quotient_.resize(static_cast<std::size_t>(k) * dim_);
    lead_.clear();
    cols_.clear();
    for (int c = start; c < k; ++c) {
      const std::uint32_t* v = reduced(depth, c);
      std::uint32_t* q = quotient_.data() + static_cast<std::size_t>(c) * dim_;
      const std::uint32_t f = v[rp];
      int lead = -1;
      for (int e = 0; e < dim_; ++e) {
        q[e] = mod_sub(v[e], mod_mul(f, res[e]));
        if (lead < 0 && q[e] != 0) lead = e;
      }
      // lead < 0: zero column, or parallel to the residual (a smaller support).
      if (lead < 0) continue;
      cols_.push_back(c);
      lead_.push_back(lead);
    }
    // Batch inversion of the leading entries (one modular inverse per node).
    const std::size_t count = cols_.size();
    prefix_.resize(count + 1);
    prefix_[0] = 1;
    for (std::size_t i = 0; i < count; ++i) {
      prefix_[i + 1] = mod_mul(prefix_[i], quotient_[static_cast<std::size_t>(cols_[i]) * dim_ + lead_[i]]);
    }
    std::uint32_t inv = count ? mod_inv(prefix_[count]) : 1;
    entries_.resize(count);
    for (std::size_t i = count; i-- > 0;) {
      std::uint32_t* q = quotient_.data() + static_cast<std::size_t>(cols_[i]) * dim_;
      const std::uint32_t lead_inv = mod_mul(inv, prefix_[i]);
      inv = mod_mul(inv, q[lead_[i]]);
      std::uint64_t h = 0;
      for (int e = lead_[i]; e < dim_; ++e) {
        q[e] = mod_mul(q[e], lead_inv);
        h += hash_coeff_[e] * q[e];
      }
      entries_[i] = {h, cols_[i]};
    }
    std::sort(entries_.begin(), entries_.end());
    std::vector<std::pair<int, int>> hits;
    for (std::size_t lo = 0; lo < entries_.size();) {
      std::size_t hi = lo + 1;
      while (hi < entries_.size() && entries_[hi].first == entries_[lo].first) ++hi;
      for (std::size_t a = lo; a < hi; ++a) {
        for (std::size_t b = a + 1; b < hi; ++b) {
          const int ca = entries_[a].second;
          const int cb = entries_[b].second;
          if (!same(quotient_, ca, cb) || parallel(reduced(depth, ca), reduced(depth, cb))) continue;
          hits.emplace_back(std::min(ca, cb), std::max(ca, cb));
        }
      }
      lo = hi;
    }
    std::sort(hits.begin(), hits.end());
    for (auto [a, b] : hits) {
      chosen_[depth] = a;
      chosen_[depth + 1] = b;
      if (try_accept(size_)) return;
    }
  }

  bool parallel(const std::uint32_t* a, const std::uint32_t* b) const {
    const int p = first_nonzero(a);
    const std::uint32_t ap = a[p];
    const std::uint32_t bp = b[p];
    for (int e = 0; e < dim_; ++e)
      if (mod_mul(ap, b[e]) != mod_mul(bp, a[e])) return false;
    return true;
  }

  bool same(const std::vector<std::uint32_t>& store, int a, int b) const {
    const auto* pa = store.data() + static_cast<std::size_t>(a) * dim_;
    const auto* pb = store.data() + static_cast<std::size_t>(b) * dim_;
    return std::equal(pa, pa + dim_, pb);
  }

  bool try_accept(int size) {
    std::vector<std::vector<int>> cols;
    for (int d = 0; d < size; ++d) cols.push_back(columns_[chosen_[d]]);
    auto w = solve_support(cols, target_);
    if (!w) return false;
    if (std::any_of(w->begin(), w->end(), [](const Rational& v) { return v == 0; })) return false;
    if (std::any_of(w->begin(), w->end(), [&](const Rational& v) { return abs(v) > m_bound_; })) {
      if (!m_rejection_ || size < *m_rejection_) m_rejection_ = size;
      return false;
    }
    PulseSequence seq(n_);
    for (int d = 0; d < size; ++d) seq.append(rows_[chosen_[d]], (*w)[d]);
    found_ = std::move(seq);
    return true;
  }

  int n_;
  int dim_;
  std::vector<FlipRow> rows_;
  std::vector<std::vector<int>> columns_;
  std::vector<Rational> target_;
  Rational m_bound_;
  const Deadline& deadline_;
  std::vector<std::uint64_t> hash_coeff_;

  std::vector<std::uint32_t> base_columns_;
  std::vector<std::uint32_t> base_target_;
  std::vector<std::vector<std::uint32_t>> reduced_;
  std::vector<std::vector<std::uint32_t>> residual_;
  std::vector<std::uint32_t> quotient_;
  std::vector<int> cols_;
  std::vector<int> lead_;
  std::vector<std::uint32_t> prefix_;
  std::vector<std::pair<std::uint64_t, int>> entries_;
  std::vector<int> chosen_;
  int size_ = 0;
  std::int64_t nodes_ = 0;
  std::optional<PulseSequence> found_;
  std::optional<int> m_rejection_;
};

// Realization using exactly the given rows with every |W| <= M, if one exists.
std::optional<PulseSequence> bounded_realization(int n, const std::vector<FlipRow>& rows,
                                                 const std::vector<Rational>& target, const Rational& m) {
  const int k = static_cast<int>(rows.size());
  const int pairs = static_cast<int>(target.size());
  // Columns: w+ (k), w- (k), slacks of w+ <= M (k), slacks of w- <= M (k).
  LinearProgram lp;
  lp.rows = pairs + 2 * k;
  lp.cols = 4 * k;
  lp.a.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0);
  lp.b = target;
  lp.b.resize(lp.rows, m);
  lp.c.assign(lp.cols, 0);
  for (int c = 0; c < k; ++c) {
    const auto col = coupling_column(rows[c]);
    for (int r = 0; r < pairs; ++r) {
      lp.at(r, c) = col[r];
      lp.at(r, k + c) = -col[r];
    }
    lp.c[c] = lp.c[k + c] = 1;
    lp.at(pairs + c, c) = lp.at(pairs + c, 2 * k + c) = 1;
    lp.at(pairs + k + c, k + c) = lp.at(pairs + k + c, 3 * k + c) = 1;
  }
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  PulseSequence seq(n);
  for (int c = 0; c < k; ++c) {
    Rational w = sol.x[c] - sol.x[k + c];
    if (w != 0) seq.append(rows[c], std::move(w));
  }
  return seq;
}

// First support of exactly `size` rows (any rank) admitting strengths within M.
std::optional<PulseSequence> bounded_support_search(int n, const std::vector<FlipRow>& rows,
                                                    const std::vector<Rational>& target, const Rational& m, int size,
                                                    const Deadline& deadline, std::int64_t& nodes) {
  const int k = static_cast<int>(rows.size());
  if (size < 1 || size > k) return std::nullopt;
  std::vector<int> pick(size);
  for (int i = 0; i < size; ++i) pick[i] = i;
  std::vector<FlipRow> subset(size);
  while (true) {
    deadline.check();
    ++nodes;
    for (int i = 0; i < size; ++i) subset[i] = rows[pick[i]];
    if (auto seq = bounded_realization(n, subset, target, m); seq && static_cast<int>(seq->l0()) == size) return seq;
    int i = size - 1;
    while (i >= 0 && pick[i] == k - size + i) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

Rational max_abs_strength(const PulseSequence& seq) {
  Rational m = 0;
  for (const auto& op : seq.ops()) m = std::max(m, abs(op.strength));
  return m;
}

PulseSequence construction_for(const Graph& g) {
  return g.has_uniform_weight() ? union_of_stars(g) : weighted_edge_by_edge(g);
}

// min sum |W| over the given rows; nullopt when the rows cannot realize g.
std::optional<std::pair<Rational, PulseSequence>> min_l1(const Graph& g, const std::vector<FlipRow>& rows) {
  const auto target = target_vector(g);
  const int k = static_cast<int>(rows.size());
  LinearProgram lp;
  lp.rows = static_cast<int>(target.size());
  lp.cols = 2 * k;
  lp.a.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0);
  lp.b = target;
  lp.c.assign(lp.cols, 1);
  for (int c = 0; c < k; ++c) {
    auto col = coupling_column(rows[c]);
    for (int r = 0; r < lp.rows; ++r) {
      lp.at(r, c) = col[r];
      lp.at(r, k + c) = -col[r];
    }
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  PulseSequence seq(g.num_vertices());
  for (int c = 0; c < k; ++c) {
    Rational w = sol.x[c] - sol.x[k + c];
    if (w != 0) seq.append(rows[c], w);
  }
  return std::pair{seq.l1(), std::move(seq)};
}

Rational ceil_rational(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

std::vector<FlipRow> all_rows(int n) {
  CompleteFlipMatrix full(n);
  std::vector<FlipRow> rows;
  for (int k = 0; k < full.size(); ++k) rows.push_back(full.row(k));
  return rows;
}

void check_size(const Graph& g) {
  if (g.num_vertices() > kMaxExactQubits) {
    throw Error(ErrorKind::too_large, "exact solve supports n <= " + std::to_string(kMaxExactQubits) +
                                          "; use subsample_solve for larger graphs");
  }
}

// Shared driver for solve_l0 and subsample_solve.
OptResult run_l0(const Graph& g, const std::vector<FlipRow>& rows, const BigM& m, std::chrono::milliseconds limit,
                 std::optional<PulseSequence> incumbent, bool complete) {
  const auto start = Clock::now();
  if (limit <= std::chrono::milliseconds::zero()) throw Error(ErrorKind::invalid_argument, "time limit must be positive");
  if (!(m.value > 0)) throw Error(ErrorKind::invalid_argument, "big-M must be positive");

  OptResult result;
  result.objective_kind = Objective::l0;
  result.big_m = m;
  result.candidate_rows = static_cast<int>(rows.size());
  result.sequence = PulseSequence(g.num_vertices());

  auto finish = [&](OptResult& r) -> OptResult& {
    r.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return r;
  };

  if (g.num_edges() == 0) {
    result.status = SolveStatus::optimal;
    result.objective = 0;
    result.lower_bound = 0;
    result.root_relaxation = 0;
    return finish(result);
  }

  if (incumbent && !(verify(*incumbent, g) && max_abs_strength(*incumbent) <= m.value)) incumbent.reset();
  if (incumbent) *incumbent = canonicalize(*incumbent);

  int lower = 1;
  if (auto relax = min_l1(g, rows)) {
    result.root_relaxation = relax->first / m.value;
    lower = std::max(lower, static_cast<int>(ceil_rational(result.root_relaxation).get_num().get_si()));
  } else {
    result.status = SolveStatus::infeasible;
    result.lower_bound = 0;
    return finish(result);
  }
  result.bound_trace.push_back(lower);
  const int root_lower = lower;

  // Independent supports never exceed the number of coupling pairs.
  const int max_support = std::min<int>(static_cast<int>(rows.size()), g.num_vertices() * (g.num_vertices() - 1) / 2);
  const int upper = incumbent ? static_cast<int>(incumbent->l0()) : max_support + 1;
  Deadline deadline(start, limit);
  SupportSearch search(g.num_vertices(), rows, target_vector(g), m.value, deadline);

  std::int64_t extra_nodes = 0;
  try {
    for (int size = lower; size < upper; ++size) {
      if (auto found = search.search(size)) {
        incumbent = std::move(*found);
        break;
      }
      lower = size + 1;
      result.bound_trace.push_back(lower);
    }
    // An independent support rejected for |W| > M leaves room for a larger
    // dependent support that fits within M, at any size above the rejection.
    // A root bound above one means M already cut off smaller supports unseen.
    std::optional<int> floor = search.first_m_rejection();
    if (floor) ++*floor;
    if (root_lower > 1) floor = std::min(floor.value_or(root_lower), root_lower);
    if (floor) {
      lower = std::min(lower, *floor);
      while (result.bound_trace.back() > lower) result.bound_trace.pop_back();
      if (result.bound_trace.back() < lower) result.bound_trace.push_back(lower);
      const int stop = incumbent ? static_cast<int>(incumbent->l0()) : static_cast<int>(rows.size()) + 1;
      const auto target = target_vector(g);
      for (int size = lower; size < stop; ++size) {
        if (auto found = bounded_support_search(g.num_vertices(), rows, target, m.value, size, deadline, extra_nodes)) {
          incumbent = std::move(*found);
          break;
        }
        lower = size + 1;
        result.bound_trace.push_back(lower);
      }
    }
  } catch (const Timeout&) {
    result.nodes_explored = search.nodes() + extra_nodes;
    result.lower_bound = lower;
    if (incumbent) {
      result.sequence = *incumbent;
      result.objective = static_cast<long>(incumbent->l0());
      result.status = SolveStatus::incumbent_timeout;
    } else {
      result.status = SolveStatus::infeasible;
    }
    return finish(result);
  }

  result.nodes_explored = search.nodes() + extra_nodes;
  if (incumbent) {
    result.sequence = *incumbent;
    result.objective = static_cast<long>(incumbent->l0());
    result.lower_bound = result.objective;
    result.status = complete ? SolveStatus::optimal : SolveStatus::subsample_complete;
  } else {
    result.status = SolveStatus::infeasible;
    result.lower_bound = lower;
  }
  return finish(result);
}

std::optional<PulseSequence> best_incumbent(const Graph& g, const std::optional<PulseSequence>& extra) {
  PulseSequence best = construction_for(g);
  if (extra && extra->num_qubits() == g.num_vertices() && verify(*extra, g)) {
    auto candidate = canonicalize(*extra);
    if (candidate.l0() < best.l0()) best = std::move(candidate);
  }
  return best;
}

// ceil(sqrt(x)) for x >= 0.
mpz_class ceil_sqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) ++r;
  return r;
}

}  // namespace

BigM big_m(const Graph& g, BigMKind kind) {
  if (g.num_edges() == 0) return {Rational(1), kind};
  const Rational z = g.total_abs_weight();
  if (kind == BigMKind::practical_sum) return {z, kind};

  // value^2 = scale^2 * base^exponent, value = sqrt(.) rounded up over the denominator.
  mpz_class base;
  unsigned long exponent;
  Rational scale;
  if (g.is_unweighted()) {
    base = 3 * g.num_vertices() - 2;
    exponent = 3UL * g.num_vertices() - 1;
    scale = 1;
  } else {
    base = 3 * static_cast<long>(g.num_edges());
    exponent = 3UL * g.num_edges() + 1;
    scale = z;
  }
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), exponent);
  const mpz_class num = scale.get_num();
  const mpz_class den = scale.get_den();
  Rational value(ceil_sqrt(num * num * power), den);
  value.canonicalize();
  return {value, kind};
}

OptResult solve_l0(const Graph& g, const L0Options& options) {
  check_size(g);
  const BigM m = options.big_m.value_or(big_m(g, BigMKind::practical_sum));
  return run_l0(g, all_rows(g.num_vertices()), m, options.time_limit, best_incumbent(g, options.incumbent), true);
}

OptResult solve_l1(const Graph& g) {
  check_size(g);
  const auto start = Clock::now();
  OptResult result;
  result.objective_kind = Objective::l1;
  result.candidate_rows = 1 << (g.num_vertices() - 1);
  auto best = min_l1(g, all_rows(g.num_vertices()));
  if (!best) throw Error(ErrorKind::invalid_argument, "complete flip matrix failed to realize the target");
  result.objective = best->first;
  result.lower_bound = best->first;
  result.sequence = std::move(best->second);
  result.status = SolveStatus::optimal;
  result.nodes_explored = 1;
  result.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return result;
}

OptResult subsample_solve(const Graph& g, const SubsampleOptions& options) {
  const int n = g.num_vertices();
  if (options.row_budget < n) throw Error(ErrorKind::invalid_argument, "row budget must be at least n");
  if (n > kMaxSubsampleQubits) {
    throw Error(ErrorKind::too_large, "subsample solve supports n <= " + std::to_string(kMaxSubsampleQubits));
  }
  const BigM m = options.big_m.value_or(big_m(g, BigMKind::practical_sum));
  const std::int64_t total = std::int64_t{1} << (n - 1);
  if (options.row_budget >= total && n <= kMaxExactQubits) {
    return solve_l0(g, {m, options.time_limit, std::nullopt});
  }

  const PulseSequence construction = construction_for(g);
  std::set<std::uint64_t> picked;
  std::vector<FlipRow> rows;
  auto take = [&](const FlipRow& r) {
    if (picked.insert(r.canonical().mask()).second) rows.push_back(r.canonical());
  };
  take(FlipRow::all_plus(n));
  std::optional<PulseSequence> incumbent;
  if (static_cast<int>(construction.l0()) + 1 <= options.row_budget) {
    for (const auto& op : construction.ops()) take(op.row);
    incumbent = construction;
  }
  std::mt19937_64 rng(options.seed);
  const auto budget = static_cast<std::size_t>(std::min<std::int64_t>(options.row_budget, total));
  while (rows.size() < budget) {
    const std::uint64_t k = total == (std::int64_t{1} << 63) ? rng() >> 1 : rng() % static_cast<std::uint64_t>(total);
    take(FlipRow(n, k << 1));
  }
  std::sort(rows.begin(), rows.end(), [](const FlipRow& a, const FlipRow& b) { return a.mask() < b.mask(); });
  return run_l0(g, rows, m, options.time_limit, incumbent, false);
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::incumbent_timeout: return "incumbent_timeout";
    case SolveStatus::subsample_complete: return "subsample_complete";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

std::string to_string(BigMKind kind) { return kind == BigMKind::theorem_bound ? "theorem" : "sum"; }

nlohmann::json to_json(const OptResult& result) {
  nlohmann::json j = {
      {"status", to_string(result.status)},
      {"objective_kind", result.objective_kind == Objective::l0 ? "l0" : "l1"},
      {"objective", to_string(result.objective)},
      {"lower_bound", to_string(result.lower_bound)},
      {"sequence", to_json(result.sequence)},
      {"nodes_explored", result.nodes_explored},
      {"wall_time_ms", result.wall_time.count()},
      {"candidate_rows", result.candidate_rows},
      {"bound_trace", result.bound_trace},
  };
  if (result.objective_kind == Objective::l0) j["root_relaxation"] = to_string(result.root_relaxation);
  if (result.big_m) j["big_m"] = {{"kind", to_string(result.big_m->kind)}, {"value", to_string(result.big_m->value)}};
  return j;
}

}  // namespace isingc
