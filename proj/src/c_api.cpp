#include "isingc/isingc.h"

#include "isingc/config.hpp"
#include "isingc/constructions.hpp"
#include "isingc/cost_model.hpp"
#include "isingc/error.hpp"
#include "isingc/exact_opt.hpp"
#include "isingc/experiments.hpp"
#include "isingc/graph.hpp"
#include "isingc/pulse.hpp"
#include "isingc/qaoa_sim.hpp"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

using namespace isingc;

struct isc_graph {
  Graph g;
};
struct isc_sequence {
  PulseSequence s;
};
struct isc_opt_result {
  OptResult r;
};

namespace {

thread_local std::string g_last_error;

isc_status fail(isc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

isc_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
      return ISC_ERR_PARSE;
    case ErrorKind::invalid_argument:
      return ISC_ERR_INVALID_ARGUMENT;
    case ErrorKind::dimension_mismatch:
      return ISC_ERR_DIMENSION_MISMATCH;
    case ErrorKind::requires_unweighted:
      return ISC_ERR_REQUIRES_UNWEIGHTED;
    case ErrorKind::too_large:
      return ISC_ERR_TOO_LARGE;
    case ErrorKind::io:
      return ISC_ERR_IO;
  }
  return ISC_ERR_INTERNAL;
}

template <class F>
isc_status guarded(F&& f) {
  try {
    f();
    return ISC_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ISC_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ISC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ISC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::invalid_argument, std::string(what) + " is null");
}

BigMKind m_kind_of(isc_big_m_kind kind) {
  switch (kind) {
    case ISC_BIG_M_SUM:
      return BigMKind::practical_sum;
    case ISC_BIG_M_THEOREM:
      return BigMKind::theorem_bound;
  }
  throw Error(ErrorKind::invalid_argument, "unknown big-M kind");
}

Compilation compilation_of(isc_compilation c) {
  switch (c) {
    case ISC_COMPILATION_CX:
      return Compilation::cx;
    case ISC_COMPILATION_MS:
      return Compilation::ms;
  }
  throw Error(ErrorKind::invalid_argument, "unknown compilation");
}

std::chrono::milliseconds limit_of(int64_t ms) {
  if (ms <= 0) throw Error(ErrorKind::invalid_argument, "time limit must be positive");
  return std::chrono::milliseconds(ms);
}

TimingParams timing_of(const isc_timing* t) {
  TimingParams p;
  if (t) {
    p.t_pi = Microseconds(t->t_pi_us);
    p.t_ising_per_ion = Microseconds(t->t_ising_per_ion_us);
    p.t_ms = Microseconds(t->t_ms_us);
  }
  p.validate();
  return p;
}

std::vector<Rational> weight_list(const char* text) {
  std::vector<Rational> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_rational(item));
  }
  return out;
}

}  // namespace

extern "C" {

const char* isc_version(void) { return ISINGC_VERSION; }

const char* isc_last_error(void) { return g_last_error.c_str(); }

void isc_string_free(char* s) { delete[] s; }

isc_status isc_graph_parse_edge_list(const char* text, isc_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new isc_graph{parse_edge_list(text)};
  });
}

isc_status isc_graph_from_json(const char* json, isc_graph** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new isc_graph{graph_from_json(nlohmann::json::parse(json))};
  });
}

isc_status isc_graph_random_er(int n, double p, const char* weight_set, uint64_t seed, isc_graph** out) {
  return guarded([&] {
    require(out, "out");
    const auto weights = weight_list(weight_set);
    *out = new isc_graph{random_er_graph(n, p, weights, seed)};
  });
}

void isc_graph_destroy(isc_graph* g) { delete g; }

int isc_graph_num_vertices(const isc_graph* g) { return g ? g->g.num_vertices() : 0; }

size_t isc_graph_num_edges(const isc_graph* g) { return g ? g->g.num_edges() : 0; }

int isc_graph_is_unweighted(const isc_graph* g) { return g && g->g.is_unweighted() ? 1 : 0; }

isc_status isc_graph_to_json(const isc_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(to_json(g->g).dump());
  });
}

isc_status isc_graph_to_edge_list(const isc_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(to_edge_list(g->g));
  });
}

isc_status isc_sequence_from_json(const char* json, isc_sequence** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new isc_sequence{sequence_from_json(nlohmann::json::parse(json))};
  });
}

isc_status isc_sequence_to_json(const isc_sequence* s, char** out) {
  return guarded([&] {
    require(s, "sequence");
    require(out, "out");
    *out = dup_string(to_json(s->s).dump());
  });
}

void isc_sequence_destroy(isc_sequence* s) { delete s; }

int isc_sequence_num_qubits(const isc_sequence* s) { return s ? s->s.num_qubits() : 0; }

size_t isc_sequence_l0(const isc_sequence* s) { return s ? s->s.l0() : 0; }

isc_status isc_sequence_l1(const isc_sequence* s, char** out) {
  return guarded([&] {
    require(s, "sequence");
    require(out, "out");
    *out = dup_string(to_string(s->s.l1()));
  });
}

isc_status isc_sequence_canonicalize(const isc_sequence* s, isc_sequence** out) {
  return guarded([&] {
    require(s, "sequence");
    require(out, "out");
    *out = new isc_sequence{canonicalize(s->s)};
  });
}

isc_status isc_sequence_compose(const isc_sequence* a, const isc_sequence* b, isc_sequence** out) {
  return guarded([&] {
    require(a, "first sequence");
    require(b, "second sequence");
    require(out, "out");
    *out = new isc_sequence{compose(a->s, b->s)};
  });
}

isc_status isc_compile(const isc_graph* g, isc_method method, isc_sequence** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    switch (method) {
      case ISC_METHOD_STARS:
        *out = new isc_sequence{union_of_stars(g->g)};
        return;
      case ISC_METHOD_EDGES:
        *out = new isc_sequence{weighted_edge_by_edge(g->g)};
        return;
    }
    throw Error(ErrorKind::invalid_argument, "unknown method");
  });
}

isc_status isc_verify(const isc_sequence* s, const isc_graph* g, isc_verify_report* out) {
  return guarded([&] {
    require(s, "sequence");
    require(g, "graph");
    require(out, "out");
    const auto report = verify_detailed(s->s, g->g);
    out->verified = report.verified ? 1 : 0;
    out->mismatch_i = report.first_mismatch ? report.first_mismatch->first : -1;
    out->mismatch_j = report.first_mismatch ? report.first_mismatch->second : -1;
  });
}

isc_status isc_lower_bound(int n, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = lower_bound(n);
  });
}

isc_timing isc_default_timing(void) {
  const TimingParams p;
  return {p.t_pi.count(), p.t_ising_per_ion.count(), p.t_ms.count()};
}

isc_status isc_estimate_time_us(const isc_sequence* s, const isc_timing* timing, double* out) {
  return guarded([&] {
    require(s, "sequence");
    require(out, "out");
    *out = estimate_time(s->s, timing_of(timing)).count();
  });
}

isc_status isc_estimate_time_norms_us(int n, size_t l0, double l1, const isc_timing* timing, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n < 0 || l1 < 0) throw Error(ErrorKind::invalid_argument, "n and l1 must be non-negative");
    *out = estimate_time(n, l0, l1, timing_of(timing)).count();
  });
}

isc_status isc_optimize(const isc_graph* g, isc_objective objective, isc_big_m_kind m_kind, int64_t time_limit_ms,
                        isc_opt_result** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    if (objective == ISC_OBJECTIVE_L1) {
      *out = new isc_opt_result{solve_l1(g->g)};
      return;
    }
    if (objective != ISC_OBJECTIVE_L0) throw Error(ErrorKind::invalid_argument, "unknown objective");
    L0Options options;
    options.big_m = big_m(g->g, m_kind_of(m_kind));
    options.time_limit = limit_of(time_limit_ms);
    *out = new isc_opt_result{solve_l0(g->g, options)};
  });
}

isc_status isc_optimize_subsample(const isc_graph* g, int row_budget, uint64_t seed, isc_big_m_kind m_kind,
                                  int64_t time_limit_ms, isc_opt_result** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    SubsampleOptions options;
    options.row_budget = row_budget;
    options.seed = seed;
    options.time_limit = limit_of(time_limit_ms);
    options.big_m = big_m(g->g, m_kind_of(m_kind));
    *out = new isc_opt_result{subsample_solve(g->g, options)};
  });
}

void isc_opt_result_destroy(isc_opt_result* r) { delete r; }

isc_solve_status isc_opt_result_status(const isc_opt_result* r) {
  if (!r) return ISC_SOLVE_INFEASIBLE;
  switch (r->r.status) {
    case SolveStatus::optimal:
      return ISC_SOLVE_OPTIMAL;
    case SolveStatus::incumbent_timeout:
      return ISC_SOLVE_INCUMBENT_TIMEOUT;
    case SolveStatus::subsample_complete:
      return ISC_SOLVE_SUBSAMPLE_COMPLETE;
    case SolveStatus::infeasible:
      return ISC_SOLVE_INFEASIBLE;
  }
  return ISC_SOLVE_INFEASIBLE;
}

isc_status isc_opt_result_objective(const isc_opt_result* r, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = dup_string(to_string(r->r.objective));
  });
}

isc_status isc_opt_result_sequence(const isc_opt_result* r, isc_sequence** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = new isc_sequence{r->r.sequence};
  });
}

isc_status isc_opt_result_to_json(const isc_opt_result* r, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = dup_string(to_json(r->r).dump());
  });
}

isc_status isc_big_m(const isc_graph* g, isc_big_m_kind kind, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(to_string(big_m(g->g, m_kind_of(kind)).value));
  });
}

isc_status isc_simulate(const isc_graph* g, isc_compilation compilation, const isc_sequence* seq, double gamma,
                        double beta, double lambda, double* expectation) {
  return guarded([&] {
    require(g, "graph");
    require(expectation, "expectation");
    NoiseSpec noise;
    noise.major_rate = lambda;
    *expectation = simulate_qaoa_p1(g->g, compilation_of(compilation), seq ? &seq->s : nullptr, gamma, beta, noise);
  });
}

isc_status isc_optimize_angles(const isc_graph* g, isc_compilation compilation, const isc_sequence* seq, double lambda,
                               int grid_resolution, isc_angles* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    NoiseSpec noise;
    noise.major_rate = lambda;
    const auto a =
        optimize_angles(g->g, compilation_of(compilation), seq ? &seq->s : nullptr, noise, grid_resolution);
    *out = {a.gamma, a.beta, a.expectation, a.ratio};
  });
}

isc_status isc_maxcut(const isc_graph* g, double* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = maxcut_brute_force(g->g);
  });
}

isc_status isc_sweep(const char* kind, const char* config_text, const char* out_dir, char** summary_json) {
  return guarded([&] {
    require(kind, "kind");
    require(out_dir, "out_dir");
    const auto config = parse_config(config_text ? config_text : "");
    const auto summary = run_sweep(parse_sweep_kind(kind), config, out_dir);
    if (summary_json) {
      nlohmann::json j;
      j["files"] = nlohmann::json::array();
      for (const auto& f : summary.files) j["files"].push_back(f.string());
      j["instances"] = summary.instances;
      j["timeouts"] = summary.timeouts;
      *summary_json = dup_string(j.dump());
    }
  });
}

}  // extern "C"
