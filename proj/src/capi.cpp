#include "rans/rans.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "rans/errors.hpp"
#include "rans/experiments.hpp"
#include "rans/generating_functions.hpp"
#include "rans/marked_gf.hpp"
#include "rans/rans_graph.hpp"
#include "rans/ternary_tree.hpp"
#include "rans/verification.hpp"

struct rans_tree {
  rans::TernaryTree tree;
};

struct rans_graph {
  rans::RansGraph graph;
};

struct rans_series {
  rans::PowerSeries series;
};

struct rans_report {
  std::variant<rans::VerifyReport, rans::AsymptReport> report;
};

namespace {

thread_local std::string last_error;

rans_status fail(rans_status s, const std::string& what) {
  last_error = what;
  return s;
}

rans_status map_code(rans::ErrorCode c) {
  switch (c) {
    case rans::ErrorCode::kInvalidArgument: return RANS_E_INVALID_ARGUMENT;
    case rans::ErrorCode::kParse: return RANS_E_PARSE;
    case rans::ErrorCode::kCapExceeded: return RANS_E_CAP_EXCEEDED;
    case rans::ErrorCode::kOutOfRange: return RANS_E_OUT_OF_RANGE;
    case rans::ErrorCode::kIo: return RANS_E_IO;
    case rans::ErrorCode::kVerification: return RANS_E_VERIFICATION;
    case rans::ErrorCode::kInsufficientData: return RANS_E_INSUFFICIENT_DATA;
  }
  return RANS_E_INTERNAL;
}

template <class F>
rans_status guarded(F&& f) {
  try {
    return f();
  } catch (const rans::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RANS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RANS_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

rans_status null_arg(const char* what) { return fail(RANS_E_INVALID_ARGUMENT, std::string(what) + " is null"); }

unsigned parse_index(const std::string& s, std::size_t pos) {
  if (pos >= s.size()) throw rans::Error(rans::ErrorCode::kInvalidArgument, "missing index in '" + s + "'");
  std::size_t used = 0;
  const unsigned long v = std::stoul(s.substr(pos), &used);
  if (pos + used != s.size()) throw rans::Error(rans::ErrorCode::kInvalidArgument, "bad index in '" + s + "'");
  return static_cast<unsigned>(v);
}

rans::PowerSeries build_series(const std::string& name, std::size_t n) {
  using namespace rans;
  if (name == "T") return series_T(n);
  if (name == "Tprime") return series_Tprime(n);
  if (name == "H") return series_H(n);
  if (name == "Dtotal") return series_D_total(n);
  if (name == "delta") return series_intra(n).delta_small;
  if (name == "delta~") return series_intra(n).delta_small_tilde;
  if (name == "Intra") return series_intra(n).intra;
  if (name == "Intra~") return series_intra(n).intra_tilde;
  if (name == "gamma-") return series_inter_bounds(n).gamma_minus;
  if (name == "gamma+") return series_inter_bounds(n).gamma_plus;
  if (name == "Inter-") return series_inter_bounds(n).inter_minus;
  if (name == "Inter+") return series_inter_bounds(n).inter_plus;
  if (name == "E") return series_E(n, EReading::kInnerTerm);
  if (name == "phi") return series_fedge(n).phi;
  if (name == "F") return series_fedge(n).f;
  if (name == "G") return series_G(n);
  if (name.rfind("E:", 0) == 0) {
    for (EReading r : kAllEReadings)
      if (name.substr(2) == to_string(r)) return series_E(n, r);
    throw Error(ErrorCode::kInvalidArgument, "unknown E reading '" + name.substr(2) + "'");
  }
  if (name.rfind("Delta", 0) == 0) {
    const auto colon = name.find(':');
    const unsigned i = parse_index(name.substr(0, colon), 5);
    if (colon == std::string::npos) return series_Delta(i, n);
    const std::string method = name.substr(colon + 1);
    if (method == "system") return series_Delta(i, n, DeltaMethod::kLinearSystem);
    if (method == "closed") return series_Delta(i, n, DeltaMethod::kClosedForm);
    if (method == "printed") {
      if (i < 1 || i > 3) throw Error(ErrorCode::kInvalidArgument, "Delta index must be 1, 2 or 3");
      return series_Delta_printed_system(n)[i - 1];
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown Delta method '" + method + "'");
  }
  if (name.size() > 1 && name[0] == 'D') return series_D(parse_index(name, 1), n);
  throw Error(ErrorCode::kInvalidArgument, "unknown series '" + name + "'");
}

rans::MarkedSeries build_marked(const std::string& name, std::size_t n) {
  using namespace rans;
  if (name == "Tzu") return bivariate_degree(n).t_zu;
  if (name == "Dg") return bivariate_degree(n).dg;
  if (name == "Dtop") return topological_gf(n);
  if (name.size() == 2 && name[0] == 'T') return marked_Td(parse_index(name, 1), n);
  throw Error(ErrorCode::kInvalidArgument, "unknown marked series '" + name + "'");
}

void apply_tolerances(rans::AsymptOptions& o, const char* spec) {
  if (!spec) return;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw rans::Error(rans::ErrorCode::kInvalidArgument, "tolerance '" + item + "' is not KEY=VAL");
    const std::string key = item.substr(0, eq);
    if (!o.tolerance.count(key)) throw rans::Error(rans::ErrorCode::kInvalidArgument, "unknown tolerance key '" + key + "'");
    std::size_t used = 0;
    const std::string val = item.substr(eq + 1);
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size() || v < 0)
      throw rans::Error(rans::ErrorCode::kInvalidArgument, "bad tolerance value '" + val + "'");
    o.tolerance[key] = v;
  }
}

}  // namespace

extern "C" {

const char* rans_last_error(void) { return last_error.c_str(); }

const char* rans_status_name(rans_status s) {
  switch (s) {
    case RANS_OK: return "ok";
    case RANS_E_INVALID_ARGUMENT: return "invalid argument";
    case RANS_E_PARSE: return "parse error";
    case RANS_E_CAP_EXCEEDED: return "cap exceeded";
    case RANS_E_OUT_OF_RANGE: return "out of range";
    case RANS_E_IO: return "i/o error";
    case RANS_E_VERIFICATION: return "verification failure";
    case RANS_E_INSUFFICIENT_DATA: return "insufficient data";
    case RANS_E_ABSENT: return "absent";
    case RANS_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rans_string_free(char* s) { std::free(s); }

uint64_t rans_derive_seed(uint64_t base, uint64_t index) { return rans::derive_seed(base, index); }

uint64_t rans_sample_seed(uint64_t run_seed, size_t order, size_t index) {
  return rans::sample_seed(run_seed, order, index);
}

rans_status rans_count_trees(size_t n, char** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(rans::count_trees(n).get_str());
    return RANS_OK;
  });
}

rans_status rans_tree_decode(const char* word, rans_tree** out) {
  if (!word) return null_arg("word");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rans_tree{rans::decode_tree(word)};
    return RANS_OK;
  });
}

rans_status rans_tree_sample(size_t n, uint64_t seed, rans_strategy strategy, rans_tree** out) {
  if (!out) return null_arg("out");
  if (strategy != RANS_STRATEGY_CYCLE_LEMMA && strategy != RANS_STRATEGY_RECURSIVE_SPLITTING)
    return fail(RANS_E_INVALID_ARGUMENT, "unknown sampling strategy");
  return guarded([&] {
    rans::Rng rng(seed);
    const auto s = strategy == RANS_STRATEGY_CYCLE_LEMMA ? rans::SamplingStrategy::kCycleLemma
                                                         : rans::SamplingStrategy::kRecursiveSplitting;
    *out = new rans_tree{rans::sample_tree(n, rng, s)};
    return RANS_OK;
  });
}

rans_status rans_tree_enumerated(size_t n, size_t index, size_t cap, rans_tree** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& trees = rans::all_trees(n, cap);
    if (index >= trees.size())
      return fail(RANS_E_OUT_OF_RANGE, "tree index " + std::to_string(index) + " beyond " + std::to_string(trees.size()));
    *out = new rans_tree{trees[index]};
    return RANS_OK;
  });
}

rans_status rans_tree_encode(const rans_tree* tree, char** out) {
  if (!tree) return null_arg("tree");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(rans::encode_tree(tree->tree));
    return RANS_OK;
  });
}

size_t rans_tree_order(const rans_tree* tree) { return tree ? tree->tree.order() : 0; }

void rans_tree_free(rans_tree* tree) { delete tree; }

rans_status rans_graph_build(const rans_tree* tree, rans_graph** out) {
  if (!tree) return null_arg("tree");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rans_graph{rans::RansGraph(tree->tree)};
    return RANS_OK;
  });
}

void rans_graph_free(rans_graph* graph) { delete graph; }

size_t rans_graph_order(const rans_graph* g) { return g ? g->graph.order() : 0; }
size_t rans_graph_vertex_count(const rans_graph* g) { return g ? g->graph.vertex_count() : 0; }
size_t rans_graph_edge_count(const rans_graph* g) { return g ? g->graph.edge_count() : 0; }

rans_status rans_graph_to_json(const rans_graph* g, char** out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(g->graph.to_json());
    return RANS_OK;
  });
}

rans_status rans_graph_bfs(const rans_graph* g, uint32_t source, uint32_t* out, size_t out_len) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  if (!g->graph.contains(source)) return fail(RANS_E_OUT_OF_RANGE, "source vertex not in graph");
  if (out_len < g->graph.vertex_count()) return fail(RANS_E_OUT_OF_RANGE, "output buffer too small");
  return guarded([&] {
    const auto d = rans::bfs_distances(g->graph, source);
    std::copy(d.begin(), d.end(), out);
    return RANS_OK;
  });
}

rans_status rans_graph_distance_profile(const rans_graph* g, uint32_t source, uint64_t* counts, size_t capacity,
                                        size_t* out_len) {
  if (!g) return null_arg("graph");
  if (!out_len) return null_arg("out_len");
  if (capacity > 0 && !counts) return null_arg("counts");
  if (!g->graph.contains(source)) return fail(RANS_E_OUT_OF_RANGE, "source vertex not in graph");
  return guarded([&] {
    const auto p = rans::distance_profile(g->graph, source);
    *out_len = p.count.size();
    for (std::size_t i = 0; i < p.count.size() && i < capacity; ++i) counts[i] = p.count[i];
    return RANS_OK;
  });
}

rans_status rans_graph_delta_sum(const rans_graph* g, int variant, uint64_t* out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = rans::delta_sum(g->graph, rans::label_variant(variant));
    return RANS_OK;
  });
}

rans_status rans_graph_center_degree(const rans_graph* g, size_t* out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto d = rans::degree_stats(g->graph).center_degree;
    if (!d) return fail(RANS_E_ABSENT, "the empty structure has no center");
    *out = *d;
    return RANS_OK;
  });
}

rans_status rans_graph_equidistant_count(const rans_graph* g, uint64_t* out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = rans::equidistant_count(g->graph);
    return RANS_OK;
  });
}

rans_status rans_graph_census(const rans_graph* g, rans_census* out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto c = rans::total_distance_census(g->graph);
    *out = {c.pair_count,        c.intra_pairs, c.inter_pairs, c.intra_total,    c.inter_total,
            c.inter_lower_bound, c.fedge_count, c.grand_total, c.shortcut_pairs, c.decomposition_defect};
    return RANS_OK;
  });
}

rans_status rans_graph_mean_pairwise_distance(const rans_graph* g, double* out) {
  if (!g) return null_arg("graph");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = rans::mean_pairwise_distance(g->graph);
    return RANS_OK;
  });
}

rans_status rans_series_build(const char* name, size_t trunc, rans_series** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rans_series{build_series(name, trunc)};
    return RANS_OK;
  });
}

size_t rans_series_precision(const rans_series* s) { return s ? s->series.precision() : 0; }

rans_status rans_series_coeff(const rans_series* s, size_t n, char** out) {
  if (!s) return null_arg("series");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(s->series.coeff(n).get_str());
    return RANS_OK;
  });
}

rans_status rans_series_to_csv(const rans_series* s, char** out) {
  if (!s) return null_arg("series");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(rans::to_csv(s->series));
    return RANS_OK;
  });
}

void rans_series_free(rans_series* s) { delete s; }

rans_status rans_marked_series_text(const char* name, size_t trunc, char** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = dup(rans::to_text(build_marked(name, trunc)));
    return RANS_OK;
  });
}

rans_status rans_verify_run(size_t max_order, size_t cap, const char* corrupt, rans_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    rans::VerifyOptions o;
    o.max_order = max_order;
    o.cap = cap;
    if (corrupt && *corrupt) o.corrupt = std::string(corrupt);
    *out = new rans_report{rans::run_verification(o)};
    return RANS_OK;
  });
}

void rans_asympt_config_default(rans_asympt_config* c) {
  if (!c) return;
  static const rans::AsymptOptions d;
  static const std::vector<size_t> orders(d.mc_orders.begin(), d.mc_orders.end());
  *c = {d.trunc,        orders.data(),      orders.size(), d.samples,  d.seed, d.tail_order,
        d.tail_graph_order, d.tail_graphs, d.pole_eps,    d.exact_only ? 1 : 0, nullptr};
}

rans_status rans_asympt_run(const rans_asympt_config* c, rans_report** out) {
  if (!c) return null_arg("config");
  if (!out) return null_arg("out");
  if (c->order_count > 0 && !c->orders) return null_arg("orders");
  return guarded([&] {
    rans::AsymptOptions o;
    o.trunc = c->trunc;
    o.mc_orders.assign(c->orders, c->orders + c->order_count);
    o.samples = c->samples;
    o.seed = c->seed;
    o.tail_order = c->tail_order;
    o.tail_graph_order = c->tail_graph_order;
    o.tail_graphs = c->tail_graphs;
    o.pole_eps = c->pole_eps;
    o.exact_only = c->exact_only != 0;
    apply_tolerances(o, c->tolerances);
    *out = new rans_report{rans::run_asymptotics(o)};
    return RANS_OK;
  });
}

int rans_report_passed(const rans_report* r) {
  if (!r) return 0;
  return std::visit([](const auto& x) { return x.passed() ? 1 : 0; }, r->report);
}

rans_status rans_report_render(const rans_report* r, rans_format format, char** out) {
  if (!r) return null_arg("report");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::string text;
    if (const auto* v = std::get_if<rans::VerifyReport>(&r->report)) {
      if (format == RANS_FORMAT_JSON) text = v->to_json();
      else if (format == RANS_FORMAT_CSV) {
        std::ostringstream csv;
        csv << "# config: " << nlohmann::json::parse(v->to_json())["config"].dump() << '\n'
            << "identity,verdict,first_mismatch,detail\n";
        for (const auto& row : v->results)
          csv << row.name << ',' << (row.informational ? "info" : (row.pass ? "pass" : "fail")) << ','
              << (row.first_mismatch ? std::to_string(*row.first_mismatch) : "") << ",\"" << row.detail << "\"\n";
        text = csv.str();
      } else {
        text = v->to_text();
      }
    } else {
      const auto& a = std::get<rans::AsymptReport>(r->report);
      if (format == RANS_FORMAT_JSON) text = a.to_json();
      else if (format == RANS_FORMAT_CSV)
        text = "# config: " + nlohmann::json::parse(a.to_json())["config"].dump() + '\n' + a.to_csv();
      else text = a.to_text();
    }
    *out = dup(text);
    return RANS_OK;
  });
}

void rans_report_free(rans_report* r) { delete r; }

}  // extern "C"
