#include "rans/verification.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "rans/errors.hpp"
#include "rans/marked_gf.hpp"
#include "rans/ternary_tree.hpp"

namespace rans {

namespace {

void add_structure(OrderCensus& c, const RansGraph& g) {
  const std::size_t n = g.order();
  ++c.structures;
  if (g.edge_count() != 3 + 3 * n) ++c.edge_count_failures;

  std::array<std::vector<std::uint32_t>, 3> from;
  for (VertexId o = 0; o < 3; ++o) from[o] = bfs_distances(g, o);
  for (VertexId v = 3; v < g.vertex_count(); ++v) {
    const std::uint32_t d = from[0][v];
    if (c.distance_counts.size() <= d) c.distance_counts.resize(d + 1);
    ++c.distance_counts[d];
  }
  const auto spread_ok = [&](VertexId x) {
    const auto [lo, hi] = std::minmax({from[0][x], from[1][x], from[2][x]});
    return hi - lo <= 1;
  };
  for (VertexId x = 0; x < g.vertex_count(); ++x)
    if (!spread_ok(x)) {
      ++c.clique_bound_failures;
      break;
    }

  std::array<std::uint32_t, 3> profile{};
  for (VertexId v = 3; v < g.vertex_count(); ++v)
    if (from[0][v] >= 1 && from[0][v] <= 3) ++profile[from[0][v] - 1];
  ++c.distance_profiles[profile];

  std::array<std::uint64_t, 3> triple{};
  bool labels_ok = true;
  for (int k = 1; k <= 3; ++k) {
    const auto labels = delta_labeling(g, label_variant(k));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::uint32_t target = from[0][v];
      if (k >= 2) target = std::min(target, from[1][v]);
      if (k >= 3) target = std::min(target, from[2][v]);
      if (labels[v] != target) labels_ok = false;
    }
    triple[k - 1] = delta_sum(g, label_variant(k));
    c.delta[k - 1] += triple[k - 1];
  }
  if (!labels_ok) ++c.labeling_failures;
  ++c.delta_triples[triple];

  c.equidistant += equidistant_count(g);
  const DistanceCensus dc = total_distance_census(g);
  if (dc.pair_count != n * (n - 1) / 2 + 3 * n) ++c.pair_count_failures;
  c.pairs += dc;
  if (const auto cd = degree_stats(g).center_degree) ++c.center_degree[*cd];
}

std::string show(const mpq_class& q) { return q.get_str(); }

mpq_class exact(std::uint64_t x) { return mpq_class(mpz_class(static_cast<unsigned long>(x))); }

class Checker {
 public:
  Checker(VerifyReport& report, std::size_t max_order) : report_(report), max_order_(max_order) {}

  bool corrupted(const std::string& name) const { return report_.options.corrupt == name; }

  void add(IdentityResult r) { report_.results.push_back(std::move(r)); }

  // Series coefficients 0..max_order against census values.
  void series_vs(const std::string& name, PowerSeries series, const std::vector<mpq_class>& oracle,
                 bool informational = false) {
    if (corrupted(name)) series[std::min(max_order_, series.precision())] += 1;
    IdentityResult r{name, true, informational, std::nullopt, ""};
    for (std::size_t n = 0; n <= max_order_ && n < oracle.size(); ++n)
      if (series.coeff(n) != oracle[n]) {
        r.pass = false;
        r.first_mismatch = n;
        r.detail = "z^" + std::to_string(n) + ": series " + show(series[n]) + ", census " + show(oracle[n]);
        break;
      }
    if (r.pass) r.detail = "orders 0.." + std::to_string(std::min(max_order_, oracle.size() - 1));
    add(std::move(r));
  }

  // Two series agree up to max_order.
  void series_eq(const std::string& name, PowerSeries a, const PowerSeries& b, std::size_t upto) {
    if (corrupted(name)) a[std::min(upto, a.precision())] += 1;
    IdentityResult r{name, true, false, std::nullopt, "orders 0.." + std::to_string(upto)};
    for (std::size_t n = 0; n <= upto; ++n)
      if (a.coeff(n) != b.coeff(n)) {
        r.pass = false;
        r.first_mismatch = n;
        r.detail = "z^" + std::to_string(n) + ": " + show(a[n]) + " vs " + show(b[n]);
        break;
      }
    add(std::move(r));
  }

  // Per-order maps of marked coefficients.
  template <class Key>
  void maps_vs(const std::string& name, std::vector<std::map<Key, mpq_class>> series,
               const std::vector<std::map<Key, mpq_class>>& oracle) {
    if (corrupted(name) && !series.empty()) {
      auto& last = series.back();
      if (last.empty()) last[Key{}] = 1;
      else last.begin()->second += 1;
    }
    IdentityResult r{name, true, false, std::nullopt, "orders 0.." + std::to_string(oracle.size() - 1)};
    for (std::size_t n = 0; n < oracle.size(); ++n)
      if (series[n] != oracle[n]) {
        r.pass = false;
        r.first_mismatch = n;
        r.detail = "coefficient polynomials differ at z^" + std::to_string(n);
        break;
      }
    add(std::move(r));
  }

  void structural(const std::string& name, std::uint64_t failures, const std::string& what) {
    const bool bad = failures != 0 || corrupted(name);
    add({name, !bad, false, std::nullopt,
         bad ? std::to_string(failures) + " structures violate " + what : what + " on every structure"});
  }

 private:
  VerifyReport& report_;
  std::size_t max_order_;
};

template <class F>
std::vector<mpq_class> collect(const std::vector<OrderCensus>& census, F f) {
  std::vector<mpq_class> out;
  for (const auto& c : census) out.push_back(exact(f(c)));
  return out;
}

}  // namespace

OrderCensus census_for_order(std::size_t n, std::size_t cap) {
  OrderCensus c;
  c.order = n;
  enumerate_trees(n, [&](const TernaryTree& t) { add_structure(c, RansGraph(t)); }, cap);
  return c;
}

std::vector<OrderCensus> exhaustive_census(std::size_t max_order, std::size_t cap) {
  if (max_order > cap) throw CapExceeded("exhaustive census order", max_order, cap);
  std::vector<OrderCensus> out;
  for (std::size_t n = 0; n <= max_order; ++n) out.push_back(census_for_order(n, cap));
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass || r.informational; });
}

const IdentityResult* VerifyReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "# verify max_order=" << options.max_order << " cap=" << options.cap;
  if (options.corrupt) out << " corrupt=" << *options.corrupt;
  out << '\n';
  for (const auto& r : results)
    out << (r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL")) << ' ' << r.name << ": " << r.detail << '\n';
  out << "# E reading: " << to_string(e_reading) << (e_validated ? " (validated by census)" : " (NOT validated)")
      << '\n';
  out << (passed() ? "verification passed" : "verification FAILED") << '\n';
  return out.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["config"] = {{"command", "verify"}, {"max_order", options.max_order}, {"cap", options.cap}};
  if (options.corrupt) j["config"]["corrupt"] = *options.corrupt;
  j["e_reading"] = std::string(to_string(e_reading));
  j["e_validated"] = e_validated;
  j["passed"] = passed();
  for (const auto& r : results) {
    nlohmann::json row = {{"name", r.name}, {"pass", r.pass}, {"informational", r.informational}, {"detail", r.detail}};
    row["first_mismatch"] = r.first_mismatch ? nlohmann::json(*r.first_mismatch) : nlohmann::json(nullptr);
    j["identities"].push_back(row);
  }
  return j.dump(2);
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.max_order > options.cap) throw CapExceeded("verify max_order", options.max_order, options.cap);
  return run_verification(options, exhaustive_census(options.max_order, options.cap));
}

VerifyReport run_verification(const VerifyOptions& options, const std::vector<OrderCensus>& census) {
  const std::size_t n = options.max_order;
  if (census.size() < n + 1) throw Error(ErrorCode::kInvalidArgument, "census shorter than max_order");
  const std::vector<OrderCensus> cen(census.begin(), census.begin() + static_cast<std::ptrdiff_t>(n + 1));
  VerifyReport report;
  report.options = options;
  Checker check(report, n);

  // Structural invariants of the graphs themselves.
  std::uint64_t edge = 0, pairs = 0, labels = 0, clique = 0, split = 0, defect = 0;
  for (const auto& c : cen) {
    edge += c.edge_count_failures;
    pairs += c.pair_count_failures;
    labels += c.labeling_failures;
    clique += c.clique_bound_failures;
    if (c.pairs.grand_total != c.pairs.intra_total + c.pairs.inter_total) ++split;
    defect += c.pairs.shortcut_pairs;
  }
  check.structural("edge-count", edge, "3+3n edges");
  check.structural("pair-count", pairs, "|C(R)| = n(n-1)/2 + 3n");
  check.structural("labeling-equals-bfs", labels, "delta labels equal BFS distances");
  check.structural("outermost-clique-bound", clique, "|d(x,Oi) - d(x,Oj)| <= 1");
  check.structural("census-split", split, "grand total = intra + inter");
  check.structural("frontier-decomposition", defect, "inter distance = lower bound + f-edges");

  // Counting series against the census.
  check.series_vs("T", series_T(n), collect(cen, [](const OrderCensus& c) { return c.structures; }));
  for (unsigned i = 1; i <= 3; ++i)
    check.series_vs("D" + std::to_string(i), series_D(i, n), collect(cen, [i](const OrderCensus& c) {
                      return i < c.distance_counts.size() ? c.distance_counts[i] : 0;
                    }));
  const auto delta_sys = series_Delta_all(n, DeltaMethod::kLinearSystem);
  const auto delta_closed = series_Delta_all(n, DeltaMethod::kClosedForm);
  for (unsigned i = 1; i <= 3; ++i) {
    const auto oracle = collect(cen, [i](const OrderCensus& c) { return c.delta[i - 1]; });
    check.series_vs("Delta" + std::to_string(i), delta_sys[i - 1], oracle);
    check.series_eq("Delta" + std::to_string(i) + "-system-vs-closed-form", delta_sys[i - 1], delta_closed[i - 1], n);
  }
  const auto printed = series_Delta_printed_system(n);
  for (unsigned i = 1; i <= 3; ++i)
    check.series_vs("Delta" + std::to_string(i) + "-printed-system", printed[i - 1],
                    collect(cen, [i](const OrderCensus& c) { return c.delta[i - 1]; }), true);

  // E: every reading of the printed closed form is tried; the first one the
  // census confirms feeds phi, F and G.
  const auto e_oracle = collect(cen, [](const OrderCensus& c) { return c.equidistant; });
  std::optional<EReading> chosen;
  for (EReading r : kAllEReadings) {
    const PowerSeries e = series_E(n, r);
    bool ok = true;
    for (std::size_t k = 0; k <= n; ++k) ok = ok && e[k] == e_oracle[k];
    if (ok && !chosen) chosen = r;
    check.series_vs("E[" + std::string(to_string(r)) + "]", e, e_oracle, true);
  }
  report.e_reading = chosen.value_or(EReading::kInnerTerm);
  report.e_validated = chosen.has_value();
  check.series_vs("E", series_E(n, report.e_reading), e_oracle);

  const IntraSeries intra = series_intra(n);
  check.series_vs("Intra", intra.intra_tilde, collect(cen, [](const OrderCensus& c) { return c.pairs.intra_total; }));
  check.series_vs("Intra-literal", intra.intra,
                  collect(cen, [](const OrderCensus& c) { return c.pairs.intra_total; }), true);
  const InterBounds inter = series_inter_bounds(n);
  check.series_vs("InterLowerBound", inter.inter_minus,
                  collect(cen, [](const OrderCensus& c) { return c.pairs.inter_lower_bound; }));
  {
    IdentityResult r{"InterUpperBound", true, false, std::nullopt, "census lower bound <= [z^n]Inter+"};
    for (std::size_t k = 0; k <= n; ++k)
      if (inter.inter_plus[k] < exact(cen[k].pairs.inter_lower_bound) ||
          check.corrupted("InterUpperBound")) {
        r.pass = false;
        r.first_mismatch = k;
        r.detail = "z^" + std::to_string(k) + ": Inter+ below census";
        break;
      }
    check.add(std::move(r));
  }
  const FedgeSeries fedge = series_fedge(n, report.e_reading);
  check.series_vs("F", fedge.f, collect(cen, [](const OrderCensus& c) { return c.pairs.fedge_count; }));
  check.series_vs("G", series_G(n, report.e_reading),
                  collect(cen, [](const OrderCensus& c) { return c.pairs.grand_total; }));

  // Cross-derivations between series.
  check.series_eq("Tprime-closed-form-vs-derivative", series_Tprime(n), series_T(n + 1).derivative(), n);
  check.series_eq("D-total-vs-Delta1", series_D_total(n), delta_sys[0], n);
  check.series_eq("H-times-D2-vs-D3", series_H(n) * series_D(2, n), series_D(3, n), n);

  // Center degrees.
  const BivariateDegree bd = bivariate_degree(n);
  {
    std::vector<std::map<std::uint32_t, mpq_class>> s(n + 1), o(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      for (const auto& [m, c] : bd.dg[k].terms()) s[k][m[0]] = c;
      for (const auto& [deg, cnt] : cen[k].center_degree)
        o[k][static_cast<std::uint32_t>(deg)] = exact(cnt);
    }
    check.maps_vs("Dg", s, o);
  }

  // Distance-marked T_d.
  const std::size_t nt = std::min(n, kMarkedTdCap);
  for (std::size_t d = 1; d <= 3; ++d) {
    const MarkedSeries td = marked_Td(d, nt);
    std::vector<std::map<std::array<std::uint32_t, 3>, mpq_class>> s(nt + 1), o(nt + 1);
    for (std::size_t k = 0; k <= nt; ++k) {
      for (const auto& [m, c] : td[k].terms()) s[k][{m[0], m[1], m[2]}] = c;
      for (const auto& [p, cnt] : cen[k].distance_profiles) {
        std::array<std::uint32_t, 3> key{};
        for (std::size_t j = 0; j < d; ++j) key[j] = p[j];
        o[k][key] += exact(cnt);
      }
    }
    const std::string name = "T" + std::to_string(d);
    check.maps_vs(name, s, o);
    check.series_eq(name + "-at-ones-vs-T", td.at_ones(), series_T(nt), nt);
    for (std::size_t j = 1; j <= d; ++j)
      check.series_eq(name + "-derivative-u" + std::to_string(j) + "-vs-D" + std::to_string(j),
                      td.derivative_at_ones(j - 1), series_D(static_cast<unsigned>(j), nt), nt);
    if (d == 1) {
      const MarkedSeries tzu = bivariate_degree(nt).t_zu;
      IdentityResult r{"T1-vs-T(z,u)", tzu == td && !check.corrupted("T1-vs-T(z,u)"), false, std::nullopt,
                       "orders 0.." + std::to_string(nt)};
      if (!r.pass) r.detail = "marked series differ";
      check.add(std::move(r));
    }
  }

  // Topological series in (d1, d2, d3).
  const std::size_t ng = std::min(n, kTopologicalCap);
  {
    const MarkedSeries tg = topological_gf(ng);
    std::vector<std::map<std::array<std::uint64_t, 3>, mpq_class>> s(ng + 1), o(ng + 1);
    for (std::size_t k = 0; k <= ng; ++k) {
      for (const auto& [m, c] : tg[k].terms()) s[k][{m[0], m[1], m[2]}] = c;
      for (const auto& [t, cnt] : cen[k].delta_triples) o[k][t] = exact(cnt);
    }
    check.maps_vs("Delta(z,d1,d2,d3)", s, o);
    for (unsigned i = 1; i <= 3; ++i)
      check.series_eq("Delta(z,d1,d2,d3)-derivative-d" + std::to_string(i) + "-vs-Delta" + std::to_string(i),
                      tg.derivative_at_ones(i - 1), delta_sys[i - 1].truncated(ng), ng);
  }
  return report;
}

}  // namespace rans
