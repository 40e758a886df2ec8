#include "rans/experiments.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rans/errors.hpp"
#include "rans/generating_functions.hpp"
#include "rans/marked_gf.hpp"

namespace rans {

RansGraph sample_graph(std::uint64_t run_seed, std::size_t order, std::size_t index, SamplingStrategy strategy) {
  Rng rng(sample_seed(run_seed, order, index));
  return RansGraph(sample_tree(order, rng, strategy));
}

PoleAmplitude pole_amplitude(double eps, std::optional<std::size_t> truncation) {
  PoleAmplitude p{eps, {}, truncation, {}};
  const long double rho = 4.0L / 27.0L;
  const auto v = evaluate_at(rho * (1 - static_cast<long double>(eps)));
  const long double target = 3.0L / 44.0L;
  for (int i = 0; i < 3; ++i) p.analytic[i] = static_cast<double>(static_cast<long double>(eps) * v.delta[i] / target);
  if (truncation) {
    const mpq_class e(eps);
    const mpq_class z = kRho * (1 - e);
    const auto delta = series_Delta_all(*truncation, DeltaMethod::kClosedForm);
    for (int i = 0; i < 3; ++i) p.truncated[i] = mpq_class(e * delta[i].evaluate(z) / mpq_class(3, 44)).get_d();
  }
  return p;
}

std::pair<double, std::optional<double>> h_near_rho(double eps, std::optional<std::size_t> truncation) {
  const long double rho = 4.0L / 27.0L;
  const double analytic = static_cast<double>(evaluate_at(rho * (1 - static_cast<long double>(eps))).h);
  if (!truncation) return {analytic, std::nullopt};
  return {analytic, series_H(*truncation).evaluate(kRho * (1 - mpq_class(eps))).get_d()};
}

std::vector<Observation> tree_counts(std::size_t max_n) {
  const PowerSeries t = series_T(max_n);
  std::vector<Observation> out;
  for (std::size_t n = 1; n <= max_n; ++n) out.push_back({n, t[n]});
  return out;
}

std::vector<Observation> mean_from_o1(std::size_t max_n) {
  const PowerSeries t = series_T(max_n);
  const PowerSeries d = series_Delta(1, max_n, DeltaMethod::kClosedForm);
  std::vector<Observation> out;
  for (std::size_t n = 1; n <= max_n; ++n) out.push_back({n, d[n] / (t[n] * static_cast<unsigned long>(n))});
  return out;
}

namespace {

std::vector<Observation> per_structure(const PowerSeries& s, std::size_t lo, std::size_t hi) {
  const PowerSeries t = series_T(hi);
  std::vector<Observation> out;
  for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi; ++n) out.push_back({n, s[n] / t[n]});
  return out;
}

}  // namespace

std::vector<Observation> intra_per_structure(std::size_t lo, std::size_t hi) {
  return per_structure(series_intra(hi).intra_tilde, lo, hi);
}

std::vector<Observation> inter_minus_per_structure(std::size_t lo, std::size_t hi) {
  return per_structure(series_inter_bounds(hi).inter_minus, std::max<std::size_t>(lo, 3), hi);
}

std::vector<Observation> fedge_per_structure(std::size_t lo, std::size_t hi) {
  return per_structure(series_fedge(hi).f, std::max<std::size_t>(lo, 5), hi);
}

std::map<std::size_t, double> exact_center_degree_distribution(std::size_t n) {
  const BivariateDegree bd = bivariate_degree(n);
  const mpz_class total = count_trees(n);
  std::map<std::size_t, double> out;
  for (const auto& [m, c] : bd.dg.coeff(n).terms()) out[m[0]] = ratio(c, mpq_class(total));
  return out;
}

std::map<std::size_t, double> sampled_degree_histogram(std::uint64_t run_seed, std::size_t order, std::size_t graphs) {
  std::map<std::size_t, double> out;
  for (std::size_t i = 0; i < graphs; ++i)
    for (const auto& [k, c] : internal_degree_histogram(sample_graph(run_seed, order, i)))
      out[k] += static_cast<double>(c);
  return out;
}

std::vector<MeanSamples> sample_mean_distances(std::uint64_t run_seed, const std::vector<std::size_t>& orders,
                                               std::size_t samples) {
  std::vector<MeanSamples> out;
  for (std::size_t n : orders) {
    MeanSamples s{n, {}};
    for (std::size_t i = 0; i < samples; ++i) s.means.push_back(mean_pairwise_distance(sample_graph(run_seed, n, i)));
    out.push_back(std::move(s));
  }
  return out;
}

double AsymptOptions::tol(const std::string& key) const {
  const auto it = tolerance.find(key);
  if (it == tolerance.end()) throw Error(ErrorCode::kInvalidArgument, "unknown tolerance key '" + key + "'");
  return it->second;
}

const ConvergenceReport& AsymptReport::law(const std::string& id) const {
  for (const auto& r : laws)
    if (r.law_id == id) return r;
  throw Error(ErrorCode::kInvalidArgument, "no convergence table for '" + id + "'");
}

std::vector<std::pair<std::string, bool>> AsymptReport::verdicts() const {
  std::vector<std::pair<std::string, bool>> v;
  v.emplace_back("T_n", law("T_n").terminal_within_band);
  v.emplace_back("mean_from_O1", law("mean_from_O1").terminal_within_band);
  const auto& intra = law("intra");
  v.emplace_back("intra", intra.monotone_toward_one && intra.terminal_within_band);
  bool pole_ok = true;
  for (double a : pole.analytic) pole_ok = pole_ok && std::fabs(a - 1) <= options.tol("pole");
  v.emplace_back("pole", pole_ok);
  v.emplace_back("degree_tail", exact_tail.relative_error <= options.tol("degree_tail"));
  if (mean) v.emplace_back("mean_pairwise", mean->chosen.has_value());
  return v;
}

bool AsymptReport::passed() const {
  for (const auto& [name, ok] : verdicts())
    if (!ok) return false;
  return true;
}

AsymptReport run_asymptotics(const AsymptOptions& o) {
  if (o.trunc < 50) throw Error(ErrorCode::kInvalidArgument, "asymptotic truncation must be at least 50");
  AsymptReport r;
  r.options = o;
  const std::size_t n_mean = std::min<std::size_t>(o.trunc, 400);
  const std::size_t n_intra = std::min<std::size_t>(o.trunc, 300);
  r.laws.push_back(convergence_report(tree_counts(o.trunc), find_law("T_n"), o.tol("T_n")));
  r.laws.push_back(convergence_report(mean_from_o1(n_mean), find_law("mean_from_O1"), o.tol("mean_from_O1")));
  r.laws.push_back(convergence_report(intra_per_structure(50, n_intra), find_law("intra"), o.tol("intra")));
  r.laws.push_back(convergence_report(inter_minus_per_structure(50, n_intra), find_law("inter"), o.tol("inter")));
  r.laws.push_back(convergence_report(fedge_per_structure(50, n_intra), find_law("fedge"), o.tol("fedge")));
  r.pole = pole_amplitude(o.pole_eps, n_mean);
  r.h_near = h_near_rho(1e-4).first;
  r.exact_tail = degree_tail_check(exact_center_degree_distribution(o.tail_order));
  if (!o.exact_only) {
    if (o.tail_graphs > 0 && o.tail_graph_order > 0)
      r.sampled_tail = degree_tail_check(sampled_degree_histogram(o.seed, o.tail_graph_order, o.tail_graphs));
    r.mean = resolve_mean_constant(sample_mean_distances(o.seed, o.mc_orders, o.samples), o.tol("mean_pairwise"));
  }
  return r;
}

std::string AsymptReport::to_csv() const {
  std::string out;
  bool header = true;
  for (const auto& l : laws) {
    out += l.to_csv(header);
    header = false;
  }
  return out;
}

namespace {

nlohmann::json config_json(const AsymptOptions& o) {
  nlohmann::json j = {{"command", "asympt"},
                      {"trunc", o.trunc},
                      {"orders", o.mc_orders},
                      {"samples", o.samples},
                      {"seed", o.seed},
                      {"tail_order", o.tail_order},
                      {"tail_graph_order", o.tail_graph_order},
                      {"tail_graphs", o.tail_graphs},
                      {"pole_eps", o.pole_eps},
                      {"exact_only", o.exact_only}};
  for (const auto& [k, v] : o.tolerance) j["tolerance"][k] = v;
  return j;
}

}  // namespace

std::string AsymptReport::to_json() const {
  nlohmann::json j;
  j["config"] = config_json(options);
  for (const auto& l : laws) j["laws"].push_back(nlohmann::json::parse(l.summary_json()));
  j["pole_amplitude"] = {{"eps", pole.eps}, {"analytic_ratio", pole.analytic}};
  if (pole.truncation) {
    j["pole_amplitude"]["truncation"] = *pole.truncation;
    j["pole_amplitude"]["truncated_ratio"] = pole.truncated;
  }
  j["h_at_rho_1e-4"] = h_near;
  j["degree_tail_exact"] = nlohmann::json::parse(exact_tail.summary_json());
  if (sampled_tail) j["degree_tail_sampled"] = nlohmann::json::parse(sampled_tail->summary_json());
  if (mean) j["mean_pairwise"] = nlohmann::json::parse(mean->summary_json());
  for (const auto& [name, ok] : verdicts()) j["verdicts"][name] = ok;
  j["passed"] = passed();
  return j.dump(2);
}

std::string AsymptReport::to_text() const {
  std::ostringstream out;
  out << "# " << config_json(options).dump() << '\n';
  for (const auto& l : laws)
    out << l.law_id << ": n=" << l.rows.back().n << " ratio=" << static_cast<double>(l.terminal_ratio)
        << " band=" << l.band << (l.terminal_within_band ? " within" : " outside")
        << (l.monotone_toward_one ? ", monotone toward 1" : ", not monotone")
        << (l.non_convergence_flag ? ", NON-CONVERGENCE FLAG" : "") << '\n';
  out << "pole amplitude / (3/44) at eps=" << pole.eps << ": " << pole.analytic[0] << ' ' << pole.analytic[1] << ' '
      << pole.analytic[2];
  if (pole.truncation)
    out << " (partial sums to z^" << *pole.truncation << ": " << pole.truncated[0] << ' ' << pole.truncated[1] << ' '
        << pole.truncated[2] << ')';
  out << '\n';
  out << "H(rho(1-1e-4)) = " << h_near << '\n';
  out << "degree tail (exact, n=" << options.tail_order << "): r_hat=" << exact_tail.r_hat << " k=[" << exact_tail.k_min
      << ',' << exact_tail.k_max << "] rel.err=" << exact_tail.relative_error << '\n';
  if (sampled_tail)
    out << "degree tail (sampled, n=" << options.tail_graph_order << " x" << options.tail_graphs
        << "): r_hat=" << sampled_tail->r_hat << " k=[" << sampled_tail->k_min << ',' << sampled_tail->k_max
        << "] rel.err=" << sampled_tail->relative_error << '\n';
  if (mean) out << "mean pairwise: " << mean->verdict() << '\n';
  for (const auto& [name, ok] : verdicts()) out << (ok ? "PASS " : "FAIL ") << name << '\n';
  out << (passed() ? "asymptotic checks passed" : "asymptotic checks FAILED") << '\n';
  return out.str();
}

}  // namespace rans
