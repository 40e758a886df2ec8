#include "rans/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "rans/errors.hpp"

namespace rans {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

SymbolicConstant sym(long num, long den, int s3, int spi) { return {mpq_class(num, den), s3, spi}; }

// Decimal rendering of exp(log_value) without leaving long double range.
std::string scientific(long double log_value) {
  if (!std::isfinite(log_value)) return log_value > 0 ? "inf" : "0";
  const long double l10 = log_value / std::log(10.0L);
  long double e = std::floor(l10);
  long double m = std::pow(10.0L, l10 - e);
  if (m >= 9.9999999999995L) {
    m /= 10;
    e += 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lfe%+d", m, static_cast<int>(e));
  return buf;
}

std::string fixed(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

}  // namespace

long double SymbolicConstant::value() const {
  return static_cast<long double>(rational.get_d()) * std::pow(std::sqrt(3.0L), sqrt3_power) *
         std::pow(std::sqrt(kPi), sqrtpi_power);
}

std::string SymbolicConstant::to_string() const {
  std::string s = rational.get_str();
  const auto factor = [&](const char* name, int p) {
    if (p == 0) return;
    s += " * " + std::string(name);
    if (p != 1) s += "^" + std::to_string(p);
  };
  factor("sqrt(3)", sqrt3_power);
  factor("sqrt(pi)", sqrtpi_power);
  return s;
}

long double AsymptoticLaw::log_value(std::size_t n) const {
  const long double nn = static_cast<long double>(n);
  return std::log(amplitude.value()) + nn * log_of(growth) + static_cast<long double>(alpha.get_d()) * std::log(nn);
}

long double AsymptoticLaw::evaluate(std::size_t n) const { return std::exp(log_value(n)); }

std::vector<AsymptoticLaw> law_catalog() {
  const mpq_class inv_rho = 1 / kRho;
  return {
      {"T_n", "[z^n]T", "1", sym(1, 4, 1, -1), inv_rho, mpq_class(-3, 2), "", true},
      {"Tprime_n", "[z^n]T'", "1", sym(27, 16, 1, -1), inv_rho, mpq_class(-1, 2), "", true},
      {"Delta_n", "[z^n]Delta_i", "1", sym(3, 44, 0, 0), inv_rho, 0, "", true},
      {"mean_from_O1", "m(n)", "n T_n", sym(1, 11, 1, 1), 1, mpq_class(1, 2), "", true},
      {"intra", "[z^n]Intra / T_n", "T_n", sym(1, 44, 0, 0), 1, 2, "", true},
      {"inter", "[z^n]Inter / T_n", "T_n", sym(1, 11, 1, 1), 1, mpq_class(5, 2), "", true},
      {"fedge", "[z^n]F / T_n", "T_n", sym(9, 242, 0, 1), 1, 2, "", true},
      {"mean_pairwise_thm", "mean pairwise distance", "|C(R)|", sym(1, 22, 1, 1), 1, mpq_class(1, 2),
       "mean_pairwise", true},
      {"mean_pairwise_intro", "mean pairwise distance", "|C(R)|", sym(2, 11, 1, 1), 1, mpq_class(1, 2),
       "mean_pairwise", true},
      {"degree_tail", "Pr(center degree = k)", "T_n", sym(1, 1, 0, 0), kBeta, mpq_class(-3, 2), "", false},
  };
}

const AsymptoticLaw& find_law(const std::string& id) {
  static const std::vector<AsymptoticLaw> catalog = law_catalog();
  for (const auto& law : catalog)
    if (law.id == id) return law;
  throw Error(ErrorCode::kInvalidArgument, "unknown law '" + id + "'");
}

long double log_of(const mpq_class& x) {
  if (sgn(x) <= 0) throw Error(ErrorCode::kInvalidArgument, "log of a non-positive value");
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(static_cast<long double>(mn) / md) + static_cast<long double>(en - ed) * std::log(2.0L);
}

ConvergenceReport convergence_report(const std::vector<Observation>& observed, const AsymptoticLaw& law,
                                     double band) {
  if (observed.empty()) throw Error(ErrorCode::kInsufficientData, "convergence report needs observations");
  ConvergenceReport r;
  r.law_id = law.id;
  r.band = band;
  for (const auto& o : observed) {
    ConvergenceRow row{o.n, log_of(o.value), law.log_value(o.n), 0};
    row.ratio = std::exp(row.log_observed - row.log_predicted);
    r.rows.push_back(row);
  }
  const auto dev = [](long double x) { return std::fabs(x - 1); };
  r.terminal_ratio = r.rows.back().ratio;
  r.monotone_toward_one = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    if (dev(r.rows[i].ratio) > dev(r.rows[i - 1].ratio) + 1e-15L) r.monotone_toward_one = false;
  const std::size_t start = r.rows.size() > 10 ? r.rows.size() - 10 : 0;
  for (std::size_t i = start; i < r.rows.size(); ++i) r.last_decade_drift = std::max(r.last_decade_drift, dev(r.rows[i].ratio));
  r.terminal_within_band = dev(r.terminal_ratio) <= band;
  const bool moving_away = dev(r.rows.back().ratio) > dev(r.rows[start].ratio) + 1e-15L;
  r.non_convergence_flag = r.last_decade_drift > band || moving_away;
  return r;
}

std::string ConvergenceReport::to_csv(bool header) const {
  std::ostringstream out;
  if (header) out << "law_id,n,observed,predicted,ratio\n";
  for (const auto& row : rows)
    out << law_id << ',' << row.n << ',' << scientific(row.log_observed) << ',' << scientific(row.log_predicted) << ','
        << fixed(row.ratio) << '\n';
  return out.str();
}

std::string ConvergenceReport::summary_json() const {
  nlohmann::json j = {{"law_id", law_id},
                      {"terminal_n", rows.back().n},
                      {"terminal_ratio", static_cast<double>(terminal_ratio)},
                      {"band", band},
                      {"terminal_within_band", terminal_within_band},
                      {"monotone_toward_one", monotone_toward_one},
                      {"last_decade_drift", static_cast<double>(last_decade_drift)},
                      {"non_convergence_flag", non_convergence_flag}};
  return j.dump();
}

MeanResolution resolve_mean_constant(const std::vector<MeanSamples>& samples, double band, std::size_t min_samples) {
  if (samples.empty()) throw Error(ErrorCode::kInsufficientData, "no sampled orders");
  MeanResolution r;
  r.band = band;
  long double num = 0, den = 0;
  for (const auto& s : samples) {
    if (s.means.size() < min_samples)
      throw Error(ErrorCode::kInsufficientData, "order " + std::to_string(s.order) + " has " +
                                                    std::to_string(s.means.size()) + " samples, need " +
                                                    std::to_string(min_samples));
    long double sum = 0;
    const long double root = std::sqrt(static_cast<long double>(s.order));
    for (double m : s.means) {
      num += m * root;
      den += static_cast<long double>(s.order);
      sum += m;
    }
    r.order_means.emplace_back(s.order, static_cast<double>(sum / s.means.size()));
  }
  r.c_hat = static_cast<double>(num / den);

  std::size_t matches = 0;
  for (const auto& law : law_catalog()) {
    if (law.exclusive_group != "mean_pairwise") continue;
    const double v = static_cast<double>(law.amplitude.value());
    const double err = std::fabs(r.c_hat - v) / v;
    r.candidates.push_back({law.id, v, err, err <= band});
    if (err <= band) {
      ++matches;
      r.chosen = law.id;
    }
  }
  if (matches != 1) r.chosen.reset();

  const std::vector<SymbolicConstant> known = {sym(1, 44, 1, 1), sym(1, 22, 1, 1), sym(1, 11, 1, 1),
                                               sym(2, 11, 1, 1), sym(4, 11, 1, 1)};
  r.closest_relative_error = INFINITY;
  for (const auto& k : known) {
    const double v = static_cast<double>(k.value());
    const double err = std::fabs(r.c_hat - v) / v;
    if (err < r.closest_relative_error) {
      r.closest_relative_error = err;
      r.closest_constant = k.to_string();
    }
  }
  return r;
}

std::string MeanResolution::verdict() const {
  std::ostringstream out;
  out << "C_hat=" << fixed(c_hat) << "; ";
  if (chosen) out << "matches " << *chosen;
  else out << "matches neither candidate";
  for (const auto& c : candidates)
    out << "; " << c.law_id << " (" << fixed(c.value) << ") rel.err " << fixed(c.relative_error)
        << (c.matches ? " accepted" : " rejected");
  out << "; closest known constant " << closest_constant << " rel.err " << fixed(closest_relative_error);
  return out.str();
}

std::string MeanResolution::summary_json() const {
  nlohmann::json j = {{"c_hat", c_hat}, {"band", band}, {"verdict", verdict()},
                      {"closest_constant", closest_constant}, {"closest_relative_error", closest_relative_error}};
  j["chosen"] = chosen ? nlohmann::json(*chosen) : nlohmann::json(nullptr);
  for (const auto& [n, m] : order_means) j["order_means"].push_back({{"n", n}, {"mean", m}});
  for (const auto& c : candidates)
    j["candidates"].push_back(
        {{"law_id", c.law_id}, {"value", c.value}, {"relative_error", c.relative_error}, {"matches", c.matches}});
  return j.dump();
}

TailFit degree_tail_check(const std::map<std::size_t, double>& histogram, std::size_t k_min, std::size_t k_max) {
  if (k_max < k_min) throw Error(ErrorCode::kInvalidArgument, "empty degree range");
  const auto present = [&](std::size_t k) {
    const auto it = histogram.find(k);
    return it != histogram.end() && it->second > 0;
  };
  std::size_t best_lo = 0, best_len = 0;
  for (std::size_t k = k_min; k <= k_max;) {
    if (!present(k)) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j <= k_max && present(j)) ++j;
    if (j - k > best_len) {
      best_len = j - k;
      best_lo = k;
    }
    k = j;
  }
  if (best_len < 2) throw Error(ErrorCode::kInsufficientData, "fewer than two non-empty degree bins in range");

  TailFit fit;
  fit.k_min = best_lo;
  fit.k_max = best_lo + best_len - 1;
  fit.range_shrunk = fit.k_min != k_min || fit.k_max != k_max;
  const auto value = [&](std::size_t k) { return std::log(histogram.at(k)) + 1.5 * std::log(static_cast<double>(k)); };
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = fit.k_min; k <= fit.k_max; ++k) {
    const double x = static_cast<double>(k), y = value(k);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (k < fit.k_max) fit.successive.emplace_back(k, std::exp(value(k + 1) - y));
  }
  const double m = static_cast<double>(best_len);
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.r_hat = std::exp(slope);
  const double beta = kBeta.get_d();
  fit.relative_error = std::fabs(fit.r_hat - beta) / beta;
  return fit;
}

std::string TailFit::summary_json() const {
  nlohmann::json j = {{"k_min", k_min},   {"k_max", k_max}, {"range_shrunk", range_shrunk},
                      {"r_hat", r_hat},   {"beta", kBeta.get_d()}, {"relative_error", relative_error}};
  for (const auto& [k, r] : successive) j["successive"].push_back({{"k", k}, {"ratio", r}});
  return j.dump();
}

}  // namespace rans
