#include "rans/generating_functions.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rans/errors.hpp"

namespace rans {

std::string_view to_string(EReading r) {
  switch (r) {
    case EReading::kWholeExpression: return "whole-expression";
    case EReading::kInnerTerm: return "inner-term";
    case EReading::kSquareOnR: return "square-on-R";
    case EReading::kSquareOnBoth: return "prefactor-zT'-minus-R-squared";
    case EReading::kSquareOnZTp: return "square-on-zT'";
    case EReading::kPrefactorOnSquare: return "prefactor-on-zT'-squared-minus-R";
  }
  return "?";
}

namespace {

// Divisions by zT-type factors cost one order; two spare orders cover every
// formula below.
constexpr std::size_t kMargin = 2;

struct Base {
  std::size_t n;
  PowerSeries z, t, tp;
};

Base base(std::size_t n) {
  const std::size_t w = n + kMargin;
  Base b{n, PowerSeries::variable(w), series_T(w), PowerSeries()};
  b.tp = gf::tprime(b.z, b.t);
  return b;
}

PowerSeries cut(const PowerSeries& s, std::size_t n) {
  if (s.precision() < n) throw Error(ErrorCode::kOutOfRange, "series lost more precision than expected");
  return s.truncated(n);
}

using Matrix3 = std::array<std::array<PowerSeries, 3>, 3>;

// Gaussian elimination; every pivot has an invertible constant term.
std::array<PowerSeries, 3> solve3(Matrix3 m, std::array<PowerSeries, 3> b) {
  for (std::size_t c = 0; c < 3; ++c) {
    if (sgn(m[c][c][0]) == 0) throw Error(ErrorCode::kInvalidArgument, "singular constant pivot");
    for (std::size_t r = c + 1; r < 3; ++r) {
      const PowerSeries f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < 3; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<PowerSeries, 3> x;
  for (std::size_t c = 3; c-- > 0;) {
    PowerSeries acc = b[c];
    for (std::size_t k = c + 1; k < 3; ++k) acc -= m[c][k] * x[k];
    x[c] = acc / m[c][c];
  }
  return x;
}

// System I - A with A entries multiples of a = zT^2.
std::array<PowerSeries, 3> solve_delta_system(const Base& b, bool printed) {
  const std::size_t w = b.t.precision();
  const PowerSeries zero(w);
  const PowerSeries one = PowerSeries::constant(1, w);
  const PowerSeries a = b.z * b.t * b.t;
  const PowerSeries zt3 = a * b.t;
  Matrix3 m;
  std::array<PowerSeries, 3> rhs{zt3 + a * b.z * b.tp, zt3, zt3};
  if (!printed) {
    m = {{{one - 2 * a, zero, -a}, {-2 * a, one - a, zero}, {zero, -3 * a, one}}};
  } else {
    m = {{{one - 3 * a, zero, zero}, {-2 * a, one, -a}, {zero, -3 * a, one}}};
  }
  return solve3(std::move(m), std::move(rhs));
}

}  // namespace

PowerSeries series_T(std::size_t n) {
  // P_m = [z^m] T^2, filled alongside T.
  std::vector<mpz_class> t(n + 1), p(n + 1);
  t[0] = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      mpz_class acc = 0;
      for (std::size_t a = 0; a < k; ++a) mpz_addmul(acc.get_mpz_t(), t[a].get_mpz_t(), p[k - 1 - a].get_mpz_t());
      t[k] = acc;
    }
    mpz_class acc = 0;
    for (std::size_t a = 0; a <= k; ++a) mpz_addmul(acc.get_mpz_t(), t[a].get_mpz_t(), t[k - a].get_mpz_t());
    p[k] = acc;
  }
  std::vector<mpq_class> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = mpq_class(t[i]);
  PowerSeries s(std::move(c));
  const PowerSeries z = PowerSeries::variable(n);
  const PowerSeries residual = s - 1 - z * s * s * s;
  if (residual.valuation())
    throw Error(ErrorCode::kVerification, "T - 1 - zT^3 does not vanish at z^" + std::to_string(*residual.valuation()));
  return s;
}

PowerSeries series_Tprime(std::size_t n) {
  const Base b = base(n + 1);
  const PowerSeries closed = cut(b.tp, n);
  const PowerSeries formal = cut(b.t.derivative(), n);
  if (const auto k = first_mismatch(closed, formal))
    throw Error(ErrorCode::kVerification, "T' closed form differs from d/dz T at z^" + std::to_string(*k));
  return closed;
}

PowerSeries series_H(std::size_t n) {
  const Base b = base(n);
  return cut(gf::h(b.z, b.t), n);
}

PowerSeries series_D(unsigned i, std::size_t n) {
  if (i == 0) throw Error(ErrorCode::kInvalidArgument, "distance index must be at least 1");
  const Base b = base(n);
  if (i == 1) return cut(gf::d1(b.z, b.t), n);
  const PowerSeries hv = gf::h(b.z, b.t);
  PowerSeries d = gf::d2(b.z, b.t, hv);
  for (unsigned k = 2; k < i; ++k) d *= hv;
  return cut(d, n);
}

PowerSeries series_D_total(std::size_t n) {
  const Base b = base(n);
  const PowerSeries hv = gf::h(b.z, b.t);
  const PowerSeries d2 = gf::d2(b.z, b.t, hv);
  const PowerSeries inv = (1 - hv).reciprocal();
  return cut(gf::d1(b.z, b.t) + d2 * (2 * inv + hv * inv * inv), n);
}

std::array<PowerSeries, 3> series_Delta_all(std::size_t n, DeltaMethod method) {
  const Base b = base(n);
  std::array<PowerSeries, 3> r =
      method == DeltaMethod::kClosedForm ? gf::delta_closed(b.z, b.t) : solve_delta_system(b, false);
  for (auto& s : r) s = cut(s, n);
  return r;
}

PowerSeries series_Delta(unsigned i, std::size_t n, DeltaMethod method) {
  if (i < 1 || i > 3) throw Error(ErrorCode::kInvalidArgument, "Delta index must be 1, 2 or 3");
  return series_Delta_all(n, method)[i - 1];
}

PowerSeries series_Delta(unsigned i, std::size_t n) {
  PowerSeries sys = series_Delta(i, n, DeltaMethod::kLinearSystem);
  const PowerSeries closed = series_Delta(i, n, DeltaMethod::kClosedForm);
  if (const auto k = first_mismatch(sys, closed))
    throw Error(ErrorCode::kVerification, "Delta_" + std::to_string(i) +
                                              ": linear system and closed form differ at z^" + std::to_string(*k));
  return sys;
}

std::array<PowerSeries, 3> series_Delta_printed_system(std::size_t n) {
  auto r = solve_delta_system(base(n), true);
  for (auto& s : r) s = cut(s, n);
  return r;
}

IntraSeries series_intra(std::size_t n) {
  const Base b = base(n);
  const auto delta = gf::delta_closed(b.z, b.t);
  const PowerSeries den = gf::one_minus_3zt2(b.z, b.t);
  IntraSeries r;
  r.delta_small = gf::delta_small(b.z, b.t, b.tp, delta[2]);
  r.intra = r.delta_small / den;
  r.delta_small_tilde = r.delta_small - 3;
  r.intra_tilde = r.delta_small_tilde / den;
  r.delta_small = cut(r.delta_small, n);
  r.intra = cut(r.intra, n);
  r.delta_small_tilde = cut(r.delta_small_tilde, n);
  r.intra_tilde = cut(r.intra_tilde, n);
  return r;
}

InterBounds series_inter_bounds(std::size_t n) {
  const Base b = base(n);
  const auto delta = gf::delta_closed(b.z, b.t);
  const PowerSeries den = gf::one_minus_3zt2(b.z, b.t);
  InterBounds r;
  r.gamma_minus = gf::gamma(b.z, b.t, b.tp, delta[1]);
  r.gamma_plus = gf::gamma(b.z, b.t, b.tp, delta[0]);
  r.inter_minus = cut(r.gamma_minus / den, n);
  r.inter_plus = cut(r.gamma_plus / den, n);
  r.gamma_minus = cut(r.gamma_minus, n);
  r.gamma_plus = cut(r.gamma_plus, n);
  return r;
}

PowerSeries series_E(std::size_t n, EReading reading) {
  const Base b = base(n);
  return cut(gf::e_reading(b.z, b.t, b.tp, reading), n);
}

FedgeSeries series_fedge(std::size_t n, EReading reading) {
  const Base b = base(n);
  FedgeSeries r;
  r.e = gf::e_reading(b.z, b.t, b.tp, reading);
  r.phi = gf::phi(b.z, b.t, b.tp, r.e);
  r.f = cut(r.phi / gf::one_minus_3zt2(b.z, b.t), n);
  r.e = cut(r.e, n);
  r.phi = cut(r.phi, n);
  return r;
}

PowerSeries series_G(std::size_t n, EReading reading) {
  return series_intra(n).intra_tilde + series_inter_bounds(n).inter_minus + series_fedge(n, reading).f;
}

double ratio(const mpq_class& a, const mpq_class& b) {
  if (sgn(b) == 0) throw Error(ErrorCode::kInvalidArgument, "ratio with zero denominator");
  long ea = 0, eb = 0;
  const auto split = [](const mpz_class& x, long& e) {
    return sgn(x) == 0 ? 0.0 : mpz_get_d_2exp(&e, x.get_mpz_t());
  };
  long e1, e2, e3, e4;
  const double na = split(a.get_num(), e1), da = split(a.get_den(), e2);
  const double nb = split(b.get_num(), e3), db = split(b.get_den(), e4);
  if (na == 0.0) return 0.0;
  ea = e1 - e2;
  eb = e3 - e4;
  return std::ldexp(na / da * db / nb, static_cast<int>(ea - eb));
}

long double eval_T(long double z) {
  if (z < 0 || z > 4.0L / 27.0L) throw Error(ErrorCode::kOutOfRange, "T(z) is evaluated on [0, 4/27]");
  long double t = 1;
  for (int it = 0; it < 500; ++it) {
    const long double f = z * t * t * t - t + 1;
    const long double fp = 3 * z * t * t - 1;
    if (fp >= 0) break;
    const long double next = t - f / fp;
    if (next == t) break;
    t = next;
  }
  return t;
}

AnalyticValues evaluate_at(long double z) {
  AnalyticValues v{};
  v.z = z;
  v.t = eval_T(z);
  v.tp = gf::tprime(z, v.t);
  v.h = gf::h(z, v.t);
  v.d1 = gf::d1(z, v.t);
  v.d2 = gf::d2(z, v.t, v.h);
  v.delta = gf::delta_closed(z, v.t);
  const long double den = gf::one_minus_3zt2(z, v.t);
  v.intra_tilde = (gf::delta_small(z, v.t, v.tp, v.delta[2]) - 3) / den;
  v.inter_minus = gf::gamma(z, v.t, v.tp, v.delta[1]) / den;
  v.e = gf::e_reading(z, v.t, v.tp, EReading::kInnerTerm);
  v.f = gf::phi(z, v.t, v.tp, v.e) / den;
  v.g = v.intra_tilde + v.inter_minus + v.f;
  return v;
}

}  // namespace rans
