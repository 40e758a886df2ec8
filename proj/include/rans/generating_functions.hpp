#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "rans/power_series.hpp"

namespace rans {

/// Reading of the printed closed form for the equidistant-vertex series
/// E(z) = (3zT'/(2T^2)) (zT' - R)^2, R = T(2-4T+3T^2-T^3)/((2T-3)(3T^2-4T+2)),
/// whose parenthesis is unbalanced in print.
enum class EReading {
  kWholeExpression,  // (3zT'/(2T^2)) (zT' - R)^2
  kInnerTerm,        // R alone
  kSquareOnR,        // (3zT'/(2T^2)) (zT' - R^2)
  kSquareOnBoth,     // (3zT'/(2T^2)) zT' - R^2
  kSquareOnZTp,      // (3zT'/(2T^2)) (zT'^2 - R)
  kPrefactorOnSquare,  // (3zT'/(2T^2)) (zT')^2 - R
};

inline constexpr std::array<EReading, 6> kAllEReadings{
    EReading::kWholeExpression, EReading::kInnerTerm,   EReading::kSquareOnR,
    EReading::kSquareOnBoth,    EReading::kSquareOnZTp, EReading::kPrefactorOnSquare};

std::string_view to_string(EReading r);

namespace gf {

// Closed forms as functions of z and T = T(z). R is PowerSeries for exact
// coefficients or a floating type for evaluation inside the disc.

template <class R>
R tprime(const R& z, const R& t) {
  return t * t * t / (1 - 3 * z * t * t);
}

template <class R>
R one_minus_3zt2(const R& z, const R& t) {
  return 1 - 3 * z * t * t;
}

template <class R>
R d1(const R& z, const R& t) {
  return z * t * t * t / (1 - 2 * z * t * t);
}

template <class R>
R h(const R& z, const R& t) {
  return 6 * z * z * (t - 1) * t / (1 - 3 * z - z * t - z * t * t + 2 * z * z * t * t);
}

template <class R>
R d2(const R& z, const R& t, const R& hv) {
  return hv * (1 + 2 * z * z * t * t * t * t) / (6 * z * t * (1 - 2 * z * t * t));
}

template <class R>
R q(const R& z, const R& t) {
  const R a = 1 - 3 * z * t * t;
  return (1 + 2 * z * z * t * t * t * t) * a * a;
}

template <class R>
std::array<R, 3> delta_closed(const R& z, const R& t) {
  const R qv = q(z, t);
  const R zt2 = z * t * t;
  const R zt3 = zt2 * t;
  const R s2 = zt2 * zt2;
  const R s3 = s2 * zt2;
  return {zt3 * (1 - 2 * zt2 + s2 - 6 * s3) / qv, zt3 * (1 - 3 * zt2 + 4 * s2 - 6 * s3) / qv,
          zt3 * (1 - 3 * zt2 + 2 * s2) / qv};
}

/// 3 T + 3 z T^2 Delta_3 + 3 z^2 T^2 T'.
template <class R>
R delta_small(const R& z, const R& t, const R& tp, const R& delta3) {
  return 3 * t + 3 * z * t * t * delta3 + 3 * z * z * t * t * tp;
}

template <class R>
R gamma(const R& z, const R& t, const R& tp, const R& delta_i) {
  return 6 * z * z * t * tp * delta_i;
}

template <class R>
R e_inner(const R& t) {
  return t * (2 - 4 * t + 3 * t * t - t * t * t) / ((2 * t - 3) * (3 * t * t - 4 * t + 2));
}

template <class R>
R e_reading(const R& z, const R& t, const R& tp, EReading reading) {
  const R inner = e_inner(t);
  const R ztp = z * tp;
  const R pre = 3 * ztp / (2 * t * t);
  switch (reading) {
    case EReading::kWholeExpression: {
      const R x = ztp - inner;
      return pre * x * x;
    }
    case EReading::kInnerTerm:
      return inner;
    case EReading::kSquareOnR:
      return pre * (ztp - inner * inner);
    case EReading::kSquareOnBoth:
      return pre * ztp - inner * inner;
    case EReading::kSquareOnZTp:
      return pre * (ztp * ztp - inner);
    case EReading::kPrefactorOnSquare:
      return pre * ztp * ztp - inner;
  }
  return inner;
}

/// (3/2)(z^3 T T'^2 - 2 z^2 T T' E + z T E^2).
template <class R>
R phi(const R& z, const R& t, const R& tp, const R& e) {
  return 3 * (z * z * z * t * tp * tp - 2 * z * z * t * tp * e + z * t * e * e) / 2;
}

}  // namespace gf

// ---------------------------------------------------------------------------
// Exact series. Every function returns coefficients 0..n exactly.

/// T(z) = 1 + zT^3. Iteration k of the fixed point fixes [z^k], so each step
/// computes one new coefficient from the convolution of the ones before it;
/// the defining-equation residual is checked before returning.
PowerSeries series_T(std::size_t n);

/// T'(z) from the closed form T^3/(1-3zT^2); throws Error(kVerification) if it
/// differs from the formal derivative of series_T.
PowerSeries series_Tprime(std::size_t n);

/// Vertices at distance i >= 1 from O_1: D_1, D_2 = H(1+2z^2T^4)/(6zT(1-2zT^2)),
/// D_{i+1} = H^{i-1} D_2.
PowerSeries series_D(unsigned i, std::size_t n);
PowerSeries series_H(std::size_t n);

/// Sum over all i of i D_i(z) = D_1 + D_2 (2/(1-H) + H/(1-H)^2).
PowerSeries series_D_total(std::size_t n);

enum class DeltaMethod { kLinearSystem, kClosedForm };

/// Delta_(i) for i in 1..3. kLinearSystem solves
///   D1 = zT^3 + 2zT^2 D1 + zT^2 (zT' + D3)
///   D2 = zT^3 + 2zT^2 D1 + zT^2 D2
///   D3 = zT^3 + 3zT^2 D2
/// by Gaussian elimination over series.
PowerSeries series_Delta(unsigned i, std::size_t n, DeltaMethod method);
/// Both methods; throws Error(kVerification) naming the first mismatch.
PowerSeries series_Delta(unsigned i, std::size_t n);
std::array<PowerSeries, 3> series_Delta_all(std::size_t n, DeltaMethod method);

/// The system exactly as printed: Delta_1 in place of Delta_3 in the first
/// equation and Delta_3 in place of Delta_2 in the second. Kept for reports.
std::array<PowerSeries, 3> series_Delta_printed_system(std::size_t n);

struct IntraSeries {
  PowerSeries delta_small;        // literal, constant term 3
  PowerSeries intra;              // delta_small / (1 - 3zT^2)
  PowerSeries delta_small_tilde;  // constant term removed
  PowerSeries intra_tilde;
};
IntraSeries series_intra(std::size_t n);

struct InterBounds {
  PowerSeries gamma_minus, gamma_plus, inter_minus, inter_plus;
};
InterBounds series_inter_bounds(std::size_t n);

struct FedgeSeries {
  PowerSeries e, phi, f;
};
/// E from the chosen reading, phi and F = phi/(1-3zT^2) from it.
FedgeSeries series_fedge(std::size_t n, EReading reading = EReading::kInnerTerm);
PowerSeries series_E(std::size_t n, EReading reading);

/// Intra~ + Inter^- + F.
PowerSeries series_G(std::size_t n, EReading reading = EReading::kInnerTerm);

/// Ratio a/b as a double, for mpz/mpq values far outside double range.
double ratio(const mpq_class& a, const mpq_class& b);

// ---------------------------------------------------------------------------
// Evaluation at a real point 0 <= z < 4/27 through the same closed forms.

/// Root of zT^3 - T + 1 = 0 on the branch with T(0) = 1 (Newton from T = 1).
long double eval_T(long double z);

struct AnalyticValues {
  long double z, t, tp, h, d1, d2;
  std::array<long double, 3> delta;
  long double intra_tilde, inter_minus, e, f, g;
};
AnalyticValues evaluate_at(long double z);

}  // namespace rans
