#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rans {

/// Truncated power series in z with exact rational coefficients c[0..N].
///
/// N is the precision: every coefficient up to z^N is known exactly and
/// nothing beyond it is ever read. Binary operations return the smaller of the
/// two precisions; division by a series of valuation v costs v orders.
class PowerSeries {
 public:
  /// Zero series known to z^precision.
  explicit PowerSeries(std::size_t precision = 0) : c_(precision + 1) {}
  explicit PowerSeries(std::vector<mpq_class> coeffs);

  static PowerSeries constant(const mpq_class& value, std::size_t precision);
  /// The series z.
  static PowerSeries variable(std::size_t precision);

  std::size_t precision() const noexcept { return c_.size() - 1; }

  /// Throws Error(kOutOfRange) beyond the precision.
  const mpq_class& coeff(std::size_t n) const;
  const mpq_class& operator[](std::size_t n) const { return c_[n]; }
  mpq_class& operator[](std::size_t n) { return c_[n]; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  /// Index of the first nonzero coefficient; nullopt for the zero series.
  std::optional<std::size_t> valuation() const;
  bool is_integral() const;

  PowerSeries truncated(std::size_t precision) const;
  /// z^k * this, keeping the precision.
  PowerSeries shifted(std::size_t k) const;
  PowerSeries derivative() const;
  /// Requires an invertible constant term.
  PowerSeries reciprocal() const;
  PowerSeries pow(unsigned k) const;

  /// Exact value of the truncated sum at a rational point (Horner).
  mpq_class evaluate(const mpq_class& z) const;

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries& operator*=(const PowerSeries& o);
  PowerSeries& operator/=(const PowerSeries& o);
  PowerSeries& operator*=(const mpq_class& k);
  PowerSeries& operator/=(const mpq_class& k);

  friend PowerSeries operator-(PowerSeries a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r = a;
    return r *= b;
  }
  friend PowerSeries operator/(PowerSeries a, const PowerSeries& b) { return a /= b; }

  // Integer scalars let the closed-form templates in generating_functions.hpp
  // read the same for series and for floating-point evaluation.
  friend PowerSeries operator*(long k, PowerSeries a) { return a *= mpq_class(k); }
  friend PowerSeries operator*(PowerSeries a, long k) { return a *= mpq_class(k); }
  friend PowerSeries operator/(PowerSeries a, long k) { return a /= mpq_class(k); }
  friend PowerSeries operator+(PowerSeries a, long k) {
    a.c_[0] += k;
    return a;
  }
  friend PowerSeries operator+(long k, PowerSeries a) { return std::move(a) + k; }
  friend PowerSeries operator-(PowerSeries a, long k) { return std::move(a) + (-k); }
  friend PowerSeries operator-(long k, PowerSeries a) { return -std::move(a) + k; }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<mpq_class> c_;
};

/// First index where the two agree no more, comparing up to the smaller
/// precision; nullopt when they agree.
std::optional<std::size_t> first_mismatch(const PowerSeries& a, const PowerSeries& b);

/// "n,value" lines for integral series, "n,numerator,denominator" otherwise,
/// with a header row.
std::string to_csv(const PowerSeries& s);

}  // namespace rans
