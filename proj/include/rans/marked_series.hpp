#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rans/power_series.hpp"

namespace rans {

inline constexpr std::size_t kMaxMarks = 4;

/// Exponent vector over the mark variables u_1..u_k (k <= kMaxMarks).
struct Monomial {
  std::array<std::uint32_t, kMaxMarks> exp{};

  std::uint32_t& operator[](std::size_t i) { return exp[i]; }
  std::uint32_t operator[](std::size_t i) const { return exp[i]; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(Monomial a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxMarks; ++i) a.exp[i] += b.exp[i];
    return a;
  }
};

/// Sparse polynomial in the marks, exact rational coefficients, no zero terms.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const mpq_class& c);
  static Polynomial monomial(const Monomial& m, const mpq_class& c = 1);

  const std::map<Monomial, mpq_class>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of m (0 when absent).
  mpq_class coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const mpq_class& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const mpq_class& k);

  /// Value with every mark set to 1.
  mpq_class at_ones() const;
  /// d/du_i at all marks = 1.
  mpq_class derivative_at_ones(std::size_t mark) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::map<Monomial, mpq_class> terms_;
};

/// Truncated series in z whose coefficients are polynomials in `marks` mark
/// variables.
class MarkedSeries {
 public:
  MarkedSeries(std::size_t marks, std::size_t precision);
  static MarkedSeries constant(std::size_t marks, std::size_t precision, const mpq_class& c);
  /// c * z^zpow * m.
  static MarkedSeries term(std::size_t marks, std::size_t precision, std::size_t zpow, const Monomial& m,
                           const mpq_class& c = 1);
  /// Embeds a univariate series (no marks).
  static MarkedSeries from_series(std::size_t marks, const PowerSeries& s);

  std::size_t marks() const noexcept { return marks_; }
  std::size_t precision() const noexcept { return c_.size() - 1; }

  /// Throws Error(kOutOfRange) beyond the precision.
  const Polynomial& coeff(std::size_t n) const;
  /// [z^n u^m]; throws beyond the precision.
  mpq_class coeff(std::size_t n, const Monomial& m) const;
  Polynomial& operator[](std::size_t n) { return c_[n]; }
  const Polynomial& operator[](std::size_t n) const { return c_[n]; }

  MarkedSeries truncated(std::size_t precision) const;
  /// Pads with zero coefficients up to `precision`.
  MarkedSeries padded(std::size_t precision) const;
  /// Drops every term whose exponent of `mark` exceeds max_degree.
  MarkedSeries capped(std::size_t mark, std::uint32_t max_degree) const;

  /// 1 / this; the z^0 coefficient must be a nonzero constant.
  MarkedSeries reciprocal() const;

  /// Rewrites z^n * m as z^n * f(n, m): substitutions such as z <- z*u_1 or
  /// u_2 <- u_2 u_3 are monomial maps.
  MarkedSeries substitute(const std::function<Monomial(std::size_t, const Monomial&)>& f,
                          std::size_t new_marks) const;

  /// All marks set to 1.
  PowerSeries at_ones() const;
  /// d/du_mark at all marks = 1.
  PowerSeries derivative_at_ones(std::size_t mark) const;

  MarkedSeries& operator+=(const MarkedSeries& o);
  MarkedSeries& operator-=(const MarkedSeries& o);
  MarkedSeries& operator*=(const MarkedSeries& o);
  friend MarkedSeries operator+(MarkedSeries a, const MarkedSeries& b) { return a += b; }
  friend MarkedSeries operator-(MarkedSeries a, const MarkedSeries& b) { return a -= b; }
  friend MarkedSeries operator*(MarkedSeries a, const MarkedSeries& b) { return a *= b; }

  friend bool operator==(const MarkedSeries&, const MarkedSeries&) = default;

 private:
  std::size_t marks_;
  std::vector<Polynomial> c_;
};

/// Solves S = rhs(S) for a contracting rhs (the z^k coefficient of rhs(S)
/// depends only on coefficients of S below z^k). Iteration k runs at
/// precision k, so N + 1 iterations fix every coefficient up to z^N.
MarkedSeries solve_fixed_point(std::size_t marks, std::size_t precision,
                               const std::function<MarkedSeries(const MarkedSeries&)>& rhs);

/// Lines "n; k1,k2,..; value" for every stored term.
std::string to_text(const MarkedSeries& s);

}  // namespace rans
