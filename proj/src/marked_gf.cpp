#include "rans/marked_gf.hpp"

#include <algorithm>
#include <vector>

#include "rans/errors.hpp"
#include "rans/generating_functions.hpp"

namespace rans {

namespace {

// Dense bivariate integer series: a[n][k] = [z^n u^k].
using Dense = std::vector<std::vector<mpz_class>>;

// Product of two polynomials in u, truncated above u^max_u.
std::vector<mpz_class> row_product(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y,
                                   std::size_t max_u) {
  if (x.empty() || y.empty()) return {};
  std::vector<mpz_class> r(std::min(x.size() + y.size() - 1, max_u + 1));
  for (std::size_t i = 0; i < x.size() && i < r.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size() && i + j < r.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  return r;
}

void add_into(std::vector<mpz_class>& acc, const std::vector<mpz_class>& x) {
  if (acc.size() < x.size()) acc.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += x[i];
}

// Coefficient rows 0..n of a*b.
Dense product(const Dense& a, const Dense& b, std::size_t max_u) {
  const std::size_t len = std::min(a.size(), b.size());
  Dense r(len);
  for (std::size_t n = 0; n < len; ++n)
    for (std::size_t i = 0; i <= n; ++i) add_into(r[n], row_product(a[i], b[n - i], max_u));
  return r;
}

MarkedSeries to_marked(const Dense& a, std::size_t zshift, std::uint32_t ushift, std::size_t precision,
                       std::uint32_t max_u) {
  MarkedSeries s(1, precision);
  for (std::size_t n = 0; n < a.size() && n + zshift <= precision; ++n)
    for (std::size_t k = 0; k < a[n].size(); ++k) {
      if (sgn(a[n][k]) == 0 || k + ushift > max_u) continue;
      Monomial m;
      m[0] = static_cast<std::uint32_t>(k) + ushift;
      s[n + zshift].add_term(m, mpq_class(a[n][k]));
    }
  return s;
}

Monomial mono(std::uint32_t e0, std::uint32_t e1 = 0, std::uint32_t e2 = 0) {
  Monomial m;
  m[0] = e0;
  m[1] = e1;
  m[2] = e2;
  return m;
}

}  // namespace

BivariateDegree bivariate_degree(std::size_t n, std::uint32_t max_u) {
  const std::size_t cap = max_u;
  std::vector<mpz_class> t(n + 1);
  {
    const PowerSeries ts = series_T(n);
    for (std::size_t i = 0; i <= n; ++i) t[i] = ts[i].get_num();
  }
  // Online fixed point: row m of T(z,u) only needs rows < m of T(z,u)^2.
  Dense tzu(n + 1), sq(n + 1);
  tzu[0] = {1};
  for (std::size_t m = 0; m <= n; ++m) {
    if (m > 0) {
      std::vector<mpz_class> row;
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<mpz_class> scaled = sq[m - 1 - a];
        for (auto& x : scaled) x *= t[a];
        add_into(row, scaled);
      }
      row.insert(row.begin(), mpz_class(0));  // times u
      if (row.size() > cap + 1) row.resize(cap + 1);
      tzu[m] = std::move(row);
    }
    for (std::size_t i = 0; i <= m; ++i) add_into(sq[m], row_product(tzu[i], tzu[m - i], cap));
  }
  const Dense cube = product(sq, tzu, cap);
  return {to_marked(tzu, 0, 0, n, max_u), to_marked(cube, 1, 3, n, max_u)};
}

MarkedSeries marked_Td(std::size_t d, std::size_t n) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "marked_Td depth must be at least 1");
  if (d > 3) throw CapExceeded("marked_Td depth", d, 3);
  if (n > kMarkedTdCap) throw CapExceeded("marked_Td truncation", n, kMarkedTdCap);
  const std::size_t marks = d;
  if (d == 1) {
    const MarkedSeries t = MarkedSeries::from_series(marks, series_T(n));
    const MarkedSeries zu1 = MarkedSeries::term(marks, n, 1, mono(1));
    return solve_fixed_point(marks, n, [&](const MarkedSeries& s) {
      return MarkedSeries::constant(marks, s.precision(), 1) + zu1 * s * s * t;
    });
  }
  // Inner series in u_2..u_d.
  const MarkedSeries inner = marked_Td(d - 1, n).substitute(
      [](std::size_t, const Monomial& m) {
        Monomial r;
        for (std::size_t i = 0; i + 1 < kMaxMarks; ++i) r[i + 1] = m[i];
        return r;
      },
      marks);
  const MarkedSeries zu1 = MarkedSeries::term(marks, n, 1, mono(1));
  const MarkedSeries zu2 = MarkedSeries::term(marks, n, 1, mono(0, 1));
  const MarkedSeries one = MarkedSeries::constant(marks, n, 1);
  const MarkedSeries g = (one - zu2 * inner * inner).reciprocal();
  const MarkedSeries f = one + zu2 * g * g * g;
  return solve_fixed_point(marks, n, [&](const MarkedSeries& s) {
    return MarkedSeries::constant(marks, s.precision(), 1) + zu1 * s * s * f;
  });
}

MarkedSeries topological_gf(std::size_t n) {
  if (n > kTopologicalCap) throw CapExceeded("topological_gf truncation", n, kTopologicalCap);
  constexpr std::size_t marks = 3;
  return solve_fixed_point(marks, n, [](const MarkedSeries& s) {
    const std::size_t p = s.precision();
    const MarkedSeries a = s.substitute(
        [](std::size_t zn, const Monomial& m) { return mono(static_cast<std::uint32_t>(zn) + m[2], m[0], m[1]); },
        marks);
    const MarkedSeries b =
        s.substitute([](std::size_t, const Monomial& m) { return mono(m[0], m[1], m[1]); }, marks);
    const MarkedSeries c =
        s.substitute([](std::size_t, const Monomial& m) { return mono(m[0], m[0], m[1]); }, marks);
    return MarkedSeries::constant(marks, p, 1) + MarkedSeries::term(marks, p, 1, mono(1, 1, 1)) * a * b * c;
  });
}

}  // namespace rans
