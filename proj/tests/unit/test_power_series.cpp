#include "doctest.h"
#include "rans/errors.hpp"
#include "rans/marked_series.hpp"
#include "rans/power_series.hpp"

using namespace rans;

namespace {

PowerSeries from(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return PowerSeries(v);
}

Monomial mono(std::uint32_t a, std::uint32_t b = 0, std::uint32_t c = 0) {
  Monomial m;
  m[0] = a;
  m[1] = b;
  m[2] = c;
  return m;
}

}  // namespace

TEST_CASE("power series arithmetic") {
  const PowerSeries a = from({1, 2, 3, 4});
  const PowerSeries b = from({2, -1, 0, 5});
  CHECK(a + b == from({3, 1, 3, 9}));
  CHECK(a - b == from({-1, 3, 3, -1}));
  CHECK(a * b == from({2, 3, 4, 10}));
  CHECK((a * b) / b == a);
  CHECK(a * a.reciprocal() == PowerSeries::constant(1, 3));
  CHECK(a.pow(3) == a * a * a);
  CHECK(a.derivative() == from({2, 6, 12, 0}).truncated(2));
  CHECK(a.shifted(2) == from({0, 0, 1, 2}));
  CHECK(a.evaluate(mpq_class(1, 2)) == mpq_class(1) + mpq_class(1) + mpq_class(3, 4) + mpq_class(1, 2));
  CHECK(2L * a == from({2, 4, 6, 8}));
  CHECK(1L - a == from({0, -2, -3, -4}));
  CHECK(PowerSeries::variable(2) == from({0, 1, 0}));
  CHECK((a / 2L).is_integral() == false);
  CHECK(a.is_integral());
}

TEST_CASE("precision rules") {
  const PowerSeries a = from({1, 1, 1, 1, 1});
  const PowerSeries b = from({1, 1});
  CHECK((a + b).precision() == 1);
  CHECK((a * b).precision() == 1);
  CHECK(a.truncated(2).precision() == 2);
  CHECK_THROWS_AS(a.coeff(5), Error);
  CHECK(a.coeff(4) == 1);

  // Division by a series of valuation 1 costs one order.
  const PowerSeries z2 = from({0, 0, 1, 1, 1});
  const PowerSeries zv = from({0, 1, 1, 1, 1});
  const PowerSeries q = z2 / zv;
  CHECK(q.precision() == 3);
  CHECK(q == from({0, 1, 0, 0}));
  CHECK_THROWS(from({0, 1}).reciprocal());
}

TEST_CASE("valuation and mismatch") {
  CHECK(from({0, 0, 3}).valuation() == 2);
  CHECK_FALSE(from({0, 0}).valuation().has_value());
  CHECK(first_mismatch(from({1, 2, 3}), from({1, 2, 4, 9})) == 2);
  CHECK_FALSE(first_mismatch(from({1, 2}), from({1, 2, 4})).has_value());
}

TEST_CASE("csv dump") {
  CHECK(to_csv(from({1, 2})) == "n,value\n0,1\n1,2\n");
  const std::string half = to_csv(from({1, 1}) / 2L);
  CHECK(half.find("n,numerator,denominator") == 0);
  CHECK(half.find("0,1,2") != std::string::npos);
}

TEST_CASE("polynomials in the marks") {
  Polynomial p = Polynomial::monomial(mono(1), 2);
  p += Polynomial::monomial(mono(0, 2), 3);
  CHECK(p.at_ones() == 5);
  CHECK(p.derivative_at_ones(0) == 2);
  CHECK(p.derivative_at_ones(1) == 6);
  Polynomial q = p;
  q -= p;
  CHECK(q.is_zero());
  const Polynomial sq = p * p;
  CHECK(sq.coeff(mono(2)) == 4);
  CHECK(sq.coeff(mono(1, 2)) == 12);
  CHECK(sq.coeff(mono(0, 4)) == 9);
  CHECK(sq.at_ones() == 25);
}

TEST_CASE("marked series") {
  const MarkedSeries one = MarkedSeries::constant(2, 4, 1);
  const MarkedSeries x = MarkedSeries::term(2, 4, 1, mono(1));
  const MarkedSeries inv = (one - x).reciprocal();
  for (std::size_t n = 0; n <= 4; ++n) CHECK(inv.coeff(n, mono(n)) == 1);
  CHECK(inv * (one - x) == one);
  CHECK(inv.at_ones() == PowerSeries(std::vector<mpq_class>(5, 1)));
  CHECK(inv.derivative_at_ones(0)[3] == 3);
  CHECK(inv.capped(0, 2).coeff(3).is_zero());
  CHECK(inv.truncated(2).precision() == 2);
  CHECK(inv.truncated(2).padded(4).coeff(4).is_zero());
  CHECK_THROWS_AS(inv.coeff(5), Error);

  // u_1 <- u_1 u_2
  const MarkedSeries s = inv.substitute([](std::size_t, const Monomial& m) { return mono(m[0], m[0]); }, 2);
  CHECK(s.coeff(3, mono(3, 3)) == 1);
  CHECK(to_text(x).find("1; 1,0; 1") != std::string::npos);
}

TEST_CASE("fixed point reproduces the ternary tree counts") {
  // S = 1 + z S^3 with z marked by u_1.
  const auto s = solve_fixed_point(1, 8, [](const MarkedSeries& t) {
    return MarkedSeries::constant(1, t.precision(), 1) + MarkedSeries::term(1, t.precision(), 1, mono(1)) * t * t * t;
  });
  const long expected[] = {1, 1, 3, 12, 55, 273, 1428, 7752, 43263};
  for (std::size_t n = 0; n <= 8; ++n) CHECK(s.coeff(n, mono(n)) == expected[n]);
}
