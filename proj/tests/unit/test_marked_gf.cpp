#include "census_fixture.hpp"
#include "doctest.h"
#include "rans/errors.hpp"
#include "rans/generating_functions.hpp"
#include "rans/marked_gf.hpp"

using namespace rans;

namespace {

Monomial mono(std::uint32_t a, std::uint32_t b = 0, std::uint32_t c = 0) {
  Monomial m;
  m[0] = a;
  m[1] = b;
  m[2] = c;
  return m;
}

}  // namespace

TEST_CASE("center degree series") {
  const BivariateDegree bd = bivariate_degree(12);
  CHECK(bd.dg.coeff(1, mono(3)) == 1);
  CHECK(bd.dg.coeff(2, mono(4)) == 3);
  CHECK(bd.dg.coeff(3, mono(4)) == 3);
  CHECK(bd.dg.coeff(3, mono(5)) == 9);
  CHECK(first_mismatch(bd.t_zu.at_ones(), series_T(12)) == std::nullopt);
  const PowerSeries t = series_T(12);
  for (std::size_t n = 1; n <= 12; ++n) CHECK(bd.dg.coeff(n).at_ones() == t[n]);
  for (const auto& c : census_to_6()) {
    INFO("order " << c.order);
    std::size_t terms = 0;
    for (const auto& [k, count] : c.center_degree) {
      CHECK(bd.dg.coeff(c.order, mono(k)) == count);
      ++terms;
    }
    CHECK(bd.dg.coeff(c.order).terms().size() == terms);
  }
  const BivariateDegree capped = bivariate_degree(12, 6);
  for (std::size_t n = 0; n <= 12; ++n)
    for (const auto& [m, c] : capped.dg.coeff(n).terms()) CHECK(m[0] <= 6);
}

TEST_CASE("marked distance series T_d") {
  CHECK(marked_Td(1, 8) == bivariate_degree(8).t_zu);
  const MarkedSeries t2 = marked_Td(2, 6);
  CHECK(t2.coeff(2, mono(1, 1)) == 1);
  CHECK(t2.coeff(2, mono(2)) == 2);
  CHECK(t2.coeff(3, mono(3)) == 5);
  CHECK(first_mismatch(t2.derivative_at_ones(1), series_D(2, 6)) == std::nullopt);

  const MarkedSeries t3 = marked_Td(3, 6);
  CHECK(first_mismatch(t3.at_ones(), series_T(6)) == std::nullopt);
  for (unsigned j = 1; j <= 3; ++j) CHECK(first_mismatch(t3.derivative_at_ones(j - 1), series_D(j, 6)) == std::nullopt);
  for (const auto& c : census_to_6()) {
    INFO("order " << c.order);
    mpq_class total = 0;
    for (const auto& [k, count] : c.distance_profiles) {
      CHECK(t3.coeff(c.order, mono(k[0], k[1], k[2])) == count);
      total += count;
    }
    CHECK(t3.coeff(c.order).at_ones() == total);
  }
  CHECK(marked_Td(3, 8).precision() == 8);

  CHECK_THROWS_AS(marked_Td(0, 4), Error);
  CHECK_THROWS_AS(marked_Td(4, 4), CapExceeded);
  CHECK_THROWS_AS(marked_Td(2, 9), CapExceeded);
}

TEST_CASE("topological series") {
  const MarkedSeries d = topological_gf(6);
  CHECK(d.coeff(0).at_ones() == 1);
  CHECK(d.coeff(1) == Polynomial::monomial(mono(1, 1, 1)));
  CHECK(d.coeff(2).at_ones() == 3);
  CHECK(d.derivative_at_ones(0)[3] == 46);
  for (unsigned i = 1; i <= 3; ++i)
    CHECK(first_mismatch(d.derivative_at_ones(i - 1), series_Delta(i, 6)) == std::nullopt);
  for (const auto& c : census_to_6()) {
    INFO("order " << c.order);
    std::size_t terms = 0;
    for (const auto& [k, count] : c.delta_triples) {
      CHECK(d.coeff(c.order, mono(static_cast<std::uint32_t>(k[0]), static_cast<std::uint32_t>(k[1]),
                                  static_cast<std::uint32_t>(k[2]))) == count);
      ++terms;
    }
    CHECK(d.coeff(c.order).terms().size() == terms);
  }
  CHECK_THROWS_AS(topological_gf(7), CapExceeded);
}
