#include "census_fixture.hpp"
#include "doctest.h"
#include "rans/errors.hpp"
#include "rans/verification.hpp"

using namespace rans;

TEST_CASE("census of small orders") {
  const auto& c = census_to_6();
  REQUIRE(c.size() == 7);
  CHECK(c[0].structures == 1);
  CHECK(c[2].structures == 3);
  CHECK(c[6].structures == 1428);
  CHECK(c[2].delta == std::array<std::uint64_t, 3>{7, 6, 6});
  CHECK(c[2].equidistant == 4);
  CHECK(c[2].pairs.grand_total == 24);
  CHECK(c[0].pairs.grand_total == 0);
  for (const auto& o : c) {
    CHECK(o.edge_count_failures == 0);
    CHECK(o.pair_count_failures == 0);
    CHECK(o.labeling_failures == 0);
    CHECK(o.clique_bound_failures == 0);
  }
}

TEST_CASE("verification passes up to order 2 and 6") {
  const VerifyReport r2 = run_verification({2, 6, std::nullopt});
  CHECK(r2.passed());
  const VerifyReport r6 = run_verification({6, 6, std::nullopt}, census_to_6());
  CHECK(r6.passed());
  CHECK(r6.e_validated);
  CHECK(r6.e_reading == EReading::kInnerTerm);
  for (const char* name : {"T", "D1", "D2", "D3", "Delta1", "Delta2", "Delta3", "E", "Intra", "InterLowerBound", "F",
                           "G", "Dg", "T3", "Delta(z,d1,d2,d3)", "frontier-decomposition"}) {
    INFO(name);
    const IdentityResult* row = r6.find(name);
    REQUIRE(row != nullptr);
    CHECK(row->pass);
    CHECK_FALSE(row->informational);
  }
  const IdentityResult* printed = r6.find("Delta1-printed-system");
  REQUIRE(printed != nullptr);
  CHECK(printed->informational);
  CHECK(printed->first_mismatch == 3);
  CHECK(r6.to_json().find("\"passed\": true") != std::string::npos);
  CHECK(r6.to_text().find("verification passed") != std::string::npos);
}

TEST_CASE("corrupted identity fails and is named") {
  const VerifyReport r = run_verification({6, 6, std::string("D1")}, census_to_6());
  CHECK_FALSE(r.passed());
  const IdentityResult* row = r.find("D1");
  REQUIRE(row != nullptr);
  CHECK_FALSE(row->pass);
  REQUIRE(row->first_mismatch.has_value());
  CHECK(r.to_text().find("FAIL D1") != std::string::npos);
  for (const auto& x : r.results)
    if (x.name != "D1" && !x.informational) CHECK(x.pass);
}

TEST_CASE("verification respects the cap") {
  CHECK_THROWS_AS(run_verification({7, 6, std::nullopt}), CapExceeded);
}
