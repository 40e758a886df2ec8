#pragma once

#include <vector>

#include "rans/verification.hpp"

// Exhaustive census of orders 0..6, built once per test binary.
inline const std::vector<rans::OrderCensus>& census_to_6() {
  static const std::vector<rans::OrderCensus> c = rans::exhaustive_census(6, 6);
  return c;
}
