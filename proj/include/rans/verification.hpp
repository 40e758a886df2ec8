#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rans/generating_functions.hpp"
#include "rans/rans_graph.hpp"

namespace rans {

/// Exhaustive statistics summed over every RANS of one order.
struct OrderCensus {
  std::size_t order = 0;
  std::uint64_t structures = 0;
  /// distance_counts[i]: internal vertices at distance i from O1.
  std::vector<std::uint64_t> distance_counts;
  std::array<std::uint64_t, 3> delta{};
  std::uint64_t equidistant = 0;
  DistanceCensus pairs;
  std::map<std::size_t, std::uint64_t> center_degree;
  /// (#internal at distance 1, 2, 3 from O1) -> number of structures.
  std::map<std::array<std::uint32_t, 3>, std::uint64_t> distance_profiles;
  /// (Delta_1, Delta_2, Delta_3) -> number of structures.
  std::map<std::array<std::uint64_t, 3>, std::uint64_t> delta_triples;

  // Structural invariants; each counts failing structures.
  std::uint64_t edge_count_failures = 0;
  std::uint64_t pair_count_failures = 0;
  std::uint64_t labeling_failures = 0;
  std::uint64_t clique_bound_failures = 0;
};

OrderCensus census_for_order(std::size_t n, std::size_t cap = kDefaultEnumerationCap);
std::vector<OrderCensus> exhaustive_census(std::size_t max_order, std::size_t cap = kDefaultEnumerationCap);

struct IdentityResult {
  std::string name;
  bool pass = false;
  /// Informational rows are reported but never fail the run.
  bool informational = false;
  std::optional<std::size_t> first_mismatch;
  std::string detail;
};

struct VerifyOptions {
  std::size_t max_order = 6;
  std::size_t cap = 6;
  /// Test hook: add 1 to the series side of the named identity.
  std::optional<std::string> corrupt;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<IdentityResult> results;
  EReading e_reading = EReading::kInnerTerm;
  bool e_validated = false;

  bool passed() const;
  const IdentityResult* find(const std::string& name) const;
  std::string to_text() const;
  std::string to_json() const;
};

/// Every oracle-vs-series identity for orders 0..max_order. Throws
/// CapExceeded if max_order exceeds cap.
VerifyReport run_verification(const VerifyOptions& options);
/// Same, reusing an existing census (census[n].order == n).
VerifyReport run_verification(const VerifyOptions& options, const std::vector<OrderCensus>& census);

}  // namespace rans
