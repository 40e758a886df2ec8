#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "rans/marked_series.hpp"

namespace rans {

inline constexpr std::size_t kMarkedTdCap = 8;
inline constexpr std::size_t kTopologicalCap = 6;

struct BivariateDegree {
  MarkedSeries t_zu;  // T(z,u) = 1 + u z T(z) T(z,u)^2
  MarkedSeries dg;    // z u^3 T(z,u)^3; [z^n u^k] = RANS of order n with center degree k
};

/// Coefficients with u-degree above max_u are dropped. Computed with dense
/// integer arithmetic, so orders in the tens are cheap.
BivariateDegree bivariate_degree(std::size_t n,
                                 std::uint32_t max_u = std::numeric_limits<std::uint32_t>::max());

/// T_d(z,u_1..u_d); u_j marks vertices at distance j from O_1.
///   T_1 = 1 + z u_1 T_1^2 T(z)
///   T_d = 1 + z u_1 T_d^2 (1 + z u_2 / (1 - z u_2 T_{d-1}^2(z,u_2..u_d))^3)
/// d in 1..3, n <= kMarkedTdCap.
MarkedSeries marked_Td(std::size_t d, std::size_t n);

/// Delta(z,d1,d2,d3) = 1 + z d1 d2 d3 Delta(z d1, d2, d3, d1) Delta(z, d1, d2 d3, 1)
///                       Delta(z, d1 d2, d3, 1).
/// [z^n d1^i d2^j d3^k] counts RANS of order n whose labelings sum to (i,j,k).
/// n <= kTopologicalCap.
MarkedSeries topological_gf(std::size_t n);

}  // namespace rans
