#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rans/ternary_tree.hpp"

namespace rans {

using VertexId = std::uint32_t;

enum class VertexRole : std::uint8_t { kOutermost, kInternal };

/// The triangulation encoded by a ternary tree.
///
/// Vertices 0, 1, 2 are the outermost O1, O2, O3. The center of the sub-RANS
/// rooted at tree node i (preorder) is vertex 3 + i, so the internal vertices
/// of that sub-RANS are the contiguous range [3 + i, 3 + i + size).
/// Sub-RANS S_k (child slot k) is the one not containing corner k; its corner
/// k is the parent's center.
class RansGraph {
 public:
  static constexpr VertexId kO1 = 0;
  static constexpr VertexId kO2 = 1;
  static constexpr VertexId kO3 = 2;

  struct SubRans {
    std::array<VertexId, 3> corners;
    std::int32_t parent;  // -1 for the root
    std::uint8_t slot;    // child slot in the parent
    std::uint32_t size;   // number of internal vertices
  };

  explicit RansGraph(const TernaryTree& tree);

  std::size_t order() const noexcept { return subs_.size(); }
  std::size_t vertex_count() const noexcept { return order() + 3; }
  std::size_t edge_count() const noexcept { return adj_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  VertexRole role(VertexId v) const { return v < 3 ? VertexRole::kOutermost : VertexRole::kInternal; }
  bool contains(VertexId v) const noexcept { return v < vertex_count(); }

  /// Root center; absent for the empty RANS.
  std::optional<VertexId> center() const {
    return subs_.empty() ? std::nullopt : std::optional<VertexId>(3);
  }

  /// Sub-RANS whose center is `node + 3`.
  const SubRans& sub_rans(std::size_t node) const { return subs_.at(node); }
  std::size_t node_of(VertexId internal) const { return internal - 3; }
  VertexId center_of(std::size_t node) const { return static_cast<VertexId>(node + 3); }
  /// True iff v is an internal vertex of the sub-RANS rooted at `node`.
  bool internal_to(VertexId v, std::size_t node) const {
    return v >= 3 + node && v < 3 + node + subs_[node].size;
  }

  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// {"order", "edges", "outermost", "center"}; center is null when empty.
  std::string to_json() const;

 private:
  std::vector<SubRans> subs_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adj_;
};

inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

std::vector<std::uint32_t> bfs_distances(const RansGraph& g, VertexId source);

/// Distance to the nearest vertex of `sources`.
std::vector<std::uint32_t> bfs_distances(const RansGraph& g, std::span<const VertexId> sources);

/// Row-major (n+3)x(n+3) distance table from n+3 BFS runs.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const RansGraph& g);
  std::uint32_t operator()(VertexId a, VertexId b) const { return d_[a * size_ + b]; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
  std::vector<std::uint32_t> d_;
};

/// Outermost labels at the start of each labeling: variant 1 (0,1,1),
/// variant 2 (0,0,1), variant 3 (0,0,0).
enum class LabelVariant : int { kOne = 1, kTwo = 2, kThree = 3 };

/// Throws Error(kInvalidArgument) unless v is 1, 2 or 3.
LabelVariant label_variant(int v);

/// Labels for every vertex: outermost seeds as above, then each center gets
/// 1 + min of its triangle's labels, in insertion order.
std::vector<std::uint32_t> delta_labeling(const RansGraph& g, LabelVariant variant);

/// Sum of delta labels over internal vertices.
std::uint64_t delta_sum(const RansGraph& g, LabelVariant variant);

struct DistanceProfile {
  VertexId source;
  std::size_t order;
  /// count[i] = number of internal vertices other than the source at distance i.
  std::vector<std::uint64_t> count;

  double mean() const;
  /// (i / sqrt(n), count[i] * sqrt(n) / n) for i >= 1.
  std::vector<std::pair<double, double>> normalized() const;
};

DistanceProfile distance_profile(const RansGraph& g, VertexId source);

struct DegreeStats {
  std::map<std::size_t, std::uint64_t> histogram;  // over all vertices
  std::optional<std::size_t> center_degree;        // absent for the empty RANS
};

DegreeStats degree_stats(const RansGraph& g);

/// Degree histogram restricted to internal vertices.
std::map<std::size_t, std::uint64_t> internal_degree_histogram(const RansGraph& g);

/// Internal vertices with d(v, O1) == d(v, O2).
std::uint64_t equidistant_count(const RansGraph& g);

struct PairClass {
  enum class Kind { kOutermostPair, kIntra, kInterNoFedge, kInterFedge };
  Kind kind;
  /// Inter pairs only: the smallest sub-RANS containing both endpoints as
  /// internal vertices, and the shared corners of its two children that hold
  /// the endpoints.
  std::optional<std::size_t> common_sub_rans;
  std::array<VertexId, 2> frontier{};

  bool is_inter() const { return kind == Kind::kInterNoFedge || kind == Kind::kInterFedge; }
};

PairClass classify_pair(const RansGraph& g, VertexId v, VertexId w);
PairClass classify_pair(const RansGraph& g, VertexId v, VertexId w, const DistanceMatrix& d);

struct DistanceCensus {
  std::uint64_t pair_count = 0;  // |C(R)|
  std::uint64_t intra_pairs = 0;
  std::uint64_t inter_pairs = 0;
  std::uint64_t intra_total = 0;
  std::uint64_t inter_total = 0;
  /// Sum over inter pairs of d(v, frontier) + d(w, frontier).
  std::uint64_t inter_lower_bound = 0;
  std::uint64_t fedge_count = 0;
  std::uint64_t grand_total = 0;
  /// Inter pairs whose distance is below the frontier decomposition
  /// (lower bound + f-edge) and the summed shortfall. A shortest path can leave
  /// S_v through its third corner and reach S_w along the outer edge of the
  /// enclosing triangle without touching the frontier.
  std::uint64_t shortcut_pairs = 0;
  std::uint64_t decomposition_defect = 0;

  DistanceCensus& operator+=(const DistanceCensus& o);
};

DistanceCensus total_distance_census(const RansGraph& g);

/// Sum of d(u, v) over all unordered vertex pairs, by 64-source bit-parallel BFS.
std::uint64_t all_pairs_distance_sum(const RansGraph& g);

/// grand_total / |C(R)| computed from all_pairs_distance_sum.
double mean_pairwise_distance(const RansGraph& g);

}  // namespace rans
