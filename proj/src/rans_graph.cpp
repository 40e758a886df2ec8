#include "rans/rans_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

#include "rans/errors.hpp"

namespace rans {

RansGraph::RansGraph(const TernaryTree& tree) {
  const auto& nodes = tree.nodes();
  const auto sizes = tree.subtree_orders();
  subs_.resize(nodes.size());
  if (!nodes.empty()) subs_[0] = SubRans{{kO1, kO2, kO3}, -1, 0, sizes[0]};
  // Preorder guarantees parents are filled before their children.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto c = nodes[i].child[k];
      if (c == TernaryTree::kLeaf) continue;
      auto corners = subs_[i].corners;
      corners[k] = center_of(i);
      subs_[static_cast<std::size_t>(c)] =
          SubRans{corners, static_cast<std::int32_t>(i), static_cast<std::uint8_t>(k),
                  sizes[static_cast<std::size_t>(c)]};
    }
  }

  std::vector<std::pair<VertexId, VertexId>> list{{kO1, kO2}, {kO2, kO3}, {kO1, kO3}};
  list.reserve(3 + 3 * subs_.size());
  for (std::size_t i = 0; i < subs_.size(); ++i)
    for (VertexId c : subs_[i].corners) list.emplace_back(c, center_of(i));

  offsets_.assign(vertex_count() + 1, 0);
  for (auto [a, b] : list) {
    ++offsets_[a + 1];
    ++offsets_[b + 1];
  }
  for (std::size_t v = 0; v < vertex_count(); ++v) offsets_[v + 1] += offsets_[v];
  adj_.resize(2 * list.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [a, b] : list) {
    adj_[fill[a]++] = b;
    adj_[fill[b]++] = a;
  }
}

std::vector<std::pair<VertexId, VertexId>> RansGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count());
  for (VertexId v = 0; v < vertex_count(); ++v)
    for (VertexId w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::string RansGraph::to_json() const {
  nlohmann::json j;
  j["order"] = order();
  auto& e = j["edges"] = nlohmann::json::array();
  for (auto [a, b] : edges()) e.push_back({a, b});
  j["outermost"] = {kO1, kO2, kO3};
  j["center"] = center() ? nlohmann::json(*center()) : nlohmann::json(nullptr);
  return j.dump();
}

std::vector<std::uint32_t> bfs_distances(const RansGraph& g, std::span<const VertexId> sources) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  for (VertexId s : sources) {
    if (!g.contains(s)) throw Error(ErrorCode::kOutOfRange, "bfs: source not in graph");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (VertexId w : g.neighbors(u))
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

std::vector<std::uint32_t> bfs_distances(const RansGraph& g, VertexId source) {
  return bfs_distances(g, std::span<const VertexId>(&source, 1));
}

DistanceMatrix::DistanceMatrix(const RansGraph& g) : size_(g.vertex_count()), d_(size_ * size_) {
  for (VertexId s = 0; s < size_; ++s) {
    const auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * size_));
  }
}

LabelVariant label_variant(int v) {
  if (v < 1 || v > 3)
    throw Error(ErrorCode::kInvalidArgument, "label variant must be 1, 2 or 3, got " + std::to_string(v));
  return static_cast<LabelVariant>(v);
}

std::vector<std::uint32_t> delta_labeling(const RansGraph& g, LabelVariant variant) {
  std::vector<std::uint32_t> label(g.vertex_count(), 0);
  switch (variant) {
    case LabelVariant::kOne: label[1] = label[2] = 1; break;
    case LabelVariant::kTwo: label[2] = 1; break;
    case LabelVariant::kThree: break;
    default: throw Error(ErrorCode::kInvalidArgument, "invalid label variant");
  }
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto& c = g.sub_rans(i).corners;
    label[g.center_of(i)] = 1 + std::min({label[c[0]], label[c[1]], label[c[2]]});
  }
  return label;
}

std::uint64_t delta_sum(const RansGraph& g, LabelVariant variant) {
  const auto label = delta_labeling(g, variant);
  std::uint64_t s = 0;
  for (std::size_t v = 3; v < label.size(); ++v) s += label[v];
  return s;
}

double DistanceProfile::mean() const {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < count.size(); ++i) {
    num += static_cast<double>(i) * static_cast<double>(count[i]);
    den += static_cast<double>(count[i]);
  }
  return den > 0 ? num / den : 0.0;
}

std::vector<std::pair<double, double>> DistanceProfile::normalized() const {
  std::vector<std::pair<double, double>> out;
  if (order == 0) return out;
  const double root = std::sqrt(static_cast<double>(order));
  for (std::size_t i = 1; i < count.size(); ++i)
    out.emplace_back(static_cast<double>(i) / root,
                     static_cast<double>(count[i]) * root / static_cast<double>(order));
  return out;
}

DistanceProfile distance_profile(const RansGraph& g, VertexId source) {
  const auto dist = bfs_distances(g, source);
  DistanceProfile p{source, g.order(), {}};
  for (VertexId v = 3; v < g.vertex_count(); ++v) {
    if (v == source) continue;
    if (dist[v] >= p.count.size()) p.count.resize(dist[v] + 1, 0);
    ++p.count[dist[v]];
  }
  return p;
}

DegreeStats degree_stats(const RansGraph& g) {
  DegreeStats s;
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++s.histogram[g.degree(v)];
  if (auto c = g.center()) s.center_degree = g.degree(*c);
  return s;
}

std::map<std::size_t, std::uint64_t> internal_degree_histogram(const RansGraph& g) {
  std::map<std::size_t, std::uint64_t> h;
  for (VertexId v = 3; v < g.vertex_count(); ++v) ++h[g.degree(v)];
  return h;
}

std::uint64_t equidistant_count(const RansGraph& g) {
  const auto d1 = bfs_distances(g, RansGraph::kO1);
  const auto d2 = bfs_distances(g, RansGraph::kO2);
  std::uint64_t count = 0;
  for (VertexId v = 3; v < g.vertex_count(); ++v) count += (d1[v] == d2[v]);
  return count;
}

namespace {

bool is_corner(const RansGraph::SubRans& s, VertexId x) {
  return s.corners[0] == x || s.corners[1] == x || s.corners[2] == x;
}

/// Some sub-RANS has x as a corner and y as an internal vertex.
bool outer_inner(const RansGraph& g, VertexId x, VertexId y) {
  if (y < 3) return false;
  for (auto node = static_cast<std::int32_t>(g.node_of(y)); node >= 0;
       node = g.sub_rans(static_cast<std::size_t>(node)).parent)
    if (is_corner(g.sub_rans(static_cast<std::size_t>(node)), x)) return true;
  return false;
}

struct InterSplit {
  std::size_t common;
  std::array<VertexId, 2> frontier;
};

InterSplit split_inter(const RansGraph& g, VertexId v, VertexId w) {
  std::vector<std::size_t> chain;  // v's node and its ancestors
  for (auto n = static_cast<std::int32_t>(g.node_of(v)); n >= 0; n = g.sub_rans(static_cast<std::size_t>(n)).parent)
    chain.push_back(static_cast<std::size_t>(n));
  std::size_t below_w = g.node_of(w);
  std::size_t lca = below_w;
  for (;;) {
    if (std::find(chain.begin(), chain.end(), lca) != chain.end()) break;
    below_w = lca;
    lca = static_cast<std::size_t>(g.sub_rans(lca).parent);
  }
  const auto pos = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), lca) - chain.begin());
  if (pos == 0 || below_w == lca) throw Error(ErrorCode::kInvalidArgument, "split_inter: pair is not inter");
  const std::size_t below_v = chain[pos - 1];
  const auto& cv = g.sub_rans(below_v).corners;
  const auto& cw = g.sub_rans(below_w);
  InterSplit s{lca, {}};
  std::size_t k = 0;
  for (VertexId x : cv)
    if (is_corner(cw, x)) s.frontier[k++] = x;
  return s;
}

template <class Dist>
PairClass classify_with(const RansGraph& g, VertexId v, VertexId w, Dist&& dist) {
  if (!g.contains(v) || !g.contains(w)) throw Error(ErrorCode::kOutOfRange, "classify_pair: vertex not in graph");
  if (v == w) throw Error(ErrorCode::kInvalidArgument, "classify_pair: v == w");
  if (v < 3 && w < 3) return {PairClass::Kind::kOutermostPair, std::nullopt, {}};
  if (outer_inner(g, v, w) || outer_inner(g, w, v)) return {PairClass::Kind::kIntra, std::nullopt, {}};
  const auto s = split_inter(g, v, w);
  const auto [f1, f2] = s.frontier;
  const auto v1 = dist(v, f1), v2 = dist(v, f2), w1 = dist(w, f1), w2 = dist(w, f2);
  const bool fedge = v1 != v2 && w1 != w2 && ((v1 < v2) != (w1 < w2));
  return {fedge ? PairClass::Kind::kInterFedge : PairClass::Kind::kInterNoFedge, s.common, s.frontier};
}

}  // namespace

PairClass classify_pair(const RansGraph& g, VertexId v, VertexId w, const DistanceMatrix& d) {
  return classify_with(g, v, w, [&](VertexId a, VertexId b) { return d(a, b); });
}

PairClass classify_pair(const RansGraph& g, VertexId v, VertexId w) {
  if (!g.contains(v) || !g.contains(w)) throw Error(ErrorCode::kOutOfRange, "classify_pair: vertex not in graph");
  const auto dv = bfs_distances(g, v);
  const auto dw = bfs_distances(g, w);
  return classify_with(g, v, w, [&](VertexId a, VertexId b) { return a == v ? dv[b] : dw[b]; });
}

DistanceCensus& DistanceCensus::operator+=(const DistanceCensus& o) {
  pair_count += o.pair_count;
  intra_pairs += o.intra_pairs;
  inter_pairs += o.inter_pairs;
  intra_total += o.intra_total;
  inter_total += o.inter_total;
  inter_lower_bound += o.inter_lower_bound;
  fedge_count += o.fedge_count;
  grand_total += o.grand_total;
  shortcut_pairs += o.shortcut_pairs;
  decomposition_defect += o.decomposition_defect;
  return *this;
}

DistanceCensus total_distance_census(const RansGraph& g) {
  const DistanceMatrix d(g);
  DistanceCensus c;
  const auto nv = static_cast<VertexId>(g.vertex_count());
  for (VertexId v = 0; v < nv; ++v)
    for (VertexId w = std::max<VertexId>(v + 1, 3); w < nv; ++w) {
      const auto pc = classify_pair(g, v, w, d);
      const std::uint64_t dist = d(v, w);
      ++c.pair_count;
      c.grand_total += dist;
      if (pc.kind == PairClass::Kind::kIntra) {
        ++c.intra_pairs;
        c.intra_total += dist;
        continue;
      }
      const auto [f1, f2] = pc.frontier;
      const std::uint64_t lb = std::min(d(v, f1), d(v, f2)) + std::min(d(w, f1), d(w, f2));
      const std::uint64_t fe = pc.kind == PairClass::Kind::kInterFedge ? 1 : 0;
      ++c.inter_pairs;
      c.inter_total += dist;
      c.inter_lower_bound += lb;
      c.fedge_count += fe;
      if (dist < lb + fe) {
        ++c.shortcut_pairs;
        c.decomposition_defect += lb + fe - dist;
      }
    }
  return c;
}

std::uint64_t all_pairs_distance_sum(const RansGraph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::uint64_t> visited(nv), frontier(nv), next(nv);
  std::uint64_t ordered_sum = 0;
  for (std::size_t base = 0; base < nv; base += 64) {
    const std::size_t batch = std::min<std::size_t>(64, nv - base);
    const std::uint64_t full = batch == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << batch) - 1);
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    for (std::size_t j = 0; j < batch; ++j) visited[base + j] = frontier[base + j] = std::uint64_t{1} << j;
    for (std::uint64_t level = 1;; ++level) {
      bool any = false;
      for (VertexId v = 0; v < nv; ++v) {
        if (visited[v] == full) {
          next[v] = 0;
          continue;
        }
        std::uint64_t reach = 0;
        for (VertexId u : g.neighbors(v)) reach |= frontier[u];
        reach &= ~visited[v];
        next[v] = reach;
        if (reach) {
          any = true;
          ordered_sum += level * static_cast<std::uint64_t>(std::popcount(reach));
        }
      }
      if (!any) break;
      for (std::size_t v = 0; v < nv; ++v) visited[v] |= next[v];
      frontier.swap(next);
    }
  }
  return ordered_sum / 2;
}

double mean_pairwise_distance(const RansGraph& g) {
  const auto n = static_cast<std::uint64_t>(g.order());
  if (n == 0) return 0.0;
  const std::uint64_t pairs = n * (n - 1) / 2 + 3 * n;
  // The three outermost pairs (distance 1 each) are not in C(R).
  return static_cast<double>(all_pairs_distance_sum(g) - 3) / static_cast<double>(pairs);
}

}  // namespace rans
