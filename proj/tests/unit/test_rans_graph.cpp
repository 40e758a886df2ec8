#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "doctest.h"
#include "rans/errors.hpp"
#include "rans/random.hpp"
#include "rans/rans_graph.hpp"

using namespace rans;

namespace {

constexpr std::uint32_t kInf = 1u << 30;

// Floyd-Warshall over the exported edge list.
std::vector<std::vector<std::uint32_t>> floyd(const RansGraph& g) {
  const std::size_t m = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> d(m, std::vector<std::uint32_t>(m, kInf));
  for (std::size_t v = 0; v < m; ++v) d[v][v] = 0;
  for (auto [a, b] : g.edges()) d[a][b] = d[b][a] = 1;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Intra iff one endpoint is a corner of a sub-RANS holding the other as internal.
bool brute_intra(const RansGraph& g, VertexId v, VertexId w) {
  for (std::size_t s = 0; s < g.order(); ++s) {
    const auto& c = g.sub_rans(s).corners;
    const bool v_corner = std::find(c.begin(), c.end(), v) != c.end();
    const bool w_corner = std::find(c.begin(), c.end(), w) != c.end();
    if ((v_corner && g.internal_to(w, s)) || (w_corner && g.internal_to(v, s))) return true;
  }
  return false;
}

std::vector<RansGraph> graphs_of_order(std::size_t n) {
  std::vector<RansGraph> out;
  for (const auto& t : all_trees(n)) out.emplace_back(t);
  return out;
}

}  // namespace

TEST_CASE("empty structure and K4") {
  const RansGraph k3(TernaryTree{});
  CHECK(k3.order() == 0);
  CHECK(k3.edge_count() == 3);
  CHECK_FALSE(k3.center().has_value());
  CHECK_FALSE(degree_stats(k3).center_degree.has_value());
  CHECK(distance_profile(k3, RansGraph::kO1).count.empty());

  const RansGraph k4(decode_tree("NLLL"));
  CHECK(k4.order() == 1);
  CHECK(k4.edge_count() == 6);
  CHECK(bfs_distances(k4, RansGraph::kO1) == std::vector<std::uint32_t>{0, 1, 1, 1});
  CHECK(delta_labeling(k4, LabelVariant::kOne)[3] == 1);
  CHECK(delta_labeling(k4, LabelVariant::kThree)[3] == 1);
  CHECK(delta_sum(k4, LabelVariant::kOne) == 1);
  CHECK(delta_sum(k4, LabelVariant::kThree) == 1);
  CHECK(distance_profile(k4, RansGraph::kO1).count == std::vector<std::uint64_t>{0, 1});
  CHECK(degree_stats(k4).center_degree == 3);
  CHECK(equidistant_count(k4) == 1);
  CHECK(classify_pair(k4, RansGraph::kO1, RansGraph::kO2).kind == PairClass::Kind::kOutermostPair);
  CHECK(classify_pair(k4, RansGraph::kO1, 3).kind == PairClass::Kind::kIntra);
  CHECK(total_distance_census(k4).grand_total == 3);
  CHECK(label_variant(2) == LabelVariant::kTwo);
  CHECK_THROWS_AS(label_variant(4), Error);
}

TEST_CASE("order-2 structure with the second vertex in S1") {
  const RansGraph g(decode_tree("NNLLLLL"));
  const auto d = bfs_distances(g, RansGraph::kO1);
  CHECK(d[3] == 1);
  CHECK(d[4] == 2);
  CHECK(delta_sum(g, LabelVariant::kOne) == 3);
  CHECK(classify_pair(g, 3, 4).kind == PairClass::Kind::kIntra);
  CHECK(g.internal_to(4, 1));
  CHECK_FALSE(g.internal_to(3, 1));
}

TEST_CASE("order-2 sums over all structures") {
  std::uint64_t d1 = 0, d2 = 0, d3 = 0, c1 = 0, c2 = 0, eq = 0, grand = 0;
  for (const auto& g : graphs_of_order(2)) {
    d1 += delta_sum(g, LabelVariant::kOne);
    d2 += delta_sum(g, LabelVariant::kTwo);
    d3 += delta_sum(g, LabelVariant::kThree);
    const auto p = distance_profile(g, RansGraph::kO1);
    c1 += p.count.size() > 1 ? p.count[1] : 0;
    c2 += p.count.size() > 2 ? p.count[2] : 0;
    eq += equidistant_count(g);
    grand += total_distance_census(g).grand_total;
    CHECK(degree_stats(g).center_degree == 4);
  }
  CHECK(d1 == 7);
  CHECK(d2 == 6);
  CHECK(d3 == 6);
  CHECK(c1 == 5);
  CHECK(c2 == 1);
  CHECK(eq == 4);
  CHECK(grand == 24);
}

TEST_CASE("order-3 sums") {
  std::uint64_t d1 = 0, c1 = 0, c2 = 0;
  for (const auto& g : graphs_of_order(3)) {
    d1 += delta_sum(g, LabelVariant::kOne);
    const auto p = distance_profile(g, RansGraph::kO1);
    c1 += p.count.size() > 1 ? p.count[1] : 0;
    c2 += p.count.size() > 2 ? p.count[2] : 0;
  }
  CHECK(d1 == 46);
  CHECK(c1 == 26);
  CHECK(c2 == 10);
}

TEST_CASE("structural invariants on every structure up to order 6") {
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& g : graphs_of_order(n)) {
      CHECK(g.edge_count() == 3 + 3 * n);
      const auto fw = floyd(g);
      for (std::size_t v = 0; v < g.vertex_count(); ++v) REQUIRE(fw[0][v] < kInf);
      CHECK(fw[0][1] == 1);
      CHECK(fw[0][2] == 1);
      CHECK(fw[1][2] == 1);

      const DistanceMatrix dm(g);
      std::uint64_t all_pairs = 0;
      for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (VertexId b = 0; b < g.vertex_count(); ++b) {
          REQUIRE(dm(a, b) == fw[a][b]);
          if (a < b) all_pairs += fw[a][b];
        }
      CHECK(all_pairs_distance_sum(g) == all_pairs);

      const auto lab1 = delta_labeling(g, LabelVariant::kOne);
      const auto lab2 = delta_labeling(g, LabelVariant::kTwo);
      const auto lab3 = delta_labeling(g, LabelVariant::kThree);
      for (VertexId v = 3; v < g.vertex_count(); ++v) {
        CHECK(lab1[v] == fw[0][v]);
        CHECK(lab2[v] == std::min(fw[0][v], fw[1][v]));
        CHECK(lab3[v] == std::min({fw[0][v], fw[1][v], fw[2][v]}));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) CHECK(std::abs(int(fw[i][v]) - int(fw[j][v])) <= 1);
      }

      const auto census = total_distance_census(g);
      CHECK(census.pair_count == n * (n - 1) / 2 + 3 * n);
      CHECK(census.intra_pairs + census.inter_pairs == census.pair_count);
      CHECK(census.grand_total == census.intra_total + census.inter_total);
      CHECK(census.grand_total == all_pairs - 3);
      CHECK(census.inter_total == census.inter_lower_bound + census.fedge_count);
      CHECK(census.shortcut_pairs == 0);

      std::uint64_t intra = 0;
      for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (VertexId b = a + 1; b < g.vertex_count(); ++b) {
          const auto pc = classify_pair(g, a, b);
          if (a < 3 && b < 3) {
            CHECK(pc.kind == PairClass::Kind::kOutermostPair);
            continue;
          }
          CHECK((pc.kind == PairClass::Kind::kIntra) == brute_intra(g, a, b));
          if (pc.kind == PairClass::Kind::kIntra) ++intra;
          if (pc.is_inter()) {
            REQUIRE(pc.common_sub_rans.has_value());
            CHECK(g.internal_to(a, *pc.common_sub_rans));
            CHECK(g.internal_to(b, *pc.common_sub_rans));
          }
        }
      CHECK(intra == census.intra_pairs);

      const auto ds = degree_stats(g);
      std::uint64_t degree_total = 0, vertices = 0;
      for (auto [k, c] : ds.histogram) {
        degree_total += k * c;
        vertices += c;
      }
      CHECK(vertices == g.vertex_count());
      CHECK(degree_total == 2 * g.edge_count());
      if (n > 0) CHECK(ds.center_degree == g.degree(3));
    }
}

TEST_CASE("order 7 has shortcut pairs that escape the frontier decomposition") {
  std::uint64_t shortcuts = 0, defect = 0, lower = 0, fedges = 0, inter = 0;
  for (const auto& g : graphs_of_order(7)) {
    const auto c = total_distance_census(g);
    shortcuts += c.shortcut_pairs;
    defect += c.decomposition_defect;
    lower += c.inter_lower_bound;
    fedges += c.fedge_count;
    inter += c.inter_total;
  }
  CHECK(shortcuts == 12);
  CHECK(defect == 12);
  CHECK(inter + defect == lower + fedges);
}

TEST_CASE("sampled structures keep the invariants") {
  Rng rng(17);
  for (std::size_t n : {50, 400, 3000}) {
    const RansGraph g(sample_tree(n, rng));
    CHECK(g.edge_count() == 3 + 3 * n);
    const auto d = bfs_distances(g, RansGraph::kO1);
    const auto lab = delta_labeling(g, LabelVariant::kOne);
    for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(lab[v] == d[v]);
    const auto p = distance_profile(g, RansGraph::kO1);
    CHECK(std::accumulate(p.count.begin(), p.count.end(), std::uint64_t{0}) == n);
    CHECK(p.count.back() > 0);
    CHECK(p.normalized().size() == p.count.size() - 1);
  }
}

TEST_CASE("graph json") {
  const RansGraph g(decode_tree("NLLL"));
  const std::string j = g.to_json();
  CHECK(j.find("\"order\":1") != std::string::npos);
  CHECK(j.find("\"center\":3") != std::string::npos);
  CHECK(RansGraph(TernaryTree{}).to_json().find("\"center\":null") != std::string::npos);
}
