// Exercises the shared library through rans.h only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "rans/rans.h"

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  rans_string_free(s);
  return out;
}

rans_tree* decode(const char* word) {
  rans_tree* t = nullptr;
  REQUIRE(rans_tree_decode(word, &t) == RANS_OK);
  return t;
}

}  // namespace

TEST_CASE("status names and seeds") {
  CHECK(std::string(rans_status_name(RANS_OK)) == "ok");
  CHECK(std::string(rans_status_name(RANS_E_CAP_EXCEEDED)).find("cap") != std::string::npos);
  CHECK(rans_derive_seed(1, 2) == rans_derive_seed(1, 2));
  CHECK(rans_sample_seed(7, 1000, 0) == rans_derive_seed(rans_derive_seed(7, 1000), 0));
}

TEST_CASE("trees") {
  char* s = nullptr;
  REQUIRE(rans_count_trees(4, &s) == RANS_OK);
  CHECK(take(s) == "55");
  REQUIRE(rans_count_trees(30, &s) == RANS_OK);
  CHECK(take(s) == "11034966795189838872624");

  rans_tree* t = decode("NNLLLLL");
  CHECK(rans_tree_order(t) == 2);
  REQUIRE(rans_tree_encode(t, &s) == RANS_OK);
  CHECK(take(s) == "NNLLLLL");
  rans_tree_free(t);

  rans_tree* bad = nullptr;
  CHECK(rans_tree_decode("NLX", &bad) == RANS_E_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(rans_last_error()).find("offset 2") != std::string::npos);
  CHECK(rans_tree_decode(nullptr, &bad) == RANS_E_INVALID_ARGUMENT);

  rans_tree* a = nullptr;
  rans_tree* b = nullptr;
  REQUIRE(rans_tree_sample(1000, 7, RANS_STRATEGY_CYCLE_LEMMA, &a) == RANS_OK);
  REQUIRE(rans_tree_sample(1000, 7, RANS_STRATEGY_CYCLE_LEMMA, &b) == RANS_OK);
  char* wa = nullptr;
  char* wb = nullptr;
  rans_tree_encode(a, &wa);
  rans_tree_encode(b, &wb);
  CHECK(take(wa) == take(wb));
  rans_tree_free(a);
  rans_tree_free(b);

  REQUIRE(rans_tree_sample(0, 3, RANS_STRATEGY_RECURSIVE_SPLITTING, &a) == RANS_OK);
  rans_tree_encode(a, &wa);
  CHECK(take(wa) == "L");
  rans_tree_free(a);

  REQUIRE(rans_tree_enumerated(2, 2, 8, &a) == RANS_OK);
  CHECK(rans_tree_order(a) == 2);
  rans_tree_free(a);
  CHECK(rans_tree_enumerated(2, 3, 8, &a) == RANS_E_OUT_OF_RANGE);
  CHECK(rans_tree_enumerated(9, 0, 8, &a) == RANS_E_CAP_EXCEEDED);
  rans_tree_free(nullptr);
}

TEST_CASE("graphs") {
  rans_tree* t = decode("NLLL");
  rans_graph* g = nullptr;
  REQUIRE(rans_graph_build(t, &g) == RANS_OK);
  rans_tree_free(t);
  CHECK(rans_graph_order(g) == 1);
  CHECK(rans_graph_vertex_count(g) == 4);
  CHECK(rans_graph_edge_count(g) == 6);

  std::vector<uint32_t> d(4);
  REQUIRE(rans_graph_bfs(g, 0, d.data(), d.size()) == RANS_OK);
  CHECK(d == std::vector<uint32_t>{0, 1, 1, 1});
  CHECK(rans_graph_bfs(g, 9, d.data(), d.size()) == RANS_E_OUT_OF_RANGE);
  CHECK(rans_graph_bfs(g, 0, d.data(), 2) != RANS_OK);

  size_t len = 0;
  REQUIRE(rans_graph_distance_profile(g, 0, nullptr, 0, &len) == RANS_OK);
  CHECK(len == 2);
  std::vector<uint64_t> counts(len);
  REQUIRE(rans_graph_distance_profile(g, 0, counts.data(), counts.size(), &len) == RANS_OK);
  CHECK(counts == std::vector<uint64_t>{0, 1});

  uint64_t v = 0;
  REQUIRE(rans_graph_delta_sum(g, 3, &v) == RANS_OK);
  CHECK(v == 1);
  CHECK(rans_graph_delta_sum(g, 0, &v) == RANS_E_INVALID_ARGUMENT);
  size_t deg = 0;
  REQUIRE(rans_graph_center_degree(g, &deg) == RANS_OK);
  CHECK(deg == 3);
  REQUIRE(rans_graph_equidistant_count(g, &v) == RANS_OK);
  CHECK(v == 1);
  rans_census c{};
  REQUIRE(rans_graph_census(g, &c) == RANS_OK);
  CHECK(c.grand_total == 3);
  CHECK(c.pair_count == 3);
  double mean = 0;
  REQUIRE(rans_graph_mean_pairwise_distance(g, &mean) == RANS_OK);
  CHECK(mean == doctest::Approx(1));
  char* j = nullptr;
  REQUIRE(rans_graph_to_json(g, &j) == RANS_OK);
  CHECK(take(j).find("\"center\":3") != std::string::npos);
  rans_graph_free(g);

  t = decode("L");
  REQUIRE(rans_graph_build(t, &g) == RANS_OK);
  rans_tree_free(t);
  CHECK(rans_graph_center_degree(g, &deg) == RANS_E_ABSENT);
  rans_graph_free(g);
}

TEST_CASE("series") {
  rans_series* s = nullptr;
  REQUIRE(rans_series_build("Delta1", 6, &s) == RANS_OK);
  CHECK(rans_series_precision(s) == 6);
  char* c = nullptr;
  REQUIRE(rans_series_coeff(s, 3, &c) == RANS_OK);
  CHECK(take(c) == "46");
  CHECK(rans_series_coeff(s, 7, &c) == RANS_E_OUT_OF_RANGE);
  REQUIRE(rans_series_to_csv(s, &c) == RANS_OK);
  CHECK(take(c).rfind("n,value\n0,0\n1,1\n2,7\n", 0) == 0);
  rans_series_free(s);

  for (const char* name : {"T", "Tprime", "H", "D3", "Dtotal", "Delta2:system", "Delta3:closed", "Delta1:printed",
                           "delta", "delta~", "Intra", "Intra~", "gamma-", "gamma+", "Inter-", "Inter+", "E",
                           "E:whole-expression", "phi", "F", "G"}) {
    INFO(name);
    REQUIRE(rans_series_build(name, 8, &s) == RANS_OK);
    rans_series_free(s);
  }
  REQUIRE(rans_series_build("G", 2, &s) == RANS_OK);
  rans_series_coeff(s, 2, &c);
  CHECK(take(c) == "24");
  rans_series_free(s);
  CHECK(rans_series_build("nope", 8, &s) == RANS_E_INVALID_ARGUMENT);

  REQUIRE(rans_marked_series_text("Dg", 2, &c) == RANS_OK);
  CHECK(take(c) == "1; 3; 1\n2; 4; 3\n");
  CHECK(rans_marked_series_text("Dtop", 7, &c) == RANS_E_CAP_EXCEEDED);
  CHECK(rans_marked_series_text("nope", 3, &c) == RANS_E_INVALID_ARGUMENT);
}

TEST_CASE("verification report") {
  rans_report* r = nullptr;
  REQUIRE(rans_verify_run(3, 6, nullptr, &r) == RANS_OK);
  CHECK(rans_report_passed(r) == 1);
  char* out = nullptr;
  REQUIRE(rans_report_render(r, RANS_FORMAT_JSON, &out) == RANS_OK);
  const std::string json = take(out);
  CHECK(json.find("\"config\"") != std::string::npos);
  REQUIRE(rans_report_render(r, RANS_FORMAT_CSV, &out) == RANS_OK);
  CHECK(take(out).find("identity,verdict,first_mismatch,detail") != std::string::npos);
  rans_report_free(r);

  REQUIRE(rans_verify_run(3, 6, "G", &r) == RANS_OK);
  CHECK(rans_report_passed(r) == 0);
  rans_report_free(r);
  CHECK(rans_verify_run(7, 6, nullptr, &r) == RANS_E_CAP_EXCEEDED);
}

TEST_CASE("asymptotic report") {
  rans_asympt_config cfg;
  rans_asympt_config_default(&cfg);
  CHECK(cfg.trunc == 500);
  CHECK(cfg.order_count == 3);
  CHECK(cfg.samples == 30);
  cfg.trunc = 60;
  cfg.tail_order = 40;
  cfg.exact_only = 1;
  cfg.tolerances = "T_n=0.5";
  rans_report* r = nullptr;
  REQUIRE(rans_asympt_run(&cfg, &r) == RANS_OK);
  char* out = nullptr;
  REQUIRE(rans_report_render(r, RANS_FORMAT_CSV, &out) == RANS_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("# config", 0) == 0);
  CHECK(csv.find("law_id,n,observed,predicted,ratio") != std::string::npos);
  REQUIRE(rans_report_render(r, RANS_FORMAT_JSON, &out) == RANS_OK);
  CHECK(take(out).find("\"T_n\": 0.5") != std::string::npos);
  rans_report_free(r);

  cfg.tolerances = "bogus=1";
  CHECK(rans_asympt_run(&cfg, &r) == RANS_E_INVALID_ARGUMENT);
  cfg.tolerances = "T_n=x";
  CHECK(rans_asympt_run(&cfg, &r) == RANS_E_INVALID_ARGUMENT);
  CHECK(rans_asympt_run(nullptr, &r) == RANS_E_INVALID_ARGUMENT);
}
