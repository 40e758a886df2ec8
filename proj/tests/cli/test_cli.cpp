#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RANS_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("rans_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("sample of order 0 is a single leaf") {
  const fs::path f = scratch() / "zero.txt";
  REQUIRE(run("sample -n 0 --out " + f.string()).status == 0);
  CHECK(slurp(f) == "L\n");
}

TEST_CASE("sampling is byte-identical under a fixed seed") {
  const fs::path dir = scratch();
  for (const char* fmt : {"words", "json"}) {
    const fs::path a = dir / (std::string("a.") + fmt), b = dir / (std::string("b.") + fmt);
    REQUIRE(run("sample -n 1000 --seed 7 --format " + std::string(fmt) + " --out " + a.string()).status == 0);
    REQUIRE(run("sample -n 1000 --seed 7 --format " + std::string(fmt) + " --out " + b.string()).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() > 3000);
  }
  CHECK(run("sample -n 50 --seed 7").out != run("sample -n 50 --seed 8").out);
  const std::string json = run("sample -n 4 --samples 2 --seed 7 --format json").out;
  CHECK(json.find("\"config\"") != std::string::npos);
  CHECK(json.find("\"edges\"") != std::string::npos);
}

TEST_CASE("sampled shapes at n=3 pass a uniformity check") {
  for (const char* strategy : {"cycle", "split"}) {
    const Run r = run("sample -n 3 --samples 12000 --seed 5 --strategy " + std::string(strategy));
    REQUIRE(r.status == 0);
    std::map<std::string, double> freq;
    std::stringstream in(r.out);
    std::size_t total = 0;
    for (std::string w; std::getline(in, w); ++total) ++freq[w];
    CHECK(total == 12000);
    CHECK(freq.size() == 12);
    double stat = 0;
    for (const auto& [w, c] : freq) stat += (c - 1000.0) * (c - 1000.0) / 1000.0;
    const boost::math::chi_squared dist(11);
    CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 0.01);
  }
}

TEST_CASE("profile of K4") {
  const Run r = run("profile --orders 1");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("# config: ", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"order", "sample", "source_role", "distance", "count", "proportion",
                                            "distance_over_sqrt_n", "scaled_proportion"});
  CHECK(rows[1][3] == "1");
  CHECK(rows[1][4] == "1");
  CHECK(rows[1][5] == "1");
}

TEST_CASE("default profile orders and peak location") {
  const Run r = run("profile --samples 4 --seed 3");
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> graphs;
  for (std::size_t i = 1; i < rows.size(); ++i) graphs[{rows[i][0], rows[i][1]}].push_back(rows[i]);
  CHECK(graphs.size() == 20);
  std::map<double, double> aggregated;
  for (const auto& [key, g] : graphs) {
    CHECK(std::stoul(g.back()[3]) == g.size());
    std::size_t vertices = 0;
    for (const auto& row : g) vertices += std::stoul(row[4]);
    CHECK(vertices == std::stoul(key.first));
    for (const auto& row : g) aggregated[std::round(std::stod(row[6]) * 50) / 50] += std::stod(row[7]);
  }
  CHECK(graphs.begin()->first.first == "1000");
  CHECK(graphs.rbegin()->first.first == "1400");
  double peak_x = 0, peak = -1;
  for (auto [x, y] : aggregated)
    if (y > peak) peak = y, peak_x = x;
  CHECK(peak_x >= 0.28 * 0.7);
  CHECK(peak_x <= 0.28 * 1.3);
}

TEST_CASE("series output embeds its config") {
  const Run r = run("series --name T --trunc 4");
  REQUIRE(r.status == 0);
  CHECK(r.out == "# config: {\"command\":\"series\",\"name\":\"T\",\"trunc\":4}\nn,value\n0,1\n1,1\n2,3\n3,12\n4,55\n");
  const Run j = run("series --name Dg --trunc 2 --format json");
  REQUIRE(j.status == 0);
  CHECK(j.out.find("\"2; 4; 3\"") != std::string::npos);
}

TEST_CASE("count") {
  CHECK(run("count -n 6").out == "1428\n");
  const Run r = run("count -n 2 --enumerate");
  CHECK(r.out == "3\nNLLNLLL\nNLNLLLL\nNNLLLLL\n");
}

TEST_CASE("verify exit status") {
  const Run ok = run("verify -n 2");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("verification passed") != std::string::npos);
  const Run bad = run("verify -n 4 --corrupt Delta2");
  CHECK(bad.status == 1);
  CHECK(bad.out.find("FAIL Delta2") != std::string::npos);
  const Run json = run("verify -n 2 --format json");
  CHECK(json.out.find("\"max_order\"") != std::string::npos);
  CHECK(run("verify -n 7").status == 2);
}

TEST_CASE("asympt exit status and tolerance overrides") {
  const Run r = run("asympt --exact-only --trunc 60 --tail-order 40 --tolerance T_n=0.5 --format json");
  CHECK(r.out.find("\"T_n\": 0.5") != std::string::npos);
  CHECK((r.status == 0 || r.status == 1));
  CHECK(run("asympt --exact-only --trunc 60 --tolerance nope=1").status == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("sample").status == 2);
  CHECK(run("sample -n x").status == 2);
  CHECK(run("sample -n 3 --format xml").status == 2);
  CHECK(run("profile --orders 5:1").status == 2);
  CHECK(run("series --name nope").status == 2);
  CHECK(run("sample -n 3 --out /nonexistent/dir/file").status == 2);
  CHECK(run("--help").status == 0);
}
