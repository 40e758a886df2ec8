// Command-line front end. Talks to the library only through rans.h.
//
// Exit status: 0 success, 1 verification failure, 2 usage or runtime error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rans/rans.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rans_status s) {
  if (s != RANS_OK) throw ApiError(std::string(rans_status_name(s)) + ": " + rans_last_error());
}

std::string take(char* s) {
  std::string out(s ? s : "");
  rans_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Tree = std::unique_ptr<rans_tree, Deleter<rans_tree, rans_tree_free>>;
using Graph = std::unique_ptr<rans_graph, Deleter<rans_graph, rans_graph_free>>;
using Series = std::unique_ptr<rans_series, Deleter<rans_series, rans_series_free>>;
using Report = std::unique_ptr<rans_report, Deleter<rans_report, rans_report_free>>;

Tree sample(std::size_t n, std::uint64_t seed, rans_strategy strategy) {
  rans_tree* t = nullptr;
  check(rans_tree_sample(n, seed, strategy, &t));
  return Tree(t);
}

Graph build(const rans_tree* t) {
  rans_graph* g = nullptr;
  check(rans_graph_build(t, &g));
  return Graph(g);
}

// "1000,4000,10000" or "lo:hi[:step]".
std::vector<std::size_t> parse_orders(const std::string& spec) {
  std::vector<std::size_t> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::size_t> parts;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(std::stoul(item));
    if (parts.size() < 2 || parts.size() > 3 || parts[0] > parts[1] || (parts.size() == 3 && parts[2] == 0))
      throw CLI::ValidationError("--orders", "expected lo:hi[:step] with lo <= hi");
    const std::size_t step = parts.size() == 3 ? parts[2] : 1;
    for (std::size_t n = parts[0]; n <= parts[1]; n += step) out.push_back(n);
    return out;
  }
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stoul(item));
  if (out.empty()) throw CLI::ValidationError("--orders", "no orders given");
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ApiError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw ApiError("write failed");
  }

 private:
  std::ofstream file_;
};

rans_strategy parse_strategy(const std::string& s) {
  return s == "split" ? RANS_STRATEGY_RECURSIVE_SPLITTING : RANS_STRATEGY_CYCLE_LEMMA;
}

rans_format parse_format(const std::string& s) {
  if (s == "json") return RANS_FORMAT_JSON;
  if (s == "csv") return RANS_FORMAT_CSV;
  return RANS_FORMAT_TEXT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Apollonian network structures: sampling, exact series, verification"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 1;

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "Write uniformly sampled structures");
  std::size_t sample_order = 0, sample_count = 1;
  std::string sample_format = "words", strategy = "cycle";
  cmd_sample->add_option("--order,-n", sample_order, "Order n")->required();
  cmd_sample->add_option("--samples", sample_count, "Number of structures")->check(CLI::PositiveNumber);
  cmd_sample->add_option("--seed", seed, "Run seed");
  cmd_sample->add_option("--strategy", strategy, "cycle | split")->check(CLI::IsMember({"cycle", "split"}));
  cmd_sample->add_option("--format", sample_format, "words | csv | json")
      ->check(CLI::IsMember({"words", "csv", "json"}));
  cmd_sample->add_option("--out,-o", out_path, "Output file (default stdout)");

  // profile
  auto* cmd_profile = app.add_subcommand("profile", "Distance profiles from O1 of sampled structures");
  std::string profile_orders = "1000:1400:100", profile_format = "csv";
  std::size_t profile_samples = 1;
  cmd_profile->add_option("--orders", profile_orders, "Comma list or lo:hi[:step]");
  cmd_profile->add_option("--samples", profile_samples, "Structures per order")->check(CLI::PositiveNumber);
  cmd_profile->add_option("--seed", seed, "Run seed");
  cmd_profile->add_option("--format", profile_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd_profile->add_option("--out,-o", out_path, "Output file");

  // series
  auto* cmd_series = app.add_subcommand("series", "Exact coefficients of a generating function");
  std::string series_name = "T", series_format = "csv";
  std::size_t trunc = 200;
  cmd_series->add_option("--name", series_name, "Series name (T, D2, Delta1, Intra~, G, Dg, T3, Dtop, ...)");
  cmd_series->add_option("--trunc", trunc, "Truncation order N");
  cmd_series->add_option("--format", series_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd_series->add_option("--out,-o", out_path, "Output file");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Exhaustive census against every series identity");
  std::size_t verify_order = 6, verify_cap = 6;
  std::string verify_format = "text", corrupt;
  cmd_verify->add_option("--order,-n", verify_order, "Largest exhaustive order");
  cmd_verify->add_option("--cap", verify_cap, "Enumeration cap");
  cmd_verify->add_option("--corrupt", corrupt, "Test hook: perturb the named identity");
  cmd_verify->add_option("--format", verify_format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_verify->add_option("--out,-o", out_path, "Output file");

  // asympt
  auto* cmd_asympt = app.add_subcommand("asympt", "Convergence tables and asymptotic verdicts");
  rans_asympt_config cfg;
  rans_asympt_config_default(&cfg);
  std::string asympt_orders = "1000,4000,10000", asympt_format = "text";
  std::vector<std::string> tolerances;
  bool exact_only = false;
  std::size_t asympt_trunc = cfg.trunc, asympt_samples = cfg.samples;
  cmd_asympt->add_option("--trunc", asympt_trunc, "Truncation N for exact coefficients");
  cmd_asympt->add_option("--orders", asympt_orders, "Monte Carlo orders");
  cmd_asympt->add_option("--samples", asympt_samples, "Structures per Monte Carlo order");
  cmd_asympt->add_option("--seed", seed, "Run seed");
  cmd_asympt->add_option("--tail-order", cfg.tail_order, "Order of the exact degree distribution");
  cmd_asympt->add_option("--tail-graph-order", cfg.tail_graph_order, "Order of sampled structures for the tail");
  cmd_asympt->add_option("--tail-graphs", cfg.tail_graphs, "Sampled structures for the tail");
  cmd_asympt->add_option("--tolerance", tolerances, "KEY=VAL band override (repeatable)");
  cmd_asympt->add_flag("--exact-only", exact_only, "Skip Monte Carlo parts");
  cmd_asympt->add_option("--format", asympt_format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_asympt->add_option("--out,-o", out_path, "Output file");

  // count
  auto* cmd_count = app.add_subcommand("count", "Number of structures of an order");
  std::size_t count_order = 0, count_cap = 8;
  bool enumerate = false;
  cmd_count->add_option("--order,-n", count_order, "Order n")->required();
  cmd_count->add_flag("--enumerate", enumerate, "Also print every tree word");
  cmd_count->add_option("--cap", count_cap, "Enumeration cap");
  cmd_count->add_option("--out,-o", out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (cmd_sample->parsed()) {
      Output out(out_path);
      const rans_strategy strat = parse_strategy(strategy);
      nlohmann::json config = {{"command", "sample"}, {"order", sample_order}, {"samples", sample_count},
                               {"seed", seed},        {"strategy", strategy},   {"format", sample_format}};
      nlohmann::json doc = {{"config", config}, {"samples", nlohmann::json::array()}};
      if (sample_format == "csv") out.stream() << "# config: " << config.dump() << "\norder,sample,word\n";
      for (std::size_t i = 0; i < sample_count; ++i) {
        const auto tree = sample(sample_order, rans_sample_seed(seed, sample_order, i), strat);
        char* w = nullptr;
        check(rans_tree_encode(tree.get(), &w));
        const std::string word = take(w);
        if (sample_format == "words") {
          out.stream() << word << '\n';
        } else if (sample_format == "csv") {
          out.stream() << sample_order << ',' << i << ',' << word << '\n';
        } else {
          const auto g = build(tree.get());
          char* j = nullptr;
          check(rans_graph_to_json(g.get(), &j));
          doc["samples"].push_back({{"index", i}, {"word", word}, {"graph", nlohmann::json::parse(take(j))}});
        }
      }
      if (sample_format == "json") out.stream() << doc.dump() << '\n';
      out.finish();
      return kExitOk;
    }

    if (cmd_profile->parsed()) {
      const auto orders = parse_orders(profile_orders);
      Output out(out_path);
      nlohmann::json config = {{"command", "profile"}, {"orders", orders}, {"samples", profile_samples},
                               {"seed", seed},         {"source", "O1"}};
      nlohmann::json rows = nlohmann::json::array();
      if (profile_format == "csv")
        out.stream() << "# config: " << config.dump() << '\n'
                     << "order,sample,source_role,distance,count,proportion,distance_over_sqrt_n,scaled_proportion\n";
      for (std::size_t n : orders)
        for (std::size_t i = 0; i < profile_samples; ++i) {
          const auto tree = sample(n, rans_sample_seed(seed, n, i), RANS_STRATEGY_CYCLE_LEMMA);
          const auto g = build(tree.get());
          std::size_t len = 0;
          check(rans_graph_distance_profile(g.get(), 0, nullptr, 0, &len));
          std::vector<std::uint64_t> counts(len);
          check(rans_graph_distance_profile(g.get(), 0, counts.data(), counts.size(), &len));
          const double nn = static_cast<double>(n), root = std::sqrt(nn);
          for (std::size_t d = 1; d < counts.size(); ++d) {
            const double p = n ? static_cast<double>(counts[d]) / nn : 0.0;
            if (profile_format == "csv") {
              char buf[160];
              std::snprintf(buf, sizeof buf, "%zu,%zu,outermost,%zu,%llu,%.10g,%.10g,%.10g\n", n, i, d,
                            static_cast<unsigned long long>(counts[d]), p, d / root, p * root);
              out.stream() << buf;
            } else {
              rows.push_back({{"order", n}, {"sample", i}, {"source_role", "outermost"}, {"distance", d},
                              {"count", counts[d]}, {"proportion", p}, {"distance_over_sqrt_n", d / root},
                              {"scaled_proportion", p * root}});
            }
          }
        }
      if (profile_format == "json") out.stream() << nlohmann::json{{"config", config}, {"rows", rows}}.dump() << '\n';
      out.finish();
      return kExitOk;
    }

    if (cmd_series->parsed()) {
      Output out(out_path);
      nlohmann::json config = {{"command", "series"}, {"name", series_name}, {"trunc", trunc}};
      rans_series* raw = nullptr;
      const rans_status st = rans_series_build(series_name.c_str(), trunc, &raw);
      if (st == RANS_OK) {
        const Series s(raw);
        if (series_format == "csv") {
          char* csv = nullptr;
          check(rans_series_to_csv(s.get(), &csv));
          out.stream() << "# config: " << config.dump() << '\n' << take(csv);
        } else {
          nlohmann::json coeffs = nlohmann::json::array();
          for (std::size_t k = 0; k <= rans_series_precision(s.get()); ++k) {
            char* c = nullptr;
            check(rans_series_coeff(s.get(), k, &c));
            coeffs.push_back(take(c));
          }
          out.stream() << nlohmann::json{{"config", config}, {"coefficients", coeffs}}.dump() << '\n';
        }
      } else {
        // Not a univariate name: try the marked series.
        const std::string univariate_error = rans_last_error();
        char* text = nullptr;
        const rans_status ms = rans_marked_series_text(series_name.c_str(), trunc, &text);
        if (ms != RANS_OK) {
          if (ms == RANS_E_INVALID_ARGUMENT && st == RANS_E_INVALID_ARGUMENT)
            throw ApiError("unknown series '" + series_name + "'");
          check(ms == RANS_E_INVALID_ARGUMENT ? st : ms);
        }
        const std::string body = take(text);
        if (series_format == "csv") {
          out.stream() << "# config: " << config.dump() << '\n' << body;
        } else {
          nlohmann::json lines = nlohmann::json::array();
          std::stringstream in(body);
          for (std::string line; std::getline(in, line);) lines.push_back(line);
          out.stream() << nlohmann::json{{"config", config}, {"terms", lines}}.dump() << '\n';
        }
        (void)univariate_error;
      }
      out.finish();
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      rans_report* raw = nullptr;
      check(rans_verify_run(verify_order, verify_cap, corrupt.empty() ? nullptr : corrupt.c_str(), &raw));
      const Report r(raw);
      char* text = nullptr;
      check(rans_report_render(r.get(), parse_format(verify_format), &text));
      Output out(out_path);
      out.stream() << take(text);
      out.finish();
      return rans_report_passed(r.get()) ? kExitOk : kExitFailed;
    }

    if (cmd_asympt->parsed()) {
      const auto orders = parse_orders(asympt_orders);
      std::string tol;
      for (const auto& t : tolerances) tol += (tol.empty() ? "" : ",") + t;
      cfg.trunc = asympt_trunc;
      cfg.samples = asympt_samples;
      cfg.orders = orders.data();
      cfg.order_count = orders.size();
      cfg.seed = seed;
      cfg.exact_only = exact_only ? 1 : 0;
      cfg.tolerances = tol.empty() ? nullptr : tol.c_str();
      rans_report* raw = nullptr;
      check(rans_asympt_run(&cfg, &raw));
      const Report r(raw);
      char* text = nullptr;
      check(rans_report_render(r.get(), parse_format(asympt_format), &text));
      Output out(out_path);
      out.stream() << take(text);
      out.finish();
      return rans_report_passed(r.get()) ? kExitOk : kExitFailed;
    }

    if (cmd_count->parsed()) {
      Output out(out_path);
      char* c = nullptr;
      check(rans_count_trees(count_order, &c));
      const std::string total = take(c);
      out.stream() << total << '\n';
      if (enumerate) {
        const std::size_t k = std::stoul(total);
        for (std::size_t i = 0; i < k; ++i) {
          rans_tree* t = nullptr;
          check(rans_tree_enumerated(count_order, i, count_cap, &t));
          const Tree tree(t);
          char* w = nullptr;
          check(rans_tree_encode(tree.get(), &w));
          out.stream() << take(w) << '\n';
        }
      }
      out.finish();
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
