#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rans/asymptotics.hpp"
#include "rans/random.hpp"
#include "rans/rans_graph.hpp"
#include "rans/ternary_tree.hpp"

namespace rans {

/// Seed of sample `index` at order `order` under a run seed.
inline std::uint64_t sample_seed(std::uint64_t run_seed, std::size_t order, std::size_t index) {
  return derive_seed(derive_seed(run_seed, order), index);
}

/// Uniform RANS of the given order drawn from the stream sample_seed(...).
RansGraph sample_graph(std::uint64_t run_seed, std::size_t order, std::size_t index,
                       SamplingStrategy strategy = SamplingStrategy::kCycleLemma);

/// (1 - z/rho) Delta_i(z) / (3/44) at z = rho (1 - eps).
struct PoleAmplitude {
  double eps;
  std::array<double, 3> analytic;   // closed forms at the point
  std::optional<std::size_t> truncation;
  std::array<double, 3> truncated;  // exact partial sums to z^truncation
};
PoleAmplitude pole_amplitude(double eps, std::optional<std::size_t> truncation = std::nullopt);

/// H at rho (1 - eps): closed form and, optionally, the exact partial sum.
std::pair<double, std::optional<double>> h_near_rho(double eps, std::optional<std::size_t> truncation = std::nullopt);

/// m(n) = [z^n]Delta_1 / (n T_n) for n = 1..max_n, exact.
std::vector<Observation> mean_from_o1(std::size_t max_n);
/// [z^n]Intra~ / T_n for n in [lo, hi].
std::vector<Observation> intra_per_structure(std::size_t lo, std::size_t hi);
/// [z^n]Inter^- / T_n and [z^n]F / T_n for n in [lo, hi].
std::vector<Observation> inter_minus_per_structure(std::size_t lo, std::size_t hi);
std::vector<Observation> fedge_per_structure(std::size_t lo, std::size_t hi);
/// T_n for n = 1..max_n.
std::vector<Observation> tree_counts(std::size_t max_n);

/// Pr(center degree = k) at order n from the exact coefficients of Dg(z,u).
std::map<std::size_t, double> exact_center_degree_distribution(std::size_t n);

/// Internal-vertex degree histogram over `graphs` sampled structures.
std::map<std::size_t, double> sampled_degree_histogram(std::uint64_t run_seed, std::size_t order, std::size_t graphs);

/// Mean pairwise distance of `samples` structures at each order.
std::vector<MeanSamples> sample_mean_distances(std::uint64_t run_seed, const std::vector<std::size_t>& orders,
                                               std::size_t samples);

struct AsymptOptions {
  std::size_t trunc = 500;
  std::vector<std::size_t> mc_orders{1000, 4000, 10000};
  std::size_t samples = 30;
  std::uint64_t seed = 1;
  std::size_t tail_order = 60;
  std::size_t tail_graph_order = 100000;
  std::size_t tail_graphs = 10;
  std::map<std::string, double> tolerance{{"T_n", 0.03},     {"mean_from_O1", 0.05}, {"intra", 0.2},
                                          {"inter", 0.2},    {"fedge", 0.2},         {"pole", 0.1},
                                          {"degree_tail", 0.1}, {"mean_pairwise", 0.15}};
  double pole_eps = 1e-3;
  /// Skip the Monte Carlo parts (mean-constant resolution, sampled tail).
  bool exact_only = false;

  double tol(const std::string& key) const;
};

struct AsymptReport {
  AsymptOptions options;
  std::vector<ConvergenceReport> laws;
  PoleAmplitude pole;
  double h_near = 0;
  TailFit exact_tail;
  std::optional<TailFit> sampled_tail;
  std::optional<MeanResolution> mean;

  const ConvergenceReport& law(const std::string& id) const;
  /// Pass/fail per checked claim. The inter and f-edge tables are reported
  /// as trends only.
  std::vector<std::pair<std::string, bool>> verdicts() const;
  bool passed() const;
  std::string to_csv() const;
  std::string to_json() const;
  std::string to_text() const;
};

AsymptReport run_asymptotics(const AsymptOptions& options);

}  // namespace rans
