#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rans {

/// rational * sqrt(3)^a * sqrt(pi)^b, kept exact until printed.
struct SymbolicConstant {
  mpq_class rational = 1;
  int sqrt3_power = 0;
  int sqrtpi_power = 0;

  long double value() const;
  std::string to_string() const;
  friend bool operator==(const SymbolicConstant&, const SymbolicConstant&) = default;
};

/// observed(n) ~ amplitude * growth^n * n^alpha.
struct AsymptoticLaw {
  std::string id;
  std::string quantity;       // what is observed
  std::string normalized_by;  // what the raw coefficient was divided by
  SymbolicConstant amplitude;
  mpq_class growth = 1;
  mpq_class alpha = 0;
  /// Laws sharing a non-empty group are mutually exclusive candidates.
  std::string exclusive_group;
  /// Only the exponents are claimed (amplitude unspecified).
  bool amplitude_known = true;

  long double log_value(std::size_t n) const;
  long double evaluate(std::size_t n) const;
};

inline const mpq_class kRho{4, 27};
inline const mpq_class kBeta{8, 9};

std::vector<AsymptoticLaw> law_catalog();
/// Throws Error(kInvalidArgument) for an unknown id.
const AsymptoticLaw& find_law(const std::string& id);

/// Natural log of a positive rational, valid far beyond double range.
long double log_of(const mpq_class& x);

struct Observation {
  std::size_t n;
  mpq_class value;
};

struct ConvergenceRow {
  std::size_t n;
  long double log_observed, log_predicted;
  long double ratio;
};

struct ConvergenceReport {
  std::string law_id;
  std::vector<ConvergenceRow> rows;
  double band = 0;
  long double terminal_ratio = 0;
  /// |ratio - 1| never increases along the rows.
  bool monotone_toward_one = false;
  /// Largest |ratio - 1| over the last ten rows.
  long double last_decade_drift = 0;
  bool terminal_within_band = false;
  /// last_decade_drift > band or the last ten rows move away from 1.
  bool non_convergence_flag = false;

  std::string to_csv(bool header = true) const;
  std::string summary_json() const;
};

/// Throws Error(kInsufficientData) on empty input.
ConvergenceReport convergence_report(const std::vector<Observation>& observed, const AsymptoticLaw& law, double band);

struct MeanSamples {
  std::size_t order;
  std::vector<double> means;  // one mean pairwise distance per sampled structure
};

struct MeanResolution {
  double c_hat = 0;
  double band = 0;
  std::vector<std::pair<std::size_t, double>> order_means;
  struct Candidate {
    std::string law_id;
    double value;
    double relative_error;
    bool matches;
  };
  std::vector<Candidate> candidates;
  std::optional<std::string> chosen;  // law id, set iff exactly one candidate matches
  /// Nearest known constant among the catalog's mean-distance amplitudes
  /// and their simple multiples.
  std::string closest_constant;
  double closest_relative_error = 0;

  std::string verdict() const;
  std::string summary_json() const;
};

/// Least-squares fit mean = C sqrt(n) through the origin over every sample.
/// Requires at least min_samples per order (Error kInsufficientData).
MeanResolution resolve_mean_constant(const std::vector<MeanSamples>& samples, double band = 0.15,
                                     std::size_t min_samples = 30);

struct TailFit {
  std::size_t k_min = 0, k_max = 0;
  bool range_shrunk = false;
  /// exp(slope) of the least-squares line through log(Pr(k) k^{3/2}).
  double r_hat = 0;
  /// Pr(k+1)(k+1)^{3/2} / (Pr(k) k^{3/2}) for consecutive k in range.
  std::vector<std::pair<std::size_t, double>> successive;
  double relative_error = 0;  // |r_hat - 8/9| / (8/9)

  std::string summary_json() const;
};

/// Histogram values may be counts or probabilities (normalization cancels).
/// Empty bins shrink the range to the longest run of non-empty ones; fewer
/// than two usable bins is Error(kInsufficientData).
TailFit degree_tail_check(const std::map<std::size_t, double>& histogram, std::size_t k_min = 10,
                          std::size_t k_max = 40);

}  // namespace rans
