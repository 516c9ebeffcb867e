#pragma once

// Plug-in estimates of specific information and I^(k) from samples, with a
// leading-order (1/N_s) bias correction.
//
// For an outcome y and a source C with states c, the correction is
//
//   p̂(y) δ(y,C) = Σ_c [1 - p̂(y,c)] / 2N
//              + Σ_c p̂(y,c) [1 - p̂(y)] / (2N p̂(y))
//              + Σ_c p̂(y,c) [1 - p̂(c)] / (2N p̂(c))
//
// summed over every declared state of C, observed or not. Summands whose
// denominator p̂(c) is zero are taken as zero (their numerator is zero too).
// The corrected estimate is Î(Y=y:C) - δ(y,C).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pidtrunc/distribution.hpp"
#include "pidtrunc/pid.hpp"
#include "pidtrunc/synergy.hpp"

namespace pidtrunc {

/// Which source states the bias sums run over.
enum class BiasCellRange {
  declared,  // every state of the source's declared alphabet
  observed,  // only (y, c) cells with a non-zero count
};

/// The three summand groups of p̂(y) δ(y,C), in nats, per outcome.
struct BiasTerms {
  std::vector<double> joint;   // Σ_c [1 - p̂(y,c)] / 2N
  std::vector<double> target;  // Σ_c p̂(y,c) [1 - p̂(y)] / (2N p̂(y))
  std::vector<double> source;  // Σ_c p̂(y,c) [1 - p̂(c)] / (2N p̂(c))
};

BiasTerms bias_terms(const SourceTargetTable& table, std::uint64_t sample_count,
                     BiasCellRange range = BiasCellRange::declared);

struct BiasCorrectedEstimate {
  double raw = 0.0;
  double delta = 0.0;
  double corrected = 0.0;  // raw - delta
  std::optional<std::uint64_t> sample_count;
};

/// Specific information of the plug-in table. Throws DomainError if p̂(y) = 0.
double plugin_specific_information(const EmpiricalDistribution& emp, VariableId target,
                                   std::size_t y_value, const SourceSubset& source);

/// δ(y, C) in the table's log units; zero for an asymptotic table.
double bias_delta(const EmpiricalDistribution& emp, VariableId target, std::size_t y_value,
                  const SourceSubset& source);

BiasCorrectedEstimate corrected_specific_information(const EmpiricalDistribution& emp,
                                                     VariableId target, std::size_t y_value,
                                                     const SourceSubset& source);

/// p̂(y) δ(y,C) in nats for every outcome, from a counted table.
std::vector<double> weighted_bias(const SourceTargetTable& table, std::uint64_t sample_count,
                                  BiasCellRange range = BiasCellRange::declared);

/// Σ_y p̂(y) max_C [Î(Y=y:C) - δ(y,C)]; outcomes never observed contribute 0.
double i_k_estimate(const EmpiricalDistribution& emp, VariableId target,
                    std::span<const VariableId> features, std::size_t k, bool correct_bias,
                    BiasCellRange range = BiasCellRange::declared);

double i_k_estimate(const SampleSet& samples, VariableId target,
                    std::span<const VariableId> features, std::size_t k, bool correct_bias);

/// Estimated I^(1)..I^(k_max); total_mi holds the plug-in mutual information.
IkProfile i_k_estimate_profile(const EmpiricalDistribution& emp, VariableId target,
                               std::span<const VariableId> features, std::size_t k_max,
                               bool correct_bias,
                               BiasCellRange range = BiasCellRange::declared);

/// Per-order mean and standard deviation of Î^(k)/I^(k) - 1.
struct DeviationStats {
  std::vector<double> mean;   // index k-1
  std::vector<double> stdev;  // sample standard deviation, n-1 denominator
};

DeviationStats normalized_deviation_stats(const IkProfile& exact,
                                          std::span<const IkProfile> estimates);

/// One line of an estimate report.
struct EstimateRow {
  std::uint64_t sample_count = 0;
  std::size_t k = 0;
  double raw = 0.0;
  double corrected = 0.0;
  std::optional<double> exact;

  std::optional<double> i_hat(bool use_corrected = true) const;
};

/// CSV with header `N_s,k,raw,corrected,exact,i_hat`; unknown fields stay empty.
std::string estimate_rows_to_csv(std::span<const EstimateRow> rows, bool corrected_column = true);

}  // namespace pidtrunc
