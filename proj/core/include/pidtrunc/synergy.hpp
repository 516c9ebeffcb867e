#pragma once

// Truncated multivariate information I^(k): union information over every
// feature subset of size exactly k. I^(1) ignores all synergy, I^(N) is the
// full mutual information, and the gaps I^(N) - I^(k) measure information
// that only appears in synergies of more than k features.

#include <cstddef>
#include <span>
#include <vector>

#include "pidtrunc/distribution.hpp"
#include "pidtrunc/pid.hpp"

namespace pidtrunc {

/// Every subset of exactly `k` features, lexicographic in feature-list order.
struct SubsetFamily {
  std::size_t k = 0;
  std::vector<SourceSubset> subsets;
};

/// Refuses N > 25 with k > 3; the family is enumerated exhaustively.
SubsetFamily enumerate_family(std::span<const VariableId> features, std::size_t k);

std::size_t binomial(std::size_t n, std::size_t k) noexcept;

struct IkProfile {
  std::vector<double> values;  // values[k-1] = I^(k), k = 1..k_max
  std::vector<double> gaps;    // gaps[k-1] = I^(N) - I^(k), k = 1..N-1; empty unless k_max = N
  double total_mi = 0.0;       // mutual information of all features
  LogBase units = LogBase::nats;

  std::size_t k_max() const noexcept { return values.size(); }
  double at(std::size_t k) const { return values.at(k - 1); }
};

double i_k(const DiscreteJointDistribution& dist, VariableId target,
           std::span<const VariableId> features, std::size_t k);

/// I^(k) from the (k+1)-variable marginals p(y, x_i1..x_ik) alone. Each
/// marginal holds exactly one subset's features plus the target, located by
/// name; all must share log units.
double i_k_from_marginals(std::span<const DiscreteJointDistribution> marginals,
                          std::string_view target_name);

IkProfile i_k_profile(const DiscreteJointDistribution& dist, VariableId target,
                      std::span<const VariableId> features, std::size_t k_max);

struct OutcomeArgmax {
  std::size_t outcome = 0;
  double value = 0.0;                  // max_C I(Y=y : C)
  std::vector<SourceSubset> subsets;   // every C within the tie tolerance of the max
};

struct SelectionOptions {
  double tie_tolerance = 1e-10;
  /// Greedy backward elimination after the argmax pass; heuristic.
  bool prune = false;
  double prune_tolerance = 1e-10;
};

struct SelectionReport {
  std::size_t k = 0;
  std::vector<VariableId> relevant;    // union of features over all per-outcome argmax sets
  std::vector<OutcomeArgmax> per_outcome_argmax;
  double i_k_full = 0.0;
  double i_k_selected = 0.0;
  std::vector<VariableId> pruned;      // after the greedy pass; equals `relevant` when disabled
  double i_k_pruned = 0.0;
  LogBase units = LogBase::nats;
};

SelectionReport select_features(const DiscreteJointDistribution& dist, VariableId target,
                                std::span<const VariableId> features, std::size_t k,
                                const SelectionOptions& options = {});

/// Repeatedly drops the feature whose removal lowers I^(k) the least, while
/// that loss stays below `tolerance` and more than k features remain.
std::vector<VariableId> greedy_backward_prune(const DiscreteJointDistribution& dist,
                                              VariableId target,
                                              std::span<const VariableId> features,
                                              std::size_t k, double tolerance);

}  // namespace pidtrunc
