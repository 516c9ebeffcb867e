#pragma once

// Specific information, I_min redundancy, union information and plain
// mutual information of feature subsets about one target variable.
//
// Every function reports in the distribution's configured log units.

#include <cstddef>
#include <span>
#include <vector>

#include "pidtrunc/distribution.hpp"

namespace pidtrunc {

/// Non-empty set of feature variables, kept sorted by index.
class SourceSubset {
 public:
  SourceSubset(std::vector<VariableId> members);
  SourceSubset(std::initializer_list<VariableId> members)
      : SourceSubset(std::vector<VariableId>(members)) {}

  std::span<const VariableId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(VariableId id) const noexcept;

  bool operator==(const SourceSubset&) const = default;
  auto operator<=>(const SourceSubset&) const = default;

 private:
  std::vector<VariableId> members_;
};

/// Probability table of (source state, target outcome) pairs for one
/// source subset: p(c, y) at [c * outcomes + y].
struct SourceTargetTable {
  std::size_t source_states = 0;
  std::size_t outcomes = 0;
  std::vector<double> joint;

  double at(std::size_t c, std::size_t y) const { return joint[c * outcomes + y]; }
  std::vector<double> target_marginal() const;
  std::vector<double> source_marginal() const;
};

SourceTargetTable source_target_table(const DiscreteJointDistribution& dist,
                                      const SourceSubset& source, VariableId target);

/// p(y) · I(Y=y : A) in nats for every outcome y, computed from the table
/// alone as sum_c p(c,y) log[p(c,y) / (p(c) p(y))]. Zero cells are skipped.
std::vector<double> weighted_specific_information(const SourceTargetTable& table);

struct SpecificInfoTable {
  std::vector<std::size_t> outcomes;         // target values with p(y) > 0
  std::vector<double> target_probs;          // p(y) for each listed outcome
  std::vector<std::vector<double>> values;   // [outcome][source] I(Y=y : A_i)
};

SpecificInfoTable specific_information_table(const DiscreteJointDistribution& dist,
                                             VariableId target,
                                             std::span<const SourceSubset> sources);

/// Mutual information between the joint feature set and the target.
double mutual_information(const DiscreteJointDistribution& dist, const SourceSubset& features,
                          VariableId target);

/// I(Y=y : A) = KL(p(a|y) || p(a)). Throws DomainError if p(y) = 0.
double specific_information(const DiscreteJointDistribution& dist, VariableId target,
                            std::size_t y_value, const SourceSubset& source);

/// Expected minimum specific information over the sources.
double i_min(const DiscreteJointDistribution& dist, VariableId target,
             std::span<const SourceSubset> sources);

/// Union information as the expected maximum specific information.
double i_union_max(const DiscreteJointDistribution& dist, VariableId target,
                   std::span<const SourceSubset> sources);

inline constexpr std::size_t kMaxInclusionExclusionSources = 20;

/// Union information as the inclusion-exclusion sum of I_min over every
/// non-empty sub-collection of the sources. Exponential in the number of
/// sources; kept as an independent check on i_union_max.
double i_union_inclexcl(const DiscreteJointDistribution& dist, VariableId target,
                        std::span<const SourceSubset> sources);

}  // namespace pidtrunc
