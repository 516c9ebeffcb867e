#pragma once

// Dense joint probability tables over finite-alphabet variables, sample
// sets drawn from them, and the empirical tables built back from samples.
//
// Tables are stored in mixed-radix row-major order: the last variable
// varies fastest.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pidtrunc {

enum class LogBase { nats, bits };

/// Factor that converts a value in nats into `base` units.
double nats_to(LogBase base) noexcept;
std::string_view to_string(LogBase base) noexcept;
LogBase parse_log_base(std::string_view text);

/// Position of a variable inside one distribution or sample set.
struct VariableId {
  std::size_t index = 0;
  auto operator<=>(const VariableId&) const = default;
};

struct Alphabet {
  std::size_t cardinality = 1;
  std::vector<std::string> labels;  // empty, or one distinct label per value
};

struct Variable {
  std::string name;
  Alphabet alphabet;

  std::size_t cardinality() const noexcept { return alphabet.cardinality; }
};

/// Mixed-radix codec for a list of cardinalities, last digit fastest.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices);

  std::size_t size() const noexcept { return size_; }
  std::size_t digits() const noexcept { return radices_.size(); }
  std::span<const std::size_t> radices() const noexcept { return radices_; }
  std::span<const std::size_t> strides() const noexcept { return strides_; }

  std::size_t encode(std::span<const std::size_t> values) const;
  void decode(std::size_t index, std::span<std::size_t> out) const;
  std::size_t digit(std::size_t index, std::size_t position) const noexcept {
    return (index / strides_[position]) % radices_[position];
  }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

void validate_variables(std::span<const Variable> variables);

class DiscreteJointDistribution {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  /// Takes ownership of an already-normalized table. Throws ArgumentError
  /// when the table has the wrong length, a negative entry, or does not sum
  /// to one within kNormalizationTolerance.
  DiscreteJointDistribution(std::vector<Variable> variables, std::vector<double> probs,
                            LogBase log_base = LogBase::nats);

  /// Scales non-negative weights to a probability table.
  static DiscreteJointDistribution normalized(std::vector<Variable> variables,
                                              std::vector<double> weights,
                                              LogBase log_base = LogBase::nats);

  std::size_t num_variables() const noexcept { return variables_.size(); }
  std::span<const Variable> variables() const noexcept { return variables_; }
  const Variable& variable(VariableId id) const;
  std::size_t cardinality(VariableId id) const { return variable(id).cardinality(); }
  VariableId id_of(std::string_view name) const;
  std::vector<VariableId> all_ids() const;

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double prob(std::span<const std::size_t> values) const { return probs_[radix_.encode(values)]; }
  const MixedRadix& radix() const noexcept { return radix_; }

  LogBase log_base() const noexcept { return log_base_; }
  DiscreteJointDistribution with_log_base(LogBase base) const;

 private:
  std::vector<Variable> variables_;
  MixedRadix radix_;
  std::vector<double> probs_;
  LogBase log_base_;
};

/// Sums out every variable not in `keep`. The result lists the kept
/// variables in their original order.
DiscreteJointDistribution marginalize(const DiscreteJointDistribution& dist,
                                      std::span<const VariableId> keep);

/// Distribution of the other variables given `given == value`.
/// Throws DomainError (carrying `value`) if that outcome has probability 0.
DiscreteJointDistribution condition(const DiscreteJointDistribution& dist, VariableId given,
                                    std::size_t value);

/// Replaces `members` by one joint variable named `name`, appended last.
/// The joint value is the mixed-radix code of the members in the order given.
DiscreteJointDistribution merge_variables(const DiscreteJointDistribution& dist,
                                          std::span<const VariableId> members,
                                          std::string name);

/// Same table with variables relabeled (sizes must match).
DiscreteJointDistribution rename_variables(const DiscreteJointDistribution& dist,
                                           std::span<const std::string> names);

/// Reorders variables: result variable i is `dist` variable order[i].
DiscreteJointDistribution permute_variables(const DiscreteJointDistribution& dist,
                                            std::span<const VariableId> order);

class SampleSet {
 public:
  /// `values` holds rows back to back, one alphabet index per variable.
  SampleSet(std::vector<Variable> variables, std::vector<std::uint32_t> values);

  std::size_t num_variables() const noexcept { return variables_.size(); }
  std::size_t num_rows() const noexcept { return values_.size() / variables_.size(); }
  std::span<const Variable> variables() const noexcept { return variables_; }
  VariableId id_of(std::string_view name) const;
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {values_.data() + i * variables_.size(), variables_.size()};
  }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

 private:
  std::vector<Variable> variables_;
  std::vector<std::uint32_t> values_;
};

SampleSet merge_variables(const SampleSet& samples, std::span<const VariableId> members,
                          std::string name);

/// `n` i.i.d. categorical draws from the dense table; pure in (dist, n, seed).
SampleSet sample(const DiscreteJointDistribution& dist, std::size_t n, std::uint64_t seed);

/// Plug-in table p̂ = count / N_s. A missing sample count marks the
/// asymptotic case N_s -> infinity, where finite-sample corrections vanish.
struct EmpiricalDistribution {
  DiscreteJointDistribution dist;
  std::optional<std::uint64_t> sample_count;

  static EmpiricalDistribution asymptotic(DiscreteJointDistribution dist) {
    return {std::move(dist), std::nullopt};
  }
};

EmpiricalDistribution empirical(const SampleSet& samples, LogBase log_base = LogBase::nats);

/// Sum of |p - q| / 2 over cells; both tables must share a layout.
double total_variation(const DiscreteJointDistribution& p, const DiscreteJointDistribution& q);

}  // namespace pidtrunc
