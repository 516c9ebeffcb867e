#include "pidtrunc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <utility>

#include "pidtrunc/errors.hpp"
#include "pidtrunc/random.hpp"

namespace pidtrunc {

double nats_to(LogBase base) noexcept {
  return base == LogBase::bits ? 1.0 / std::numbers::ln2 : 1.0;
}

std::string_view to_string(LogBase base) noexcept {
  return base == LogBase::bits ? "bits" : "nats";
}

LogBase parse_log_base(std::string_view text) {
  if (text == "nats") return LogBase::nats;
  if (text == "bits") return LogBase::bits;
  throw ArgumentError("unknown log base '" + std::string(text) + "' (expected nats or bits)");
}

MixedRadix::MixedRadix(std::vector<std::size_t> radices)
    : radices_(std::move(radices)), strides_(radices_.size(), 1) {
  for (std::size_t i = radices_.size(); i-- > 0;) {
    if (radices_[i] == 0) throw ArgumentError("mixed radix digit with zero cardinality");
    strides_[i] = size_;
    size_ *= radices_[i];
  }
}

std::size_t MixedRadix::encode(std::span<const std::size_t> values) const {
  if (values.size() != radices_.size()) throw ArgumentError("wrong number of digits");
  std::size_t index = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= radices_[i]) throw ArgumentError("digit outside its alphabet");
    index += values[i] * strides_[i];
  }
  return index;
}

void MixedRadix::decode(std::size_t index, std::span<std::size_t> out) const {
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    out[i] = index / strides_[i];
    index -= out[i] * strides_[i];
  }
}

namespace {

std::vector<std::size_t> radices_of(std::span<const Variable> variables) {
  std::vector<std::size_t> r;
  r.reserve(variables.size());
  for (const auto& v : variables) r.push_back(v.cardinality());
  return r;
}

// For every cell of `from`, the index of the cell it maps to once only the
// variables at `positions` are kept (in that order).
std::vector<std::size_t> projection_map(const MixedRadix& from,
                                        std::span<const std::size_t> positions) {
  std::vector<std::size_t> sub_radices;
  for (auto p : positions) sub_radices.push_back(from.radices()[p]);
  const MixedRadix to(sub_radices);

  std::vector<std::size_t> weight(from.digits(), 0);
  for (std::size_t j = 0; j < positions.size(); ++j) weight[positions[j]] = to.strides()[j];

  std::vector<std::size_t> map(from.size());
  std::vector<std::size_t> digits(from.digits(), 0);
  std::size_t target = 0;
  for (std::size_t cell = 0; cell < from.size(); ++cell) {
    map[cell] = target;
    // odometer increment, last digit fastest
    for (std::size_t d = from.digits(); d-- > 0;) {
      if (++digits[d] < from.radices()[d]) {
        target += weight[d];
        break;
      }
      target -= weight[d] * (digits[d] - 1);
      digits[d] = 0;
    }
  }
  return map;
}

std::vector<std::size_t> checked_positions(std::span<const VariableId> ids, std::size_t count,
                                           bool sorted_unique) {
  std::vector<std::size_t> pos;
  pos.reserve(ids.size());
  for (auto id : ids) {
    if (id.index >= count) {
      throw ArgumentError("unknown variable id " + std::to_string(id.index));
    }
    pos.push_back(id.index);
  }
  if (sorted_unique) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  } else {
    std::set<std::size_t> seen(pos.begin(), pos.end());
    if (seen.size() != pos.size()) throw ArgumentError("duplicate variable id");
  }
  return pos;
}

}  // namespace

void validate_variables(std::span<const Variable> variables) {
  if (variables.empty()) throw ArgumentError("a distribution needs at least one variable");
  std::set<std::string_view> names;
  for (const auto& v : variables) {
    if (v.alphabet.cardinality < 1) {
      throw ArgumentError("variable '" + v.name + "' has cardinality 0");
    }
    if (!v.alphabet.labels.empty()) {
      if (v.alphabet.labels.size() != v.alphabet.cardinality) {
        throw ArgumentError("variable '" + v.name + "' label count differs from cardinality");
      }
      std::set<std::string_view> labels(v.alphabet.labels.begin(), v.alphabet.labels.end());
      if (labels.size() != v.alphabet.labels.size()) {
        throw ArgumentError("variable '" + v.name + "' has duplicate labels");
      }
    }
    if (!names.insert(v.name).second) throw ArgumentError("duplicate variable name '" + v.name + "'");
  }
}

DiscreteJointDistribution::DiscreteJointDistribution(std::vector<Variable> variables,
                                                     std::vector<double> probs, LogBase log_base)
    : variables_(std::move(variables)), probs_(std::move(probs)), log_base_(log_base) {
  validate_variables(variables_);
  radix_ = MixedRadix(radices_of(variables_));
  if (probs_.size() != radix_.size()) {
    throw ArgumentError("table has " + std::to_string(probs_.size()) + " entries, expected " +
                        std::to_string(radix_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ArgumentError("negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ArgumentError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

DiscreteJointDistribution DiscreteJointDistribution::normalized(std::vector<Variable> variables,
                                                                std::vector<double> weights,
                                                                LogBase log_base) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("negative or non-finite weight");
    total += w;
  }
  if (!(total > 0.0)) throw ArgumentError("weights sum to zero");
  for (double& w : weights) w /= total;
  return {std::move(variables), std::move(weights), log_base};
}

const Variable& DiscreteJointDistribution::variable(VariableId id) const {
  if (id.index >= variables_.size()) {
    throw ArgumentError("unknown variable id " + std::to_string(id.index));
  }
  return variables_[id.index];
}

VariableId DiscreteJointDistribution::id_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return VariableId{i};
  }
  throw ArgumentError("unknown variable '" + std::string(name) + "'");
}

std::vector<VariableId> DiscreteJointDistribution::all_ids() const {
  std::vector<VariableId> ids(variables_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = VariableId{i};
  return ids;
}

DiscreteJointDistribution DiscreteJointDistribution::with_log_base(LogBase base) const {
  DiscreteJointDistribution copy = *this;
  copy.log_base_ = base;
  return copy;
}

DiscreteJointDistribution marginalize(const DiscreteJointDistribution& dist,
                                      std::span<const VariableId> keep) {
  if (keep.empty()) throw ArgumentError("marginalize needs at least one variable to keep");
  const auto positions = checked_positions(keep, dist.num_variables(), true);

  std::vector<Variable> vars;
  for (auto p : positions) vars.push_back(dist.variables()[p]);
  if (positions.size() == dist.num_variables()) {
    return {std::move(vars), std::vector<double>(dist.probs().begin(), dist.probs().end()),
            dist.log_base()};
  }

  const auto map = projection_map(dist.radix(), positions);
  std::vector<double> probs(MixedRadix(radices_of(vars)).size(), 0.0);
  const auto src = dist.probs();
  for (std::size_t cell = 0; cell < src.size(); ++cell) probs[map[cell]] += src[cell];
  return {std::move(vars), std::move(probs), dist.log_base()};
}

DiscreteJointDistribution condition(const DiscreteJointDistribution& dist, VariableId given,
                                    std::size_t value) {
  const auto& gv = dist.variable(given);
  if (value >= gv.cardinality()) {
    throw ArgumentError("value " + std::to_string(value) + " outside alphabet of '" + gv.name + "'");
  }
  if (dist.num_variables() < 2) {
    throw ArgumentError("cannot condition a single-variable distribution on itself");
  }

  std::vector<Variable> vars;
  for (std::size_t i = 0; i < dist.num_variables(); ++i) {
    if (i != given.index) vars.push_back(dist.variables()[i]);
  }
  std::vector<double> probs;
  probs.reserve(dist.size() / gv.cardinality());
  double mass = 0.0;
  const auto src = dist.probs();
  for (std::size_t cell = 0; cell < src.size(); ++cell) {
    if (dist.radix().digit(cell, given.index) == value) {
      probs.push_back(src[cell]);
      mass += src[cell];
    }
  }
  if (!(mass > 0.0)) {
    throw DomainError("cannot condition on " + gv.name + "=" + std::to_string(value) +
                          ": outcome has probability 0",
                      value);
  }
  for (double& p : probs) p /= mass;
  return {std::move(vars), std::move(probs), dist.log_base()};
}

namespace {

struct MergeLayout {
  std::vector<Variable> variables;
  std::vector<std::size_t> rest;     // positions kept as they are
  std::vector<std::size_t> members;  // positions folded into the joint variable
};

MergeLayout merge_layout(std::span<const Variable> vars, std::span<const VariableId> members,
                         std::string name) {
  if (members.empty()) throw ArgumentError("merge needs at least one member variable");
  MergeLayout layout;
  layout.members = checked_positions(members, vars.size(), false);
  std::size_t joint_card = 1;
  for (auto p : layout.members) joint_card *= vars[p].cardinality();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (std::find(layout.members.begin(), layout.members.end(), i) == layout.members.end()) {
      layout.rest.push_back(i);
      layout.variables.push_back(vars[i]);
    }
  }
  layout.variables.push_back(Variable{std::move(name), Alphabet{joint_card, {}}});
  validate_variables(layout.variables);
  return layout;
}

}  // namespace

DiscreteJointDistribution merge_variables(const DiscreteJointDistribution& dist,
                                          std::span<const VariableId> members, std::string name) {
  auto layout = merge_layout(dist.variables(), members, std::move(name));
  std::vector<std::size_t> order = layout.rest;
  order.insert(order.end(), layout.members.begin(), layout.members.end());
  // Folding the members into one trailing digit keeps the same mixed-radix
  // code, so the merge is the permutation that moves them to the end.
  std::vector<VariableId> ids;
  for (auto p : order) ids.push_back(VariableId{p});
  auto permuted = permute_variables(dist, ids);
  const auto src = permuted.probs();
  return {std::move(layout.variables), std::vector<double>(src.begin(), src.end()),
          dist.log_base()};
}

DiscreteJointDistribution rename_variables(const DiscreteJointDistribution& dist,
                                           std::span<const std::string> names) {
  if (names.size() != dist.num_variables()) throw ArgumentError("rename: wrong number of names");
  std::vector<Variable> vars(dist.variables().begin(), dist.variables().end());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i].name = names[i];
  return {std::move(vars), std::vector<double>(dist.probs().begin(), dist.probs().end()),
          dist.log_base()};
}

DiscreteJointDistribution permute_variables(const DiscreteJointDistribution& dist,
                                            std::span<const VariableId> order) {
  if (order.size() != dist.num_variables()) throw ArgumentError("permutation has wrong length");
  const auto positions = checked_positions(order, dist.num_variables(), false);
  std::vector<Variable> vars;
  for (auto p : positions) vars.push_back(dist.variables()[p]);
  const auto map = projection_map(dist.radix(), positions);
  std::vector<double> probs(dist.size());
  const auto src = dist.probs();
  for (std::size_t cell = 0; cell < src.size(); ++cell) probs[map[cell]] = src[cell];
  return {std::move(vars), std::move(probs), dist.log_base()};
}

SampleSet::SampleSet(std::vector<Variable> variables, std::vector<std::uint32_t> values)
    : variables_(std::move(variables)), values_(std::move(values)) {
  validate_variables(variables_);
  if (values_.empty() || values_.size() % variables_.size() != 0) {
    throw ArgumentError("a sample set needs at least one complete row");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto& v = variables_[i % variables_.size()];
    if (values_[i] >= v.cardinality()) {
      throw ArgumentError("row " + std::to_string(i / variables_.size()) + ": value " +
                          std::to_string(values_[i]) + " outside alphabet of '" + v.name + "'");
    }
  }
}

VariableId SampleSet::id_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return VariableId{i};
  }
  throw ArgumentError("unknown variable '" + std::string(name) + "'");
}

SampleSet merge_variables(const SampleSet& samples, std::span<const VariableId> members,
                          std::string name) {
  auto layout = merge_layout(samples.variables(), members, std::move(name));
  std::vector<std::uint32_t> values;
  values.reserve(samples.num_rows() * layout.variables.size());
  for (std::size_t r = 0; r < samples.num_rows(); ++r) {
    const auto row = samples.row(r);
    for (auto p : layout.rest) values.push_back(row[p]);
    std::uint32_t joint = 0;
    for (auto p : layout.members) {
      joint = joint * static_cast<std::uint32_t>(samples.variables()[p].cardinality()) + row[p];
    }
    values.push_back(joint);
  }
  return {std::move(layout.variables), std::move(values)};
}

SampleSet sample(const DiscreteJointDistribution& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("sample size must be at least 1");
  const auto probs = dist.probs();
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const double total = cumulative.back();

  Rng rng(seed);
  const std::size_t width = dist.num_variables();
  std::vector<std::uint32_t> values(n * width);
  std::vector<std::size_t> digits(width);
  for (std::size_t i = 0; i < n; ++i) {
    // cell c is drawn iff cumulative[c-1] <= u < cumulative[c], so cells of
    // probability zero are never produced
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    while (probs[static_cast<std::size_t>(it - cumulative.begin())] == 0.0) --it;
    dist.radix().decode(static_cast<std::size_t>(it - cumulative.begin()), digits);
    for (std::size_t j = 0; j < width; ++j) {
      values[i * width + j] = static_cast<std::uint32_t>(digits[j]);
    }
  }
  return {std::vector<Variable>(dist.variables().begin(), dist.variables().end()),
          std::move(values)};
}

EmpiricalDistribution empirical(const SampleSet& samples, LogBase log_base) {
  std::vector<Variable> vars(samples.variables().begin(), samples.variables().end());
  const MixedRadix radix(radices_of(vars));
  std::vector<std::uint64_t> counts(radix.size(), 0);
  for (std::size_t r = 0; r < samples.num_rows(); ++r) {
    const auto row = samples.row(r);
    std::size_t index = 0;
    for (std::size_t j = 0; j < row.size(); ++j) index += row[j] * radix.strides()[j];
    ++counts[index];
  }
  const auto n = static_cast<std::uint64_t>(samples.num_rows());
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return {DiscreteJointDistribution(std::move(vars), std::move(probs), log_base), n};
}

double total_variation(const DiscreteJointDistribution& p, const DiscreteJointDistribution& q) {
  if (p.size() != q.size() || p.num_variables() != q.num_variables()) {
    throw ArgumentError("total_variation: tables have different layouts");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p.probs()[i] - q.probs()[i]);
  return 0.5 * sum;
}

}  // namespace pidtrunc
