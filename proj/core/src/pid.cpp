#include "pidtrunc/pid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pidtrunc/errors.hpp"

namespace pidtrunc {

SourceSubset::SourceSubset(std::vector<VariableId> members) : members_(std::move(members)) {
  if (members_.empty()) throw ArgumentError("a source subset needs at least one feature");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw ArgumentError("source subset lists a feature twice");
  }
}

bool SourceSubset::contains(VariableId id) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::vector<double> SourceTargetTable::target_marginal() const {
  std::vector<double> py(outcomes, 0.0);
  for (std::size_t c = 0; c < source_states; ++c) {
    for (std::size_t y = 0; y < outcomes; ++y) py[y] += at(c, y);
  }
  return py;
}

std::vector<double> SourceTargetTable::source_marginal() const {
  std::vector<double> pc(source_states, 0.0);
  for (std::size_t c = 0; c < source_states; ++c) {
    for (std::size_t y = 0; y < outcomes; ++y) pc[c] += at(c, y);
  }
  return pc;
}

SourceTargetTable source_target_table(const DiscreteJointDistribution& dist,
                                      const SourceSubset& source, VariableId target) {
  const auto& tv = dist.variable(target);
  if (source.contains(target)) {
    throw ArgumentError("target '" + tv.name + "' is also listed as a feature");
  }
  SourceTargetTable table;
  table.outcomes = tv.cardinality();
  table.source_states = 1;
  for (auto id : source.members()) table.source_states *= dist.cardinality(id);
  table.joint.assign(table.source_states * table.outcomes, 0.0);

  const auto& radix = dist.radix();
  const auto probs = dist.probs();
  for (std::size_t cell = 0; cell < probs.size(); ++cell) {
    std::size_t c = 0;
    for (auto id : source.members()) {
      c = c * radix.radices()[id.index] + radix.digit(cell, id.index);
    }
    table.joint[c * table.outcomes + radix.digit(cell, target.index)] += probs[cell];
  }
  return table;
}

std::vector<double> weighted_specific_information(const SourceTargetTable& table) {
  const auto py = table.target_marginal();
  const auto pc = table.source_marginal();
  std::vector<double> w(table.outcomes, 0.0);
  for (std::size_t y = 0; y < table.outcomes; ++y) {
    if (!(py[y] > 0.0)) continue;
    double sum = 0.0;
    for (std::size_t c = 0; c < table.source_states; ++c) {
      const double pcy = table.at(c, y);
      if (pcy > 0.0) sum += pcy * std::log(pcy / (pc[c] * py[y]));
    }
    w[y] = sum;
  }
  return w;
}

namespace {

void require_sources(std::span<const SourceSubset> sources) {
  if (sources.empty()) throw ArgumentError("at least one source subset is required");
}

// Weighted specific information per (outcome, source), plus p(y).
struct WeightedTable {
  std::vector<double> py;
  std::vector<std::vector<double>> w;  // [source][y]
};

WeightedTable weighted_table(const DiscreteJointDistribution& dist, VariableId target,
                             std::span<const SourceSubset> sources) {
  WeightedTable out;
  out.w.reserve(sources.size());
  for (const auto& s : sources) {
    const auto table = source_target_table(dist, s, target);
    if (out.py.empty()) out.py = table.target_marginal();
    out.w.push_back(weighted_specific_information(table));
  }
  return out;
}

template <typename Pick>
double expected_extreme(const WeightedTable& t, Pick pick) {
  double total = 0.0;
  for (std::size_t y = 0; y < t.py.size(); ++y) {
    if (!(t.py[y] > 0.0)) continue;
    double best = t.w[0][y];
    for (std::size_t i = 1; i < t.w.size(); ++i) best = pick(best, t.w[i][y]);
    total += best;
  }
  return total;
}

}  // namespace

SpecificInfoTable specific_information_table(const DiscreteJointDistribution& dist,
                                             VariableId target,
                                             std::span<const SourceSubset> sources) {
  require_sources(sources);
  const auto t = weighted_table(dist, target, sources);
  const double scale = nats_to(dist.log_base());
  SpecificInfoTable out;
  for (std::size_t y = 0; y < t.py.size(); ++y) {
    if (!(t.py[y] > 0.0)) continue;
    out.outcomes.push_back(y);
    out.target_probs.push_back(t.py[y]);
    std::vector<double> row(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) row[i] = t.w[i][y] / t.py[y] * scale;
    out.values.push_back(std::move(row));
  }
  return out;
}

double mutual_information(const DiscreteJointDistribution& dist, const SourceSubset& features,
                          VariableId target) {
  const auto table = source_target_table(dist, features, target);
  // marginals taken from the full table rather than from the joint table
  const auto px = marginalize(dist, features.members());
  const VariableId target_only[] = {target};
  const auto py = marginalize(dist, target_only);
  // marginalize keeps variables in index order, which is the order the
  // joint table encodes the feature state in
  double mi = 0.0;
  for (std::size_t c = 0; c < table.source_states; ++c) {
    for (std::size_t y = 0; y < table.outcomes; ++y) {
      const double pxy = table.at(c, y);
      if (pxy > 0.0) mi += pxy * std::log(pxy / (px.probs()[c] * py.probs()[y]));
    }
  }
  return mi * nats_to(dist.log_base());
}

double specific_information(const DiscreteJointDistribution& dist, VariableId target,
                            std::size_t y_value, const SourceSubset& source) {
  const auto& tv = dist.variable(target);
  if (y_value >= tv.cardinality()) {
    throw ArgumentError("value " + std::to_string(y_value) + " outside alphabet of '" + tv.name +
                        "'");
  }
  const auto table = source_target_table(dist, source, target);
  const auto py = table.target_marginal();
  if (!(py[y_value] > 0.0)) {
    throw DomainError("specific information undefined: p(" + tv.name + "=" +
                          std::to_string(y_value) + ") = 0",
                      y_value);
  }
  return weighted_specific_information(table)[y_value] / py[y_value] * nats_to(dist.log_base());
}

double i_min(const DiscreteJointDistribution& dist, VariableId target,
             std::span<const SourceSubset> sources) {
  require_sources(sources);
  const auto t = weighted_table(dist, target, sources);
  return expected_extreme(t, [](double a, double b) { return std::min(a, b); }) *
         nats_to(dist.log_base());
}

double i_union_max(const DiscreteJointDistribution& dist, VariableId target,
                   std::span<const SourceSubset> sources) {
  require_sources(sources);
  const auto t = weighted_table(dist, target, sources);
  return expected_extreme(t, [](double a, double b) { return std::max(a, b); }) *
         nats_to(dist.log_base());
}

double i_union_inclexcl(const DiscreteJointDistribution& dist, VariableId target,
                        std::span<const SourceSubset> sources) {
  require_sources(sources);
  if (sources.size() > kMaxInclusionExclusionSources) {
    throw ArgumentError("inclusion-exclusion refused for " + std::to_string(sources.size()) +
                        " sources (limit " + std::to_string(kMaxInclusionExclusionSources) + ")");
  }
  const auto t = weighted_table(dist, target, sources);
  const std::size_t n = sources.size();
  double total = 0.0;
  WeightedTable sub{t.py, {}};
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    sub.w.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) sub.w.push_back(t.w[i]);
    }
    const double term = expected_extreme(sub, [](double a, double b) { return std::min(a, b); });
    total += (sub.w.size() % 2 == 1) ? term : -term;
  }
  return total * nats_to(dist.log_base());
}

}  // namespace pidtrunc
