#include "pidtrunc/synergy.hpp"

#include <algorithm>
#include <string>

#include "pidtrunc/errors.hpp"

namespace pidtrunc {

namespace {

constexpr std::size_t kGuardFeatureCount = 25;
constexpr std::size_t kGuardOrder = 3;

void check_order(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw ArgumentError("truncation order k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(n) + "]");
  }
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SubsetFamily enumerate_family(std::span<const VariableId> features, std::size_t k) {
  const std::size_t n = features.size();
  check_order(n, k);
  if (n > kGuardFeatureCount && k > kGuardOrder) {
    throw ArgumentError("refusing to enumerate C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") subsets");
  }
  {
    std::vector<VariableId> sorted(features.begin(), features.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ArgumentError("feature list contains a duplicate");
    }
  }

  SubsetFamily family{k, {}};
  family.subsets.reserve(binomial(n, k));
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<VariableId> members(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) members[i] = features[pick[i]];
    family.subsets.emplace_back(members);
    // advance to the next k-combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return family;
}

double i_k(const DiscreteJointDistribution& dist, VariableId target,
           std::span<const VariableId> features, std::size_t k) {
  const auto family = enumerate_family(features, k);
  return i_union_max(dist, target, family.subsets);
}

double i_k_from_marginals(std::span<const DiscreteJointDistribution> marginals,
                          std::string_view target_name) {
  if (marginals.empty()) throw ArgumentError("no marginals given");
  const LogBase units = marginals.front().log_base();
  std::vector<std::vector<double>> w;
  std::vector<double> py;
  for (const auto& m : marginals) {
    if (m.log_base() != units) throw ArgumentError("marginals mix log units");
    const VariableId target = m.id_of(target_name);
    std::vector<VariableId> rest;
    for (auto id : m.all_ids()) {
      if (id != target) rest.push_back(id);
    }
    const auto table = source_target_table(m, SourceSubset(rest), target);
    if (py.empty()) {
      py = table.target_marginal();
    } else if (table.outcomes != py.size()) {
      throw ArgumentError("marginals disagree on the target alphabet");
    }
    w.push_back(weighted_specific_information(table));
  }
  double total = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (!(py[y] > 0.0)) continue;
    double best = w[0][y];
    for (std::size_t i = 1; i < w.size(); ++i) best = std::max(best, w[i][y]);
    total += best;
  }
  return total * nats_to(units);
}

IkProfile i_k_profile(const DiscreteJointDistribution& dist, VariableId target,
                      std::span<const VariableId> features, std::size_t k_max) {
  const std::size_t n = features.size();
  check_order(n, k_max);
  IkProfile profile;
  profile.units = dist.log_base();
  for (std::size_t k = 1; k <= k_max; ++k) profile.values.push_back(i_k(dist, target, features, k));
  profile.total_mi =
      mutual_information(dist, SourceSubset(std::vector<VariableId>(features.begin(), features.end())),
                         target);
  if (k_max == n) {
    for (std::size_t k = 1; k < n; ++k) profile.gaps.push_back(profile.values.back() - profile.at(k));
  }
  return profile;
}

SelectionReport select_features(const DiscreteJointDistribution& dist, VariableId target,
                                std::span<const VariableId> features, std::size_t k,
                                const SelectionOptions& options) {
  const auto family = enumerate_family(features, k);
  const auto table = specific_information_table(dist, target, family.subsets);

  SelectionReport report;
  report.k = k;
  report.units = dist.log_base();
  std::vector<VariableId> relevant;
  for (std::size_t yi = 0; yi < table.outcomes.size(); ++yi) {
    const auto& row = table.values[yi];
    OutcomeArgmax arg;
    arg.outcome = table.outcomes[yi];
    arg.value = *std::max_element(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] >= arg.value - options.tie_tolerance) {
        arg.subsets.push_back(family.subsets[i]);
        for (auto id : family.subsets[i].members()) relevant.push_back(id);
      }
    }
    report.per_outcome_argmax.push_back(std::move(arg));
  }
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());

  report.relevant = relevant;
  report.i_k_full = i_union_max(dist, target, family.subsets);
  report.i_k_selected = i_k(dist, target, relevant, k);
  if (options.prune) {
    report.pruned = greedy_backward_prune(dist, target, relevant, k, options.prune_tolerance);
    report.i_k_pruned = i_k(dist, target, report.pruned, k);
  } else {
    report.pruned = relevant;
    report.i_k_pruned = report.i_k_selected;
  }
  return report;
}

std::vector<VariableId> greedy_backward_prune(const DiscreteJointDistribution& dist,
                                              VariableId target,
                                              std::span<const VariableId> features,
                                              std::size_t k, double tolerance) {
  std::vector<VariableId> current(features.begin(), features.end());
  check_order(current.size(), k);
  const double reference = i_k(dist, target, current, k);
  while (current.size() > k) {
    std::size_t best = current.size();
    double best_loss = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::vector<VariableId> candidate = current;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
      const double loss = reference - i_k(dist, target, candidate, k);
      if (best == current.size() || loss < best_loss) {
        best = i;
        best_loss = loss;
      }
    }
    // cumulative loss, measured against the starting set
    if (best_loss > tolerance) break;
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return current;
}

}  // namespace pidtrunc
