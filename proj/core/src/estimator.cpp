#include "pidtrunc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pidtrunc/errors.hpp"
#include "pidtrunc/io.hpp"

namespace pidtrunc {

BiasTerms bias_terms(const SourceTargetTable& table, std::uint64_t sample_count,
                     BiasCellRange range) {
  if (sample_count == 0) throw ArgumentError("bias correction needs a positive sample count");
  const double two_n = 2.0 * static_cast<double>(sample_count);
  const auto py = table.target_marginal();
  const auto pc = table.source_marginal();
  BiasTerms terms{std::vector<double>(table.outcomes, 0.0),
                  std::vector<double>(table.outcomes, 0.0),
                  std::vector<double>(table.outcomes, 0.0)};
  for (std::size_t y = 0; y < table.outcomes; ++y) {
    if (!(py[y] > 0.0)) continue;
    for (std::size_t c = 0; c < table.source_states; ++c) {
      const double pyc = table.at(c, y);
      if (range == BiasCellRange::observed && !(pyc > 0.0)) continue;
      terms.joint[y] += (1.0 - pyc) / two_n;
      terms.target[y] += pyc * (1.0 - py[y]) / (two_n * py[y]);
      if (pc[c] > 0.0) terms.source[y] += pyc * (1.0 - pc[c]) / (two_n * pc[c]);
    }
  }
  return terms;
}

std::vector<double> weighted_bias(const SourceTargetTable& table, std::uint64_t sample_count,
                                  BiasCellRange range) {
  const auto terms = bias_terms(table, sample_count, range);
  std::vector<double> out(table.outcomes);
  for (std::size_t y = 0; y < out.size(); ++y) out[y] = terms.joint[y] + terms.target[y] + terms.source[y];
  return out;
}

namespace {

std::vector<double> checked_target_marginal(const SourceTargetTable& table,
                                            const DiscreteJointDistribution& dist,
                                            VariableId target, std::size_t y_value) {
  const auto& tv = dist.variable(target);
  if (y_value >= tv.cardinality()) {
    throw ArgumentError("value " + std::to_string(y_value) + " outside alphabet of '" + tv.name +
                        "'");
  }
  auto py = table.target_marginal();
  if (!(py[y_value] > 0.0)) {
    throw DomainError("outcome " + tv.name + "=" + std::to_string(y_value) +
                          " never observed; its estimate is undefined",
                      y_value);
  }
  return py;
}

}  // namespace

double plugin_specific_information(const EmpiricalDistribution& emp, VariableId target,
                                   std::size_t y_value, const SourceSubset& source) {
  const auto table = source_target_table(emp.dist, source, target);
  const auto py = checked_target_marginal(table, emp.dist, target, y_value);
  return weighted_specific_information(table)[y_value] / py[y_value] *
         nats_to(emp.dist.log_base());
}

double bias_delta(const EmpiricalDistribution& emp, VariableId target, std::size_t y_value,
                  const SourceSubset& source) {
  const auto table = source_target_table(emp.dist, source, target);
  const auto py = checked_target_marginal(table, emp.dist, target, y_value);
  if (!emp.sample_count) return 0.0;
  return weighted_bias(table, *emp.sample_count)[y_value] / py[y_value] *
         nats_to(emp.dist.log_base());
}

BiasCorrectedEstimate corrected_specific_information(const EmpiricalDistribution& emp,
                                                     VariableId target, std::size_t y_value,
                                                     const SourceSubset& source) {
  BiasCorrectedEstimate e;
  e.raw = plugin_specific_information(emp, target, y_value, source);
  e.delta = bias_delta(emp, target, y_value, source);
  e.corrected = e.raw - e.delta;
  e.sample_count = emp.sample_count;
  return e;
}

double i_k_estimate(const EmpiricalDistribution& emp, VariableId target,
                    std::span<const VariableId> features, std::size_t k, bool correct_bias,
                    BiasCellRange range) {
  const auto family = enumerate_family(features, k);
  const bool correcting = correct_bias && emp.sample_count.has_value();
  std::vector<double> py;
  std::vector<double> best;
  for (const auto& subset : family.subsets) {
    const auto table = source_target_table(emp.dist, subset, target);
    auto score = weighted_specific_information(table);
    if (correcting) {
      const auto bias = weighted_bias(table, *emp.sample_count, range);
      for (std::size_t y = 0; y < score.size(); ++y) score[y] -= bias[y];
    }
    if (py.empty()) {
      py = table.target_marginal();
      best = std::move(score);
    } else {
      for (std::size_t y = 0; y < score.size(); ++y) best[y] = std::max(best[y], score[y]);
    }
  }
  double total = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > 0.0) total += best[y];
  }
  return total * nats_to(emp.dist.log_base());
}

double i_k_estimate(const SampleSet& samples, VariableId target,
                    std::span<const VariableId> features, std::size_t k, bool correct_bias) {
  return i_k_estimate(empirical(samples), target, features, k, correct_bias);
}

IkProfile i_k_estimate_profile(const EmpiricalDistribution& emp, VariableId target,
                               std::span<const VariableId> features, std::size_t k_max,
                               bool correct_bias, BiasCellRange range) {
  if (k_max < 1 || k_max > features.size()) {
    throw ArgumentError("k_max=" + std::to_string(k_max) + " outside [1, " +
                        std::to_string(features.size()) + "]");
  }
  IkProfile profile;
  profile.units = emp.dist.log_base();
  for (std::size_t k = 1; k <= k_max; ++k) {
    profile.values.push_back(i_k_estimate(emp, target, features, k, correct_bias, range));
  }
  profile.total_mi = mutual_information(
      emp.dist, SourceSubset(std::vector<VariableId>(features.begin(), features.end())), target);
  if (k_max == features.size()) {
    for (std::size_t k = 1; k < k_max; ++k) {
      profile.gaps.push_back(profile.values.back() - profile.at(k));
    }
  }
  return profile;
}

DeviationStats normalized_deviation_stats(const IkProfile& exact,
                                          std::span<const IkProfile> estimates) {
  if (estimates.size() < 2) throw ArgumentError("need at least two estimates for a deviation");
  const std::size_t orders = exact.values.size();
  for (std::size_t k = 1; k <= orders; ++k) {
    if (!(exact.at(k) > 0.0)) {
      throw DomainError("exact I^(" + std::to_string(k) + ") is zero; normalized deviation undefined",
                        k);
    }
  }
  for (const auto& e : estimates) {
    if (e.values.size() < orders) throw ArgumentError("estimate profile is shorter than the exact one");
  }
  DeviationStats stats;
  const double n = static_cast<double>(estimates.size());
  for (std::size_t k = 1; k <= orders; ++k) {
    double sum = 0.0;
    for (const auto& e : estimates) sum += e.at(k) / exact.at(k) - 1.0;
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& e : estimates) {
      const double d = e.at(k) / exact.at(k) - 1.0 - mean;
      ss += d * d;
    }
    stats.mean.push_back(mean);
    stats.stdev.push_back(std::sqrt(ss / (n - 1.0)));
  }
  return stats;
}

std::optional<double> EstimateRow::i_hat(bool use_corrected) const {
  if (!exact || !(*exact > 0.0)) return std::nullopt;
  return (use_corrected ? corrected : raw) / *exact - 1.0;
}

std::string estimate_rows_to_csv(std::span<const EstimateRow> rows, bool corrected_column) {
  std::ostringstream out;
  out << "N_s,k,raw,corrected,exact,i_hat\n";
  for (const auto& r : rows) {
    out << r.sample_count << ',' << r.k << ',' << format_number(r.raw) << ',';
    if (corrected_column) out << format_number(r.corrected);
    out << ',';
    if (r.exact) out << format_number(*r.exact);
    out << ',';
    if (auto v = r.i_hat(corrected_column)) out << format_number(*v);
    out << '\n';
  }
  return out.str();
}

}  // namespace pidtrunc
