#include "pidtrunc/experiments.hpp"

#include <limits>
#include <sstream>

#include "pidtrunc/errors.hpp"
#include "pidtrunc/io.hpp"
#include "pidtrunc/parallel.hpp"
#include "pidtrunc/random.hpp"

namespace pidtrunc {

std::string_view to_string(ExperimentId id) noexcept {
  switch (id) {
    case ExperimentId::profile_weak: return "profile_weak";
    case ExperimentId::profile_strong: return "profile_strong";
    case ExperimentId::sampling: return "sampling";
  }
  return "unknown";
}

namespace {

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  return seeds;
}

}  // namespace

ExperimentConfig ExperimentConfig::weak() {
  ExperimentConfig c;
  c.experiment = ExperimentId::profile_weak;
  c.eps = {1.0, 0.5, 0.1};
  c.seeds = default_seeds();
  return c;
}

ExperimentConfig ExperimentConfig::strong() {
  ExperimentConfig c;
  c.experiment = ExperimentId::profile_strong;
  c.eps = {0.1, 0.01, 2.0};
  c.mask = MaskPolicy::exactly_one_target;
  c.seeds = default_seeds();
  return c;
}

ExperimentConfig ExperimentConfig::sampling() {
  ExperimentConfig c;
  c.experiment = ExperimentId::sampling;
  c.eps = {1.0, 0.5, 0.1};
  c.seeds = {1};
  c.sample_sizes = {64, 128, 256, 512, 1024, 2048, 4096};
  c.resample_count = 100;
  return c;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ArgumentError("experiment needs at least one seed");
  if (bits < 2 || bits > kMaxModelBits) throw ArgumentError("model bit count out of range");
  if (experiment == ExperimentId::sampling) {
    if (sample_sizes.empty()) throw ArgumentError("sampling experiment needs a sample-size grid");
    for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
      if (sample_sizes[i] < 1) throw ArgumentError("sample sizes must be at least 1");
      if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1]) {
        throw ArgumentError("sample sizes must be strictly increasing");
      }
    }
    if (resample_count < 2) throw ArgumentError("need at least two resamples per sample size");
  }
}

std::string ResultTable::to_csv(bool version_header) const {
  std::ostringstream out;
  if (version_header) out << "# pidtrunc " << kVersion << '\n';
  out << "experiment,seed,k,N_s,kind,value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.seed << ',' << r.k << ',';
    if (r.sample_size) out << *r.sample_size;
    out << ',' << r.kind << ',' << format_number(r.value) << '\n';
  }
  return out.str();
}

std::optional<double> ResultTable::find(std::uint64_t seed, std::size_t k, std::string_view kind,
                                        std::optional<std::size_t> sample_size) const {
  for (const auto& r : rows) {
    if (r.seed == seed && r.k == k && r.kind == kind && r.sample_size == sample_size) return r.value;
  }
  return std::nullopt;
}

IkProfile model_profile(const ExperimentConfig& config, std::uint64_t seed) {
  const auto spec = generate_spec(config.bits, config.eps, seed, config.mask);
  const auto split = split_target(build_distribution(spec, config.units), spec);
  return i_k_profile(split.dist, split.target, split.features, split.features.size());
}

namespace {

ResultTable run_profile(const ExperimentConfig& config) {
  config.validate();
  std::vector<IkProfile> profiles(config.seeds.size());
  parallel_for(config.seeds.size(), resolve_thread_count(config.threads),
               [&](std::size_t i) { profiles[i] = model_profile(config, config.seeds[i]); });

  ResultTable table;
  const std::string name(to_string(config.experiment));
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    const auto& p = profiles[i];
    const double top = p.values.back();
    for (std::size_t k = 1; k <= p.k_max(); ++k) {
      table.rows.push_back({name, config.seeds[i], k, std::nullopt, "I_k", p.at(k)});
    }
    for (std::size_t k = 1; k <= p.k_max(); ++k) {
      const double ratio = top > 0.0 ? p.at(k) / top : std::numeric_limits<double>::quiet_NaN();
      table.rows.push_back({name, config.seeds[i], k, std::nullopt, "ratio", ratio});
    }
  }
  return table;
}

}  // namespace

ResultTable run_profile_weak(const ExperimentConfig& config) { return run_profile(config); }

ResultTable run_profile_strong(const ExperimentConfig& config) { return run_profile(config); }

SamplingRun run_sampling_detailed(const ExperimentConfig& config) {
  config.validate();
  const std::uint64_t seed = config.seeds.front();
  SamplingRun run;
  run.spec = generate_spec(config.bits, config.eps, seed, config.mask);
  const auto split = split_target(build_distribution(run.spec, config.units), run.spec);
  const std::size_t n_features = split.features.size();
  run.exact = i_k_profile(split.dist, split.target, split.features, n_features);
  for (std::size_t k = 1; k <= n_features; ++k) {
    if (!(run.exact.at(k) > 0.0)) {
      throw DomainError("pinned model (seed " + std::to_string(seed) + ") has exact I^(" +
                            std::to_string(k) + ") = 0; choose another seed",
                        k);
    }
  }
  run.sample_sizes = config.sample_sizes;

  const std::size_t sizes = config.sample_sizes.size();
  const std::size_t reps = config.resample_count;
  run.corrected.assign(sizes, std::vector<IkProfile>(reps));
  run.raw.assign(sizes, std::vector<IkProfile>(reps));
  parallel_for(sizes * reps, resolve_thread_count(config.threads), [&](std::size_t task) {
    const std::size_t si = task / reps;
    const std::size_t r = task % reps;
    const std::size_t n = config.sample_sizes[si];
    const auto samples = sample(split.dist, n, derive_seed(derive_seed(seed, n), r));
    const auto emp = empirical(samples, config.units);
    run.corrected[si][r] = i_k_estimate_profile(emp, split.target, split.features, n_features, true);
    run.raw[si][r] = i_k_estimate_profile(emp, split.target, split.features, n_features, false);
  });
  return run;
}

ResultTable sampling_table(const ExperimentConfig& config, const SamplingRun& run) {
  ResultTable table;
  const std::string name(to_string(config.experiment));
  const std::uint64_t seed = config.seeds.front();
  for (std::size_t k = 1; k <= run.exact.k_max(); ++k) {
    table.rows.push_back({name, seed, k, std::nullopt, "I_k_exact", run.exact.at(k)});
  }
  for (std::size_t si = 0; si < run.sample_sizes.size(); ++si) {
    const auto corrected = normalized_deviation_stats(run.exact, run.corrected[si]);
    const auto raw = normalized_deviation_stats(run.exact, run.raw[si]);
    const std::size_t n = run.sample_sizes[si];
    for (std::size_t k = 1; k <= run.exact.k_max(); ++k) {
      table.rows.push_back({name, seed, k, n, "mean_i_hat", corrected.mean[k - 1]});
      table.rows.push_back({name, seed, k, n, "stdev_i_hat", corrected.stdev[k - 1]});
      table.rows.push_back({name, seed, k, n, "mean_i_hat_raw", raw.mean[k - 1]});
      table.rows.push_back({name, seed, k, n, "stdev_i_hat_raw", raw.stdev[k - 1]});
    }
  }
  return table;
}

ResultTable run_sampling(const ExperimentConfig& config) {
  return sampling_table(config, run_sampling_detailed(config));
}

}  // namespace pidtrunc
