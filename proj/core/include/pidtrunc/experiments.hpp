#pragma once

// Reproducible experiments on the XOR model:
//   profile_weak    I^(k)/I^(N) over coefficient seeds, weak higher-order couplings
//   profile_strong  the same with dominant triple couplings through one target bit
//   sampling        bias and spread of the normalized estimator Î^(k)/I^(k) - 1
//                   over repeated finite samples of one pinned model
//
// Results are long-format tables, CSV header `experiment,seed,k,N_s,kind,value`.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pidtrunc/distribution.hpp"
#include "pidtrunc/estimator.hpp"
#include "pidtrunc/synergy.hpp"
#include "pidtrunc/xor_model.hpp"

namespace pidtrunc {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentId { profile_weak, profile_strong, sampling };

std::string_view to_string(ExperimentId id) noexcept;

struct ExperimentConfig {
  ExperimentId experiment = ExperimentId::profile_weak;
  std::size_t bits = 8;
  std::array<double, 3> eps{1.0, 0.5, 0.1};
  MaskPolicy mask = MaskPolicy::none;
  std::vector<std::uint64_t> seeds;        // coefficient seeds; sampling uses the first
  std::vector<std::size_t> sample_sizes;   // sampling only, strictly increasing
  std::size_t resample_count = 100;
  LogBase units = LogBase::nats;
  std::size_t threads = 0;                 // 0: PIDTRUNC_THREADS or hardware
  std::string output_path;

  static ExperimentConfig weak();
  static ExperimentConfig strong();
  static ExperimentConfig sampling();

  void validate() const;
};

struct ResultRow {
  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::optional<std::size_t> sample_size;
  std::string kind;
  double value = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  /// First line is `# pidtrunc <version>`, then the CSV header and rows.
  std::string to_csv(bool version_header = true) const;
  std::optional<double> find(std::uint64_t seed, std::size_t k, std::string_view kind,
                             std::optional<std::size_t> sample_size = std::nullopt) const;
};

/// Rows per seed and k: `I_k` (absolute) and `ratio` (I^(k)/I^(N)).
ResultTable run_profile_weak(const ExperimentConfig& config);
ResultTable run_profile_strong(const ExperimentConfig& config);

/// Exact profile of one model built from a coefficient seed.
IkProfile model_profile(const ExperimentConfig& config, std::uint64_t seed);

struct SamplingRun {
  XorModelSpec spec;
  IkProfile exact;
  std::vector<std::size_t> sample_sizes;
  std::vector<std::vector<IkProfile>> corrected;  // [size index][resample]
  std::vector<std::vector<IkProfile>> raw;
};

/// Resample r at size n draws with seed derive_seed(derive_seed(seed, n), r).
/// Throws DomainError if the pinned model has some exact I^(k) = 0.
SamplingRun run_sampling_detailed(const ExperimentConfig& config);

/// Rows per N_s and k: `mean_i_hat`, `stdev_i_hat` (bias corrected) and
/// `mean_i_hat_raw`, `stdev_i_hat_raw`; plus `I_k_exact` rows without N_s.
ResultTable run_sampling(const ExperimentConfig& config);
ResultTable sampling_table(const ExperimentConfig& config, const SamplingRun& run);

}  // namespace pidtrunc
