#pragma once

// Exponential-family model over M bits with linear, pairwise-XOR and
// triple-XOR couplings:
//
//   p(s) = exp(A(s)) / Z
//   A(s) = eps0 Σ_i a_i s_i + eps1 Σ_{i<j} b_ij (s_i ^ s_j)
//        + eps2 Σ_{i<j<k} c_ijk (s_i ^ s_j ^ s_k)
//
// Bits are 0-based: s_0 is the most significant digit of a state index.
// b and c are stored flat in lexicographic order of (i<j) and (i<j<k).

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pidtrunc/distribution.hpp"

namespace pidtrunc {

enum class MaskPolicy {
  none,
  /// keep only couplings whose index set holds exactly one target bit
  exactly_one_target,
};

std::string_view to_string(MaskPolicy mask) noexcept;
MaskPolicy parse_mask_policy(std::string_view text);

struct XorModelSpec {
  std::size_t bits = 0;
  std::array<double, 3> eps{};  // linear, pairwise, triple
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<std::size_t> target_bits;
  std::uint64_t coefficient_seed = 0;
  MaskPolicy mask = MaskPolicy::none;

  std::vector<std::size_t> feature_bits() const;
};

inline constexpr std::size_t kMaxModelBits = 20;

/// Last three bits for M >= 4, otherwise the last bit.
std::vector<std::size_t> default_target_bits(std::size_t bits);

/// Draws a, b, c i.i.d. Uniform(-1, 1) in that order from one stream seeded
/// by `seed`, then applies the mask.
XorModelSpec generate_spec(std::size_t bits, std::array<double, 3> eps, std::uint64_t seed,
                           MaskPolicy mask = MaskPolicy::none,
                           std::vector<std::size_t> target_bits = {});

/// Zeroes the masked couplings of an existing spec.
void apply_mask(XorModelSpec& spec);

/// Checks coefficient counts and the target/feature partition.
void validate_spec(const XorModelSpec& spec);

double interaction_energy(const XorModelSpec& spec, std::uint64_t state);

/// Exact table over all 2^M states; variables named s0..s{M-1}.
DiscreteJointDistribution build_distribution(const XorModelSpec& spec,
                                             LogBase log_base = LogBase::nats);

struct SplitModel {
  DiscreteJointDistribution dist;
  std::vector<VariableId> features;  // X1..X{M-|T|}
  VariableId target;                 // Y, the joint value of the target bits
};

/// Folds the target bits into one variable Y (first target bit most
/// significant) placed last, and renames the remaining bits X1, X2, ...
SplitModel split_target(const DiscreteJointDistribution& dist, const XorModelSpec& spec);

nlohmann::json spec_to_json(const XorModelSpec& spec);
/// Coefficients are optional; missing ones are regenerated from the seed.
XorModelSpec spec_from_json(const nlohmann::json& j);

}  // namespace pidtrunc
