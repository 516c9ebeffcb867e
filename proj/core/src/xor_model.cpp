#include "pidtrunc/xor_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pidtrunc/errors.hpp"
#include "pidtrunc/random.hpp"

namespace pidtrunc {

std::string_view to_string(MaskPolicy mask) noexcept {
  return mask == MaskPolicy::exactly_one_target ? "exactly_one_target" : "none";
}

MaskPolicy parse_mask_policy(std::string_view text) {
  if (text == "none") return MaskPolicy::none;
  if (text == "exactly_one_target") return MaskPolicy::exactly_one_target;
  throw ArgumentError("unknown mask policy '" + std::string(text) +
                      "' (expected none or exactly_one_target)");
}

std::vector<std::size_t> XorModelSpec::feature_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits; ++i) {
    if (std::find(target_bits.begin(), target_bits.end(), i) == target_bits.end()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> default_target_bits(std::size_t bits) {
  if (bits >= 4) return {bits - 3, bits - 2, bits - 1};
  if (bits >= 1) return {bits - 1};
  return {};
}

namespace {

std::size_t pair_count(std::size_t m) { return m * (m - 1) / 2; }
std::size_t triple_count(std::size_t m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }

template <typename Fn>
void for_each_pair(std::size_t m, Fn fn) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) fn(idx++, i, j);
}

template <typename Fn>
void for_each_triple(std::size_t m, Fn fn) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) fn(idx++, i, j, k);
}

}  // namespace

void validate_spec(const XorModelSpec& spec) {
  const std::size_t m = spec.bits;
  if (m < 2) throw ArgumentError("the model needs at least 2 bits");
  if (spec.a.size() != m || spec.b.size() != pair_count(m) || spec.c.size() != triple_count(m)) {
    throw ArgumentError("coefficient counts must be M, C(M,2), C(M,3)");
  }
  if (spec.target_bits.empty() || spec.target_bits.size() >= m) {
    throw ArgumentError("targets must be a non-empty proper subset of the bits");
  }
  std::set<std::size_t> seen;
  for (auto t : spec.target_bits) {
    if (t >= m) throw ArgumentError("target bit " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second) throw ArgumentError("target bit listed twice");
  }
}

void apply_mask(XorModelSpec& spec) {
  if (spec.mask == MaskPolicy::none) return;
  auto is_target = [&](std::size_t i) {
    return std::find(spec.target_bits.begin(), spec.target_bits.end(), i) != spec.target_bits.end();
  };
  for_each_pair(spec.bits, [&](std::size_t idx, std::size_t i, std::size_t j) {
    if (is_target(i) + is_target(j) != 1) spec.b[idx] = 0.0;
  });
  for_each_triple(spec.bits, [&](std::size_t idx, std::size_t i, std::size_t j, std::size_t k) {
    if (is_target(i) + is_target(j) + is_target(k) != 1) spec.c[idx] = 0.0;
  });
}

XorModelSpec generate_spec(std::size_t bits, std::array<double, 3> eps, std::uint64_t seed,
                           MaskPolicy mask, std::vector<std::size_t> target_bits) {
  if (bits < 2) throw ArgumentError("the model needs at least 2 bits");
  XorModelSpec spec;
  spec.bits = bits;
  spec.eps = eps;
  spec.coefficient_seed = seed;
  spec.mask = mask;
  spec.target_bits = target_bits.empty() ? default_target_bits(bits) : std::move(target_bits);

  Rng rng(seed);
  auto draw = [&](std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
  };
  spec.a = draw(bits);
  spec.b = draw(pair_count(bits));
  spec.c = draw(triple_count(bits));
  validate_spec(spec);
  apply_mask(spec);
  return spec;
}

double interaction_energy(const XorModelSpec& spec, std::uint64_t state) {
  const std::size_t m = spec.bits;
  auto bit = [&](std::size_t i) -> unsigned { return (state >> (m - 1 - i)) & 1U; };
  double linear = 0.0;
  for (std::size_t i = 0; i < m; ++i) linear += spec.a[i] * bit(i);
  double pairwise = 0.0;
  for_each_pair(m, [&](std::size_t idx, std::size_t i, std::size_t j) {
    pairwise += spec.b[idx] * (bit(i) ^ bit(j));
  });
  double triple = 0.0;
  for_each_triple(m, [&](std::size_t idx, std::size_t i, std::size_t j, std::size_t k) {
    triple += spec.c[idx] * (bit(i) ^ bit(j) ^ bit(k));
  });
  return spec.eps[0] * linear + spec.eps[1] * pairwise + spec.eps[2] * triple;
}

DiscreteJointDistribution build_distribution(const XorModelSpec& spec, LogBase log_base) {
  if (spec.bits > kMaxModelBits) {
    throw ArgumentError("exact enumeration refused for M=" + std::to_string(spec.bits) +
                        " (limit " + std::to_string(kMaxModelBits) + ")");
  }
  validate_spec(spec);
  const std::size_t states = std::size_t{1} << spec.bits;
  std::vector<double> energy(states);
  for (std::size_t s = 0; s < states; ++s) energy[s] = interaction_energy(spec, s);
  const double top = *std::max_element(energy.begin(), energy.end());
  for (auto& e : energy) e = std::exp(e - top);

  std::vector<Variable> vars;
  for (std::size_t i = 0; i < spec.bits; ++i) {
    vars.push_back(Variable{"s" + std::to_string(i), Alphabet{2, {}}});
  }
  return DiscreteJointDistribution::normalized(std::move(vars), std::move(energy), log_base);
}

SplitModel split_target(const DiscreteJointDistribution& dist, const XorModelSpec& spec) {
  validate_spec(spec);
  if (dist.num_variables() != spec.bits) {
    throw ArgumentError("distribution does not match the model's bit count");
  }
  std::vector<VariableId> targets;
  for (auto t : spec.target_bits) targets.push_back(VariableId{t});
  auto merged = merge_variables(dist, targets, "Y");

  std::vector<std::string> names;
  const std::size_t features = merged.num_variables() - 1;
  for (std::size_t i = 0; i < features; ++i) names.push_back("X" + std::to_string(i + 1));
  names.emplace_back("Y");
  auto renamed = rename_variables(merged, names);

  SplitModel out{std::move(renamed), {}, VariableId{features}};
  for (std::size_t i = 0; i < features; ++i) out.features.push_back(VariableId{i});
  return out;
}

nlohmann::json spec_to_json(const XorModelSpec& spec) {
  return {{"M", spec.bits},
          {"eps", spec.eps},
          {"seed", spec.coefficient_seed},
          {"mask", std::string(to_string(spec.mask))},
          {"targets", spec.target_bits},
          {"a", spec.a},
          {"b", spec.b},
          {"c", spec.c}};
}

XorModelSpec spec_from_json(const nlohmann::json& j) {
  try {
    const auto bits = j.at("M").get<std::size_t>();
    const auto eps = j.at("eps").get<std::vector<double>>();
    if (eps.size() != 3) throw ArgumentError("model 'eps' must hold three couplings");
    const auto seed = j.value("seed", std::uint64_t{0});
    const auto mask = parse_mask_policy(j.value("mask", std::string("none")));
    auto targets = j.contains("targets") ? j.at("targets").get<std::vector<std::size_t>>()
                                         : std::vector<std::size_t>{};
    if (bits > kMaxModelBits) {
      throw ArgumentError("model M=" + std::to_string(bits) + " exceeds the enumeration limit");
    }
    auto spec = generate_spec(bits, {eps[0], eps[1], eps[2]}, seed, mask, std::move(targets));
    const bool has_a = j.contains("a"), has_b = j.contains("b"), has_c = j.contains("c");
    if (has_a || has_b || has_c) {
      if (!(has_a && has_b && has_c)) {
        throw ArgumentError("model coefficients a, b, c must be given together or not at all");
      }
      spec.a = j.at("a").get<std::vector<double>>();
      spec.b = j.at("b").get<std::vector<double>>();
      spec.c = j.at("c").get<std::vector<double>>();
      validate_spec(spec);
      apply_mask(spec);
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace pidtrunc
