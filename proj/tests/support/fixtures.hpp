#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pidtrunc/distribution.hpp"

namespace fixtures {

using pidtrunc::DiscreteJointDistribution;
using pidtrunc::Variable;

inline const double kLn2 = std::log(2.0);

inline std::vector<Variable> vars(std::vector<std::pair<std::string, std::size_t>> spec) {
  std::vector<Variable> out;
  for (auto& [name, card] : spec) out.push_back({std::move(name), {card, {}}});
  return out;
}

/// Binary variables `names`, weight from a function of the bit tuple.
inline DiscreteJointDistribution binary(const std::vector<std::string>& names,
                                        const std::function<double(const std::vector<int>&)>& weight) {
  std::vector<Variable> v;
  for (const auto& n : names) v.push_back({n, {2, {}}});
  const std::size_t m = names.size();
  std::vector<double> w(std::size_t{1} << m);
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<int> bits(m);
    for (std::size_t j = 0; j < m; ++j) bits[j] = static_cast<int>((i >> (m - 1 - j)) & 1u);
    w[i] = weight(bits);
  }
  return DiscreteJointDistribution::normalized(std::move(v), std::move(w));
}

/// X1, X2 i.i.d. uniform, Y = X1 xor X2.
inline DiscreteJointDistribution xor2() {
  return binary({"X1", "X2", "Y"}, [](const auto& b) { return (b[0] ^ b[1]) == b[2] ? 1.0 : 0.0; });
}

/// XOR plus an independent uniform bit X3.
inline DiscreteJointDistribution xor_with_noise() {
  return binary({"X1", "X2", "X3", "Y"},
                [](const auto& b) { return (b[0] ^ b[1]) == b[3] ? 1.0 : 0.0; });
}

/// X1..X5 i.i.d. uniform, Y = X1.
inline DiscreteJointDistribution copy_with_noise() {
  return binary({"X1", "X2", "X3", "X4", "X5", "Y"},
                [](const auto& b) { return b[0] == b[5] ? 1.0 : 0.0; });
}

/// X1, X2, Y i.i.d. uniform.
inline DiscreteJointDistribution independent3() {
  return binary({"X1", "X2", "Y"}, [](const auto&) { return 1.0; });
}

/// p(x,y) = {(0,0):0.4, (0,1):0.1, (1,0):0.2, (1,1):0.3}.
inline DiscreteJointDistribution two_by_two() {
  return DiscreteJointDistribution(vars({{"X", 2}, {"Y", 2}}), {0.4, 0.1, 0.2, 0.3});
}

inline std::vector<pidtrunc::VariableId> ids(std::initializer_list<std::size_t> list) {
  std::vector<pidtrunc::VariableId> out;
  for (auto i : list) out.push_back({i});
  return out;
}

}  // namespace fixtures
