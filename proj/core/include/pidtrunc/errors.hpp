#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pidtrunc {

/// Bad call: unknown variable, out-of-range order, malformed file, overlapping sets.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs are well formed but the quantity is undefined for them,
/// e.g. conditioning on a zero-probability outcome.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, std::optional<std::size_t> value = std::nullopt)
      : std::domain_error(what), value_(value) {}

  /// The offending outcome or order, when one exists.
  std::optional<std::size_t> value() const noexcept { return value_; }

 private:
  std::optional<std::size_t> value_;
};

}  // namespace pidtrunc
