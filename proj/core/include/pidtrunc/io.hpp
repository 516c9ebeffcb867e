#pragma once

// File formats.
//
// Distribution (JSON):
//   {"variables":[{"name":"X1","cardinality":2,"labels":["a","b"]}, ...],
//    "probs":[...], "log_base":"nats"}
// probs in row-major mixed-radix order, last variable fastest. "labels" and
// "log_base" are optional.
//
// Samples (CSV): a header row of variable names, then one row per sample of
// integer alphabet indices. Cardinalities are inferred as max value + 1
// unless given explicitly.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "pidtrunc/distribution.hpp"

namespace pidtrunc {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

nlohmann::json distribution_to_json(const DiscreteJointDistribution& dist);
/// Accepts tables summing to one within 1e-9 and rescales them exactly.
DiscreteJointDistribution distribution_from_json(const nlohmann::json& j);

DiscreteJointDistribution read_distribution(const std::filesystem::path& path);
void write_distribution(const std::filesystem::path& path, const DiscreteJointDistribution& dist);

void write_samples_csv(std::ostream& out, const SampleSet& samples);
SampleSet read_samples_csv(std::istream& in,
                           const std::map<std::string, std::size_t>& cardinalities = {});
SampleSet read_samples(const std::filesystem::path& path,
                       const std::map<std::string, std::size_t>& cardinalities = {});
void write_samples(const std::filesystem::path& path, const SampleSet& samples);

/// Reads a whole JSON document; malformed text raises ArgumentError.
nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pidtrunc
