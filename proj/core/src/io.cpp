#include "pidtrunc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pidtrunc/errors.hpp"

namespace pidtrunc {

using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, end};
}

json distribution_to_json(const DiscreteJointDistribution& dist) {
  json vars = json::array();
  for (const auto& v : dist.variables()) {
    json jv = {{"name", v.name}, {"cardinality", v.cardinality()}};
    if (!v.alphabet.labels.empty()) jv["labels"] = v.alphabet.labels;
    vars.push_back(std::move(jv));
  }
  return {{"variables", std::move(vars)},
          {"probs", std::vector<double>(dist.probs().begin(), dist.probs().end())},
          {"log_base", std::string(to_string(dist.log_base()))}};
}

DiscreteJointDistribution distribution_from_json(const json& j) {
  try {
    std::vector<Variable> vars;
    for (const auto& jv : j.at("variables")) {
      Variable v;
      v.name = jv.at("name").get<std::string>();
      const auto card = jv.at("cardinality").get<long long>();
      if (card < 1) throw ArgumentError("variable '" + v.name + "' needs cardinality >= 1");
      v.alphabet.cardinality = static_cast<std::size_t>(card);
      if (jv.contains("labels")) v.alphabet.labels = jv.at("labels").get<std::vector<std::string>>();
      vars.push_back(std::move(v));
    }
    auto probs = j.at("probs").get<std::vector<double>>();
    const LogBase base =
        j.contains("log_base") ? parse_log_base(j.at("log_base").get<std::string>()) : LogBase::nats;
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-9) {
      throw ArgumentError("distribution probabilities sum to " + format_number(total) + ", not 1");
    }
    return DiscreteJointDistribution::normalized(std::move(vars), std::move(probs), base);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed distribution JSON: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  out << text;
}

DiscreteJointDistribution read_distribution(const std::filesystem::path& path) {
  return distribution_from_json(read_json(path));
}

void write_distribution(const std::filesystem::path& path, const DiscreteJointDistribution& dist) {
  write_text(path, distribution_to_json(dist).dump(2) + "\n");
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  const auto vars = samples.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << vars[i].name;
  out << '\n';
  for (std::size_t r = 0; r < samples.num_rows(); ++r) {
    const auto row = samples.row(r);
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

SampleSet read_samples_csv(std::istream& in, const std::map<std::string, std::size_t>& cardinalities) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (names.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto f : split_fields(line)) {
      if (f.empty()) throw ArgumentError("sample CSV header has an empty column name");
      names.emplace_back(f);
    }
  }
  if (names.empty()) throw ArgumentError("sample CSV is empty");

  std::vector<std::uint32_t> values;
  std::vector<std::size_t> max_seen(names.size(), 0);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != names.size()) {
      throw ArgumentError("sample CSV line " + std::to_string(line_no) + " has " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(names.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), v);
      if (ec != std::errc{} || ptr != fields[i].data() + fields[i].size()) {
        throw ArgumentError("sample CSV line " + std::to_string(line_no) + ": '" +
                            std::string(fields[i]) + "' is not a non-negative integer");
      }
      max_seen[i] = std::max<std::size_t>(max_seen[i], v);
      values.push_back(v);
    }
  }
  if (values.empty()) throw ArgumentError("sample CSV has a header but no rows");

  std::vector<Variable> vars;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::size_t card = max_seen[i] + 1;
    if (auto it = cardinalities.find(names[i]); it != cardinalities.end()) {
      if (it->second <= max_seen[i]) {
        throw ArgumentError("column '" + names[i] + "' holds value " + std::to_string(max_seen[i]) +
                            " but its declared cardinality is " + std::to_string(it->second));
      }
      card = it->second;
    }
    vars.push_back(Variable{names[i], Alphabet{card, {}}});
  }
  for (const auto& [name, card] : cardinalities) {
    (void)card;
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ArgumentError("cardinality given for unknown column '" + name + "'");
    }
  }
  return {std::move(vars), std::move(values)};
}

SampleSet read_samples(const std::filesystem::path& path,
                       const std::map<std::string, std::size_t>& cardinalities) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
  return read_samples_csv(in, cardinalities);
}

void write_samples(const std::filesystem::path& path, const SampleSet& samples) {
  std::ostringstream out;
  write_samples_csv(out, samples);
  write_text(path, out.str());
}

}  // namespace pidtrunc
