// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "pidtrunc/pidtrunc.hpp"

using namespace pidtrunc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Random distributions with 2..4 variables, alphabets 2..3; the last is the target.
std::vector<DiscreteJointDistribution> random_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> nv(2, 4), card(2, 3);
  std::vector<DiscreteJointDistribution> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> cards(nv(rng));
    for (auto& c : cards) c = card(rng);
    out.push_back(oracle::random_distribution(rng, cards, i % 3 == 0 ? 0.3 : 0.0));
  }
  return out;
}

std::vector<VariableId> feature_ids(const DiscreteJointDistribution& d) {
  std::vector<VariableId> f;
  for (std::size_t i = 0; i + 1 < d.num_variables(); ++i) f.push_back({i});
  return f;
}

Outcome cross_form_oracle() {
  const auto corpus = random_corpus(1000, 20240601);
  double worst = 0.0;
  std::size_t queries = 0;
  for (const auto& d : corpus) {
    const VariableId target{d.num_variables() - 1};
    const auto f = feature_ids(d);
    std::vector<SourceSubset> subsets;
    for (std::size_t k = 1; k <= f.size(); ++k) {
      for (auto& s : enumerate_family(f, k).subsets) subsets.push_back(s);
    }
    for (std::size_t size = 1; size <= std::min<std::size_t>(4, subsets.size()); ++size) {
      for (const auto& pick : oracle::combinations(subsets.size(), size)) {
        std::vector<SourceSubset> sources;
        for (auto i : pick) sources.push_back(subsets[i]);
        worst = std::max(worst, std::abs(i_union_max(d, target, sources) - i_union_inclexcl(d, target, sources)));
        ++queries;
      }
    }
  }
  return {worst <= 1e-10, fmt("max |I_max - I_inclexcl| = %.3g over %zu distributions, %zu collections (tol 1e-10)",
                              worst, corpus.size(), queries)};
}

Outcome truncation_exactness() {
  const auto corpus = random_corpus(1000, 20240601);
  double worst_top = 0.0, worst_drop = 0.0;
  for (const auto& d : corpus) {
    const VariableId target{d.num_variables() - 1};
    const auto f = feature_ids(d);
    std::vector<std::size_t> fo;
    for (auto id : f) fo.push_back(id.index);
    const auto p = i_k_profile(d, target, f, f.size());
    const double mi = oracle::Table(d).mutual_information(target.index, fo);
    worst_top = std::max({worst_top, std::abs(p.values.back() - mi),
                          std::abs(p.values.back() - mutual_information(d, SourceSubset(f), target))});
    for (std::size_t k = 1; k < p.k_max(); ++k) worst_drop = std::max(worst_drop, p.at(k) - p.at(k + 1));
  }
  return {worst_top <= 1e-10 && worst_drop <= 1e-12,
          fmt("max |I^(N) - MI| = %.3g (tol 1e-10); largest decrease in k = %.3g (tol 1e-12)", worst_top,
              worst_drop)};
}

Outcome xor_canonical() {
  const auto d = DiscreteJointDistribution::normalized(
      {{"X1", {2, {}}}, {"X2", {2, {}}}, {"Y", {2, {}}}}, {1, 0, 0, 1, 0, 1, 1, 0});
  const std::vector<VariableId> f{{0}, {1}};
  const double i1 = i_k(d, VariableId{2}, f, 1);
  const double i2 = i_k(d, VariableId{2}, f, 2);
  const auto path = std::filesystem::temp_directory_path() / "pidtrunc_acceptance_xor.json";
  write_distribution(path, d);
  const std::string p = path.string();
  const char* argv[] = {"pidtrunc", "select", "--dist", p.c_str(), "--target", "Y", "--k", "2"};
  std::ostringstream out, err;
  const int code = cli::run(8, argv, out, err);
  std::filesystem::remove(path);
  const bool ok = std::abs(i1) <= 1e-12 && std::abs(i2 - std::log(2.0)) <= 1e-12 && code == 0 &&
                  out.str() == "k,relevant\n2,X1\n2,X2\n";
  return {ok, fmt("I^(1) = %.3g, I^(2) - ln2 = %.3g, select --k 2 exit %d -> {%s}", i1, i2 - std::log(2.0), code,
                  [&] {
                    std::string names;
                    std::istringstream in(out.str());
                    std::string line;
                    std::getline(in, line);
                    while (std::getline(in, line)) names += (names.empty() ? "" : ", ") + line.substr(2);
                    return names;
                  }()
                      .c_str())};
}

Outcome weak_profile(std::size_t threads) {
  auto cfg = ExperimentConfig::weak();
  cfg.threads = threads;
  const auto t = run_profile_weak(cfg);
  bool monotone = true, ends_at_one = true;
  std::vector<double> tops;
  for (auto seed : cfg.seeds) {
    for (std::size_t k = 1; k < 5; ++k) {
      monotone = monotone && *t.find(seed, k + 1, "ratio") >= *t.find(seed, k, "ratio") - 1e-12;
    }
    ends_at_one = ends_at_one && *t.find(seed, 5, "ratio") == 1.0;
    tops.push_back(*t.find(seed, 5, "I_k"));
  }
  std::sort(tops.begin(), tops.end());
  const double median = 0.5 * (tops[4] + tops[5]);
  return {monotone && ends_at_one && median >= 0.05 && median <= 0.3,
          fmt("ratios non-decreasing: %s, ratio(5)=1: %s, median I^(5) = %.4f nats (band [0.05, 0.3])",
              monotone ? "yes" : "no", ends_at_one ? "yes" : "no", median)};
}

Outcome strong_profile(std::size_t threads) {
  auto cfg = ExperimentConfig::strong();
  cfg.threads = threads;
  const auto t = run_profile_strong(cfg);
  std::size_t hits = 0;
  for (auto seed : cfg.seeds) hits += *t.find(seed, 2, "I_k") >= 2.0 * *t.find(seed, 1, "I_k");
  return {hits >= 8, fmt("I^(2) >= 2 I^(1) for %zu of %zu seeds (need >= 8)", hits, cfg.seeds.size())};
}

struct SamplingSummary {
  ExperimentConfig cfg;
  SamplingRun run;
  std::vector<DeviationStats> stats;  // per sample size, corrected estimates
};

SamplingSummary sampling_summary(std::size_t threads) {
  SamplingSummary s{ExperimentConfig::sampling(), {}, {}};
  s.cfg.threads = threads;
  s.run = run_sampling_detailed(s.cfg);
  for (const auto& reps : s.run.corrected) s.stats.push_back(normalized_deviation_stats(s.run.exact, reps));
  return s;
}

Outcome sampling_properties(const SamplingSummary& s) {
  std::vector<double> sizes;
  for (auto n : s.cfg.sample_sizes) sizes.push_back(static_cast<double>(n));
  bool trend = true;
  std::string trends;
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<double> bias;
    for (const auto& st : s.stats) bias.push_back(std::abs(st.mean[k - 1]));
    const double rho = oracle::spearman_rho(sizes, bias);
    const double p = oracle::spearman_p_negative(sizes, bias);
    trend = trend && p < 0.05;
    trends += fmt(" k%zu rho=%.2f p=%.4f", k, rho, p);
  }
  const auto& small = s.stats.front();
  const bool lower_less = std::abs(small.mean[0]) < std::abs(small.mean[4]);
  const bool dominates = std::abs(small.mean[4]) > small.stdev[4];
  return {trend && lower_less && dominates,
          fmt("(a)%s; (b) |mean i^(1)| = %.3f < |mean i^(5)| = %.3f; (c) |mean i^(5)| = %.3f > stdev = %.3f "
              "at N_s=%zu",
              trends.c_str(), std::abs(small.mean[0]), std::abs(small.mean[4]), std::abs(small.mean[4]),
              small.stdev[4], s.cfg.sample_sizes.front())};
}

Outcome correction_efficacy(const SamplingSummary& s) {
  const auto it = std::find(s.cfg.sample_sizes.begin(), s.cfg.sample_sizes.end(), 128u);
  if (it == s.cfg.sample_sizes.end()) return {false, "N_s=128 missing from the grid"};
  const std::size_t si = static_cast<std::size_t>(it - s.cfg.sample_sizes.begin());
  const double exact = s.run.exact.at(3);
  double corrected = 0.0, raw = 0.0;
  const auto reps = s.run.corrected[si].size();
  for (std::size_t r = 0; r < reps; ++r) {
    corrected += std::abs(s.run.corrected[si][r].at(3) - exact);
    raw += std::abs(s.run.raw[si][r].at(3) - exact);
  }
  corrected /= static_cast<double>(reps);
  raw /= static_cast<double>(reps);
  return {corrected < raw, fmt("mean |corrected - I^(3)| = %.4f < mean |raw - I^(3)| = %.4f over %zu resamples",
                               corrected, raw, reps)};
}

Outcome dual_implementation() {
  const auto spec = generate_spec(8, {1.0, 0.5, 0.1}, 1);
  const auto d = build_distribution(spec);
  const auto want = oracle::xor_model_probs(spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(d.probs()[i] - want[i]));
  return {worst <= 1e-12, fmt("max |p - p_bruteforce| = %.3g over %zu states (tol 1e-12)", worst, want.size())};
}

Outcome determinism() {
  std::vector<std::size_t> counts{1, 2, 7};
  const std::size_t hw = resolve_thread_count(0);
  if (std::find(counts.begin(), counts.end(), hw) == counts.end()) counts.push_back(hw);
  std::vector<std::string> weak, strong, samp;
  for (auto threads : counts) {
    auto w = ExperimentConfig::weak();
    w.threads = threads;
    weak.push_back(run_profile_weak(w).to_csv());
    auto st = ExperimentConfig::strong();
    st.threads = threads;
    strong.push_back(run_profile_strong(st).to_csv());
    auto sa = ExperimentConfig::sampling();
    sa.threads = threads;
    samp.push_back(run_sampling(sa).to_csv());
  }
  auto same = [](const std::vector<std::string>& v) {
    return std::all_of(v.begin(), v.end(), [&](const auto& s) { return s == v.front(); });
  };
  std::string list;
  for (auto c : counts) list += (list.empty() ? "" : ",") + std::to_string(c);
  return {same(weak) && same(strong) && same(samp),
          fmt("CSV output across %s workers: weak %s, strong %s, sampling %s", list.c_str(),
              same(weak) ? "identical" : "differs", same(strong) ? "identical" : "differs",
              same(samp) ? "identical" : "differs")};
}

}  // namespace

int main() {
  std::optional<SamplingSummary> sampling;
  auto sampling_run = [&]() -> const SamplingSummary& {
    if (!sampling) sampling = sampling_summary(0);
    return *sampling;
  };
  const std::vector<Criterion> criteria{
      {1, "cross-form oracle", 30, cross_form_oracle},
      {2, "truncation exactness", 30, truncation_exactness},
      {3, "XOR canonical case", 1, xor_canonical},
      {4, "weak-coupling profiles", 10, [] { return weak_profile(0); }},
      {5, "strong-coupling profiles", 10, [] { return strong_profile(0); }},
      {6, "finite-sample bias", 300, [&] { return sampling_properties(sampling_run()); }},
      {7, "bias-correction efficacy", 300, [&] { return correction_efficacy(sampling_run()); }},
      {8, "dual-implementation golden", 30, dual_implementation},
      {9, "determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %d %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
