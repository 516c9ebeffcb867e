#include "cli.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pidtrunc/pidtrunc.hpp"

namespace pidtrunc::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw ArgumentError("empty item in list '" + text + "'");
    items.push_back(item);
  }
  if (items.empty()) throw ArgumentError("empty list");
  return items;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& text) {
  std::vector<T> values;
  for (const auto& item : split_list(text)) {
    T v{};
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ArgumentError("'" + item + "' is not a valid number");
    }
    values.push_back(v);
  }
  return values;
}

struct InputOptions {
  std::string dist_path;
  std::string model_path;
  std::string target;
  std::string units;
};

struct OutputOptions {
  std::string out_path;
  std::string format = "csv";
};

void add_input(CLI::App* sub, InputOptions& in, bool target_required = false) {
  auto* d = sub->add_option("--dist", in.dist_path, "Distribution JSON file");
  auto* m = sub->add_option("--model", in.model_path, "XOR model spec JSON file");
  d->excludes(m);
  auto* t = sub->add_option("--target", in.target,
                            "Target variable; a comma-separated list is merged into one variable");
  if (target_required) t->required();
  sub->add_option("--units", in.units, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
}

void add_output(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--out", o.out_path, "Write results to this file instead of stdout");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

struct Problem {
  DiscreteJointDistribution dist;
  VariableId target;
  std::vector<VariableId> features;
};

std::optional<LogBase> units_of(const InputOptions& in) {
  if (in.units.empty()) return std::nullopt;
  return parse_log_base(in.units);
}

Problem load_problem(const InputOptions& in) {
  const auto units = units_of(in);
  if (!in.model_path.empty()) {
    const auto spec = spec_from_json(read_json(in.model_path));
    auto split = split_target(build_distribution(spec, units.value_or(LogBase::nats)), spec);
    if (!in.target.empty() && in.target != "Y") {
      throw ArgumentError("model inputs expose the joint target as 'Y', not '" + in.target + "'");
    }
    return {std::move(split.dist), split.target, std::move(split.features)};
  }
  if (in.dist_path.empty()) throw ArgumentError("one of --dist or --model is required");

  auto dist = read_distribution(in.dist_path);
  if (units) dist = dist.with_log_base(*units);
  const std::string target_spec = in.target.empty() ? std::string("Y") : in.target;
  const auto names = split_list(target_spec);
  VariableId target;
  if (names.size() == 1) {
    target = dist.id_of(names.front());
  } else {
    std::vector<VariableId> members;
    std::string joined;
    for (const auto& n : names) {
      members.push_back(dist.id_of(n));
      joined += (joined.empty() ? "" : "+") + n;
    }
    dist = merge_variables(dist, members, joined);
    target = VariableId{dist.num_variables() - 1};
  }
  std::vector<VariableId> features;
  for (auto id : dist.all_ids()) {
    if (id != target) features.push_back(id);
  }
  if (features.empty()) throw ArgumentError("no feature variables besides the target");
  return {std::move(dist), target, std::move(features)};
}

void emit(const OutputOptions& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_text(o.out_path, text);
  }
}

std::vector<std::string> names_of(const DiscreteJointDistribution& dist,
                                  const std::vector<VariableId>& ids) {
  std::vector<std::string> names;
  for (auto id : ids) names.push_back(dist.variable(id).name);
  return names;
}

std::string profile_output(const IkProfile& profile, const std::string& format) {
  if (format == "json") {
    json j = {{"k", profile.k_max()},
              {"I_k", profile.values},
              {"delta", profile.gaps},
              {"units", std::string(to_string(profile.units))},
              {"total_mi", profile.total_mi}};
    return j.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << "k,I_k,delta\n";
  for (std::size_t k = 1; k <= profile.k_max(); ++k) {
    csv << k << ',' << format_number(profile.at(k)) << ',';
    if (k <= profile.gaps.size()) csv << format_number(profile.gaps[k - 1]);
    csv << '\n';
  }
  return csv.str();
}

std::string table_output(const ResultTable& table, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : table.rows) {
      json row = {{"experiment", r.experiment}, {"seed", r.seed}, {"k", r.k},
                  {"kind", r.kind}, {"value", r.value}};
      row["N_s"] = r.sample_size ? json(*r.sample_size) : json(nullptr);
      rows.push_back(std::move(row));
    }
    return json{{"version", std::string(kVersion)}, {"rows", std::move(rows)}}.dump(2) + "\n";
  }
  return table.to_csv();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated multivariate information I^(k) for discrete variables", "pidtrunc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // exact
  InputOptions exact_in;
  OutputOptions exact_out;
  std::size_t exact_kmax = 0;
  auto* exact = app.add_subcommand("exact", "Exact I^(k) profile of a distribution or model");
  add_input(exact, exact_in);
  add_output(exact, exact_out);
  exact->add_option("--kmax", exact_kmax, "Highest order (default: number of features)");

  // estimate
  InputOptions est_ref;
  OutputOptions est_out;
  std::string samples_path;
  std::size_t est_k = 0;
  std::size_t est_kmax = 0;
  bool no_bias = false;
  std::vector<std::string> cards;
  auto* estimate = app.add_subcommand("estimate", "Estimate I^(k) from a sample CSV");
  estimate->add_option("--samples", samples_path, "Sample CSV file")->required();
  add_input(estimate, est_ref, true);
  add_output(estimate, est_out);
  auto* ko = estimate->add_option("--k", est_k, "Truncation order");
  auto* kmo = estimate->add_option("--kmax", est_kmax, "Estimate every order 1..kmax");
  ko->excludes(kmo);
  estimate->add_flag("--no-bias-correction", no_bias, "Report the plain plug-in estimate");
  estimate->add_option("--card", cards, "Declared cardinality NAME=INT (repeatable)");

  // select
  InputOptions sel_in;
  OutputOptions sel_out;
  std::size_t sel_k = 0;
  bool prune = false;
  double prune_tol = 1e-10;
  auto* select = app.add_subcommand("select", "Features that attain the per-outcome maxima of I^(k)");
  add_input(select, sel_in);
  add_output(select, sel_out);
  select->add_option("--k", sel_k, "Truncation order")->required();
  select->add_flag("--prune", prune, "Greedy backward elimination after selection (heuristic)");
  select->add_option("--prune-tol", prune_tol, "Largest tolerated loss of I^(k) while pruning");

  // model-gen
  std::size_t gen_bits = 8;
  std::string gen_eps = "1,0.5,0.1";
  std::uint64_t gen_seed = 1;
  std::string gen_mask = "none";
  std::string gen_out, gen_dist_out, gen_samples_out, gen_units = "nats";
  std::size_t gen_draw = 0;
  auto* model_gen = app.add_subcommand("model-gen", "Generate an XOR model spec");
  model_gen->add_option("--M", gen_bits, "Number of bits");
  model_gen->add_option("--eps", gen_eps, "Couplings eps0,eps1,eps2");
  model_gen->add_option("--seed", gen_seed, "Coefficient seed");
  model_gen->add_option("--mask", gen_mask, "none or exactly_one_target");
  model_gen->add_option("--out", gen_out, "Spec JSON output (default stdout)");
  model_gen->add_option("--dist-out", gen_dist_out, "Also write the X/Y distribution JSON");
  model_gen->add_option("--draw", gen_draw, "Number of samples to draw");
  model_gen->add_option("--samples-out", gen_samples_out, "Sample CSV output for --draw");
  model_gen->add_option("--units", gen_units, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));

  // experiments
  struct ExpOptions {
    std::string seeds;
    std::uint64_t seed = 1;
    std::string grid;
    std::size_t resamples = 100;
    std::size_t bits = 8;
    std::string eps;
    std::string units = "nats";
    std::size_t threads = 0;
    OutputOptions out;
  };
  ExpOptions weak_opt, strong_opt, samp_opt;
  auto add_exp = [](CLI::App* sub, ExpOptions& o, bool sampling) {
    if (sampling) {
      sub->add_option("--seed", o.seed, "Pinned coefficient seed");
      sub->add_option("--grid", o.grid, "Comma-separated sample sizes");
      sub->add_option("--resamples", o.resamples, "Resamples per sample size");
    } else {
      sub->add_option("--seeds", o.seeds, "Comma-separated coefficient seeds (default 1..10)");
    }
    sub->add_option("--M", o.bits, "Number of bits");
    sub->add_option("--eps", o.eps, "Override couplings eps0,eps1,eps2");
    sub->add_option("--units", o.units, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--threads", o.threads, "Worker threads (0: PIDTRUNC_THREADS or hardware)");
    add_output(sub, o.out);
  };
  auto* exp_weak = app.add_subcommand("exp-weak", "I^(k)/I^(N) profiles, weak higher-order couplings");
  add_exp(exp_weak, weak_opt, false);
  auto* exp_strong = app.add_subcommand("exp-strong", "I^(k)/I^(N) profiles, dominant triple couplings");
  add_exp(exp_strong, strong_opt, false);
  auto* exp_sampling = app.add_subcommand("exp-sampling", "Finite-sample bias and spread of I^(k) estimates");
  add_exp(exp_sampling, samp_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*exact) {
      const auto p = load_problem(exact_in);
      const std::size_t kmax = exact_kmax ? exact_kmax : p.features.size();
      emit(exact_out, profile_output(i_k_profile(p.dist, p.target, p.features, kmax), exact_out.format),
           out);
    } else if (*estimate) {
      std::map<std::string, std::size_t> declared;
      for (const auto& c : cards) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) throw ArgumentError("--card expects NAME=INT, got '" + c + "'");
        const auto n = parse_numbers<std::size_t>(c.substr(eq + 1));
        declared[c.substr(0, eq)] = n.front();
      }
      auto samples = read_samples(samples_path, declared);
      const auto target_names = split_list(est_ref.target);
      VariableId target;
      if (target_names.size() == 1) {
        target = samples.id_of(target_names.front());
      } else {
        std::vector<VariableId> members;
        std::string joined;
        for (const auto& n : target_names) {
          members.push_back(samples.id_of(n));
          joined += (joined.empty() ? "" : "+") + n;
        }
        samples = merge_variables(samples, members, joined);
        target = VariableId{samples.num_variables() - 1};
      }
      std::vector<VariableId> features;
      for (std::size_t i = 0; i < samples.num_variables(); ++i) {
        if (i != target.index) features.push_back(VariableId{i});
      }
      if (features.empty()) throw ArgumentError("no feature columns besides the target");

      const auto units = units_of(est_ref).value_or(LogBase::nats);
      const auto emp = empirical(samples, units);

      // reference distribution for the exact column, matched by variable name
      std::optional<Problem> ref;
      if (!est_ref.dist_path.empty() || !est_ref.model_path.empty()) {
        InputOptions ref_in = est_ref;
        if (!est_ref.model_path.empty()) ref_in.target.clear();
        ref = load_problem(ref_in);
        ref->dist = ref->dist.with_log_base(units);
      }
      auto exact_for = [&](std::size_t k) -> std::optional<double> {
        if (!ref) return std::nullopt;
        std::vector<VariableId> ref_features;
        for (auto id : features) ref_features.push_back(ref->dist.id_of(samples.variables()[id.index].name));
        return i_k(ref->dist, ref->target, ref_features, k);
      };

      std::vector<std::size_t> orders;
      if (est_kmax) {
        for (std::size_t k = 1; k <= est_kmax; ++k) orders.push_back(k);
      } else if (est_k) {
        orders.push_back(est_k);
      } else {
        throw ArgumentError("estimate needs --k or --kmax");
      }
      std::vector<EstimateRow> rows;
      for (auto k : orders) {
        EstimateRow row;
        row.sample_count = samples.num_rows();
        row.k = k;
        row.raw = i_k_estimate(emp, target, features, k, false);
        row.corrected = i_k_estimate(emp, target, features, k, true);
        row.exact = exact_for(k);
        rows.push_back(row);
      }
      if (est_out.format == "json") {
        json items = json::array();
        for (const auto& r : rows) {
          json item = {{"k", r.k}, {"raw", r.raw}};
          item["corrected"] = no_bias ? json(nullptr) : json(r.corrected);
          item["estimate"] = no_bias ? r.raw : r.corrected;
          item["exact"] = r.exact ? json(*r.exact) : json(nullptr);
          const auto ih = r.i_hat(!no_bias);
          item["i_hat"] = ih ? json(*ih) : json(nullptr);
          items.push_back(std::move(item));
        }
        json j = {{"N_s", samples.num_rows()},
                  {"units", std::string(to_string(units))},
                  {"bias_correction", !no_bias},
                  {"estimates", std::move(items)}};
        emit(est_out, j.dump(2) + "\n", out);
      } else {
        emit(est_out, estimate_rows_to_csv(rows, !no_bias), out);
      }
    } else if (*select) {
      const auto p = load_problem(sel_in);
      SelectionOptions opts;
      opts.prune = prune;
      opts.prune_tolerance = prune_tol;
      const auto report = select_features(p.dist, p.target, p.features, sel_k, opts);
      const auto relevant = names_of(p.dist, report.relevant);
      if (sel_out.format == "json") {
        json per = json::array();
        for (const auto& a : report.per_outcome_argmax) {
          json subsets = json::array();
          for (const auto& s : a.subsets) {
            subsets.push_back(names_of(p.dist, std::vector<VariableId>(s.members().begin(), s.members().end())));
          }
          per.push_back({{"outcome", a.outcome}, {"value", a.value}, {"subsets", std::move(subsets)}});
        }
        json j = {{"k", report.k},
                  {"I_k", {report.i_k_full}},
                  {"delta", json::array()},
                  {"units", std::string(to_string(report.units))},
                  {"relevant", relevant},
                  {"I_k_selected", report.i_k_selected},
                  {"per_outcome_argmax", std::move(per)}};
        if (prune) {
          j["pruned"] = names_of(p.dist, report.pruned);
          j["I_k_pruned"] = report.i_k_pruned;
        }
        emit(sel_out, j.dump(2) + "\n", out);
      } else {
        std::ostringstream csv;
        csv << "k,relevant\n";
        for (const auto& name : prune ? names_of(p.dist, report.pruned) : relevant) {
          csv << report.k << ',' << name << '\n';
        }
        emit(sel_out, csv.str(), out);
      }
    } else if (*model_gen) {
      const auto eps = parse_numbers<double>(gen_eps);
      if (eps.size() != 3) throw ArgumentError("--eps needs three values");
      const auto spec = generate_spec(gen_bits, {eps[0], eps[1], eps[2]}, gen_seed,
                                      parse_mask_policy(gen_mask));
      const std::string text = spec_to_json(spec).dump(2) + "\n";
      if (gen_out.empty()) {
        out << text;
      } else {
        write_text(gen_out, text);
      }
      if (!gen_dist_out.empty() || gen_draw > 0) {
        const auto split = split_target(build_distribution(spec, parse_log_base(gen_units)), spec);
        if (!gen_dist_out.empty()) write_distribution(gen_dist_out, split.dist);
        if (gen_draw > 0) {
          if (gen_samples_out.empty()) throw ArgumentError("--draw needs --samples-out");
          write_samples(gen_samples_out, sample(split.dist, gen_draw, derive_seed(gen_seed, gen_draw)));
        }
      }
    } else {
      const bool is_weak = exp_weak->parsed();
      const bool is_strong = exp_strong->parsed();
      const ExpOptions& o = is_weak ? weak_opt : is_strong ? strong_opt : samp_opt;
      ExperimentConfig config = is_weak     ? ExperimentConfig::weak()
                                : is_strong ? ExperimentConfig::strong()
                                            : ExperimentConfig::sampling();
      config.bits = o.bits;
      config.units = parse_log_base(o.units);
      config.threads = o.threads;
      config.output_path = o.out.out_path;
      if (!o.eps.empty()) {
        const auto eps = parse_numbers<double>(o.eps);
        if (eps.size() != 3) throw ArgumentError("--eps needs three values");
        config.eps = {eps[0], eps[1], eps[2]};
      }
      ResultTable table;
      if (is_weak || is_strong) {
        if (!o.seeds.empty()) config.seeds = parse_numbers<std::uint64_t>(o.seeds);
        table = is_weak ? run_profile_weak(config) : run_profile_strong(config);
      } else {
        config.seeds = {o.seed};
        if (!o.grid.empty()) config.sample_sizes = parse_numbers<std::size_t>(o.grid);
        config.resample_count = o.resamples;
        table = run_sampling(config);
      }
      emit(o.out, table_output(table, o.out.format), out);
    }
  } catch (const DomainError& e) {
    err << "pidtrunc: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ArgumentError& e) {
    err << "pidtrunc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "pidtrunc: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace pidtrunc::cli
