// Copyright 2026 The Screening Contracts Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cli/verify.hpp"
#include "screening/error.hpp"
#include "screening/maxmin.hpp"
#include "screening/plausible_set.hpp"

namespace screening::cli {
namespace {

std::string short_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const PlausibleSet* theta_of(const ExpertSpec& e) {
  if (const auto* u = std::get_if<Uninformed>(&e.kind)) return &u->theta;
  if (const auto* p = std::get_if<PartiallyInformed>(&e.kind)) return &p->ball;
  return nullptr;
}

std::string kind_name(const ExpertSpec& e) {
  if (std::holds_alternative<Uninformed>(e.kind)) return "uninformed";
  if (std::holds_alternative<PartiallyInformed>(e.kind)) return "partial";
  return "informed";
}

MaxminReport analyze(const Scenario& sc, std::size_t i, const Contract& c, double tol,
                     int max_iter) {
  const ExpertSpec& e = sc.experts[i];
  if (const PlausibleSet* theta = theta_of(e)) return uninformed_maxmin(*theta, c, tol, max_iter);
  return analyze_expert(e, c, sc.nature, sc.states.size(), tol);
}

Forecast nature_reference(const Scenario& sc) {
  if (const auto* f = std::get_if<FixedNature>(&sc.nature)) return f->truth;
  return Forecast::uniform(sc.states.size());
}

class Warnings {
 public:
  void add(std::string kind, std::string message, Json extra = Json::object()) {
    Json w{{"kind", std::move(kind)}, {"message", std::move(message)}};
    for (auto& [key, value] : extra.items()) w[key] = value;
    list_.push_back(std::move(w));
  }
  Json take() { return std::move(list_); }

 private:
  Json list_ = Json::array();
};

Json contract_json(const Contract& c) {
  Json out{{"method", to_string(Method::kExact)},
           {"policy", policy_name(c.policy())},
           {"role", c.role() == ExpertRole::kFirst ? "first" : "second"},
           {"margin", c.margin()}};
  if (const auto& w = c.witnesses()) {
    out["witnesses"] = Json::array({forecast_to_json(w->first), forecast_to_json(w->second)});
    out["witness_distance_sq"] = l2_dist_sq(w->first, w->second);
  }
  return out;
}

Json strategy_json(const MixedStrategy& xi) {
  Json atoms = Json::array();
  for (const auto& a : xi.atoms()) {
    atoms.push_back(Json{{"forecast", forecast_to_json(a.forecast)}, {"weight", a.weight}});
  }
  return atoms;
}

Json maxmin_json(const MaxminReport& r) {
  return Json{{"method", to_string(r.method)},
              {"value", r.value},
              {"decision", to_string(r.decision)},
              {"radius_sq", r.radius_sq},
              {"optimal_strategy", strategy_json(r.optimal_strategy)},
              {"worst_case_truth", forecast_to_json(r.worst_case_truth)},
              {"iterations", r.iterations},
              {"certified", r.certified}};
}

// Warning conditions for one analyzed expert.
void inspect(const ExpertSpec& e, const Contract& c, const MaxminReport& r,
             Warnings& warnings) {
  if (!r.certified) {
    warnings.add("uncertified_chebyshev",
                 e.id + ": Chebyshev solver did not certify convergence after " +
                     std::to_string(r.iterations) + " iterations",
                 Json{{"expert", e.id}, {"radius_sq", r.radius_sq}});
  }
  const PlausibleSet* theta = theta_of(e);
  if (theta == nullptr) return;
  if (const auto* ball = theta->as_ball(); ball != nullptr && is_clipped(*ball)) {
    warnings.add("clipped_ball",
                 e.id + ": ball is clipped by the simplex; its Chebyshev radius is "
                        "computed from a boundary sample, not in closed form",
                 Json{{"expert", e.id}});
  }
  if (std::holds_alternative<PaperEpsilon>(c.policy()) && r.decision == Decision::kAccept) {
    const auto& w = *c.witnesses();
    const double d_sq = l2_dist_sq(w.first, w.second);
    const double paper_bound = c.margin() - d_sq / 2.0;
    const double safe_margin = d_sq / 8.0;
    warnings.add(
        "paper_epsilon_acceptance",
        e.id + ": margin ||fx-fy||^2/2 = " + short_number(c.margin()) +
            " lets an uninformed expert accept (maxmin value " + short_number(r.value) +
            "); the bound margin - ||fx-fy||^2/2 = " + short_number(paper_bound) +
            " is not negative. Margin ||fx-fy||^2/8 = " + short_number(safe_margin) +
            " gives value " + short_number(safe_margin - r.radius_sq),
        Json{{"expert", e.id},
             {"paper_bound", paper_bound},
             {"computed_value", r.value},
             {"safe_margin", safe_margin},
             {"safe_value", safe_margin - r.radius_sq}});
  }
}

Json expert_header(const ExpertSpec& e, const ExpertSpec& rival) {
  return Json{{"id", e.id},
              {"kind", kind_name(e)},
              {"expected_decision", to_string(expected_decision(e, rival))}};
}

void emit(const Json& report, std::ostream& out, std::ostream& err) {
  out << report.dump(2) << '\n';
  for (const auto& w : report["warnings"]) {
    err << "warning: " << w["message"].get<std::string>() << '\n';
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::string exact_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json analyze_report(const Scenario& sc, const AnalyzeOptions& opts) {
  const auto contracts = resolve_contracts(sc);
  Warnings warnings;
  Json experts = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const ExpertSpec& e = sc.experts[i];
    const MaxminReport r = analyze(sc, i, contracts[i], opts.tol, opts.max_iter);
    inspect(e, contracts[i], r, warnings);
    Json entry = expert_header(e, sc.experts[1 - i]);
    entry["contract"] = contract_json(contracts[i]);
    entry["analysis"] = maxmin_json(r);
    experts.push_back(std::move(entry));
  }
  return Json{{"command", "analyze"},
              {"scenario", scenario_to_json(sc)},
              {"tolerance", opts.tol},
              {"max_iter", opts.max_iter},
              {"experts", std::move(experts)},
              {"warnings", warnings.take()}};
}

Json oracle_report(const Scenario& sc, const OracleOptions& opts) {
  const auto contracts = resolve_contracts(sc);
  const double bound = 3.0 / static_cast<double>(opts.grid_k);
  Warnings warnings;
  Json experts = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const ExpertSpec& e = sc.experts[i];
    const MaxminReport exact = analyze(sc, i, contracts[i], opts.tol, opts.max_iter);
    inspect(e, contracts[i], exact, warnings);
    // An informed expert is an uninformed one whose set is the truth alone.
    const PlausibleSet theta = theta_of(e) != nullptr
                                   ? *theta_of(e)
                                   : PlausibleSet::finite({nature_reference(sc)});
    const OracleResult o = oracle_maxmin(theta, contracts[i], opts.grid_k, opts.mixtures);

    Json oracle = maxmin_json(o.report);
    oracle["grid_k"] = opts.grid_k;
    oracle["point_mass_value"] = o.point_mass_value;
    oracle["strategies"] = o.strategies;
    oracle["truths"] = o.truths;
    oracle["rivals"] = o.rivals;
    if (o.mixture_value) {
      const bool dominated = *o.mixture_value <= exact.value + 1e-9 &&
                             *o.mixture_value <= *o.mixture_mean_value + 1e-9;
      oracle["mixtures"] = Json{{"method", to_string(Method::kOracle)},
                                {"value", *o.mixture_value},
                                {"mean_point_mass_value", *o.mixture_mean_value},
                                {"dominated_by_point_masses", dominated}};
      if (!dominated) {
        warnings.add("mixture_dominance",
                     e.id + ": a mixed strategy beats the best point mass",
                     Json{{"expert", e.id}});
      }
    }
    oracle["audit"] = Json{{"method", to_string(Method::kOracle)},
                           {"minimizing_truth", forecast_to_json(o.audit.minimizing_truth)},
                           {"minimizing_rival", forecast_to_json(o.audit.minimizing_rival)},
                           {"grid_rival_offset", o.audit.grid_rival_offset},
                           {"grid_rival_gap", o.audit.grid_rival_gap},
                           {"grid_tolerance", o.audit.grid_tolerance},
                           {"reduction_holds", o.audit.reduction_holds}};

    const double diff = exact.value - o.report.value;
    Json entry = expert_header(e, sc.experts[1 - i]);
    entry["contract"] = contract_json(contracts[i]);
    entry["exact"] = maxmin_json(exact);
    entry["oracle"] = std::move(oracle);
    entry["difference"] = Json{{"method", to_string(Method::kOracle)},
                               {"exact_minus_oracle", diff},
                               {"bound", bound},
                               {"within_bound", std::abs(diff) <= bound}};
    if (std::abs(diff) > bound) {
      warnings.add("oracle_disagreement",
                   e.id + ": exact and oracle values differ by " + short_number(diff) +
                       ", more than 3/k = " + short_number(bound),
                   Json{{"expert", e.id}});
    }
    experts.push_back(std::move(entry));
  }
  return Json{{"command", "oracle"},
              {"scenario", scenario_to_json(sc)},
              {"grid_k", opts.grid_k},
              {"mixtures", opts.mixtures},
              {"experts", std::move(experts)},
              {"warnings", warnings.take()}};
}

Json simulate_report(const Scenario& sc, const SimulationReport& sim, double tol) {
  const auto contracts = resolve_contracts(sc);
  Warnings warnings;
  Json experts = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const ExpertOutcome& o = sim.experts[i];
    inspect(sc.experts[i], contracts[i], o.analysis, warnings);
    Json entry = expert_header(sc.experts[i], sc.experts[1 - i]);
    entry["decision"] = to_string(o.decision);
    entry["analyzer"] = Json{{"method", to_string(o.analysis.method)},
                             {"value", o.analysis.value},
                             {"radius_sq", o.analysis.radius_sq},
                             {"certified", o.analysis.certified}};
    entry["payoff"] = Json{{"method", to_string(Method::kMonteCarlo)},
                           {"trials", o.payoff.count()},
                           {"mean", o.payoff.mean()},
                           {"variance", o.payoff.variance()},
                           {"stderr", o.payoff.standard_error()}};
    entry["expected_payoff"] = Json{{"method", to_string(Method::kMonteCarlo)},
                                    {"mean", o.conditional_expectation.mean()},
                                    {"stderr", o.conditional_expectation.standard_error()}};
    experts.push_back(std::move(entry));
  }
  return Json{{"command", "simulate"},
              {"scenario", scenario_to_json(sc)},
              {"tolerance", tol},
              {"experts", std::move(experts)},
              {"screening_correct", sim.screening_correct},
              {"trials", sim.trials},
              {"seed", sim.seed},
              {"warnings", warnings.take()}};
}

void write_csv(const SimulationReport& sim, std::ostream& out) {
  out << "id,decision,analyzer_value,mean_payoff,stderr,trials,seed\n";
  for (const auto& o : sim.experts) {
    out << csv_field(o.id) << ',' << to_string(o.decision) << ','
        << exact_number(o.analysis.value) << ',' << exact_number(o.payoff.mean()) << ','
        << exact_number(o.payoff.standard_error()) << ',' << sim.trials << ',' << sim.seed
        << '\n';
  }
}

int report_exit_code(const Json& report) {
  for (const auto& w : report["warnings"]) {
    if (w["kind"] == "uncertified_chebyshev") return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_analyze(const Scenario& sc, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err) {
  const Json report = analyze_report(sc, opts);
  emit(report, out, err);
  return report_exit_code(report);
}

int cmd_oracle(const Scenario& sc, const OracleOptions& opts, std::ostream& out,
               std::ostream& err) {
  // Fail on the grid cap before spending time on the exact analysis.
  if (!grid_size(sc.states.size(), opts.grid_k, kDefaultGridCap)) {
    throw Error(ErrorCode::kResolutionTooLarge,
                "grid-k " + std::to_string(opts.grid_k) + " over " +
                    std::to_string(sc.states.size()) + " states exceeds " +
                    std::to_string(static_cast<std::size_t>(kDefaultGridCap)) + " points");
  }
  const Json report = oracle_report(sc, opts);
  emit(report, out, err);
  return report_exit_code(report);
}

int cmd_simulate(Scenario sc, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
  if (opts.trials) sc.trials = *opts.trials;
  if (opts.seed) sc.seed = *opts.seed;
  validate_scenario(sc);
  const SimulationReport sim = run_tournament(sc, SimulationOptions{opts.threads, opts.tol});
  const Json report = simulate_report(sc, sim, opts.tol);
  if (opts.format == Format::kCsv) {
    write_csv(sim, out);
    for (const auto& w : report["warnings"]) {
      err << "warning: " << w["message"].get<std::string>() << '\n';
    }
  } else {
    emit(report, out, err);
  }
  return report_exit_code(report);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Screening contracts: acceptance analysis, oracle checks and tournaments"};
  app.require_subcommand(1);

  std::string path;
  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Exact acceptance analysis per expert");
  analyze_cmd->add_option("scenario", path, "Scenario file")->required();
  analyze_cmd->add_option("--tol", analyze.tol, "Chebyshev solver tolerance")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--max-iter", analyze.max_iter, "Chebyshev iteration cap")
      ->check(CLI::PositiveNumber);

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid oracle beside the exact values");
  oracle_cmd->add_option("scenario", path, "Scenario file")->required();
  oracle_cmd->add_option("--grid-k", oracle.grid_k, "Grid resolution")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_flag("--mixtures", oracle.mixtures, "Also search two-point mixtures");
  oracle_cmd->add_option("--tol", oracle.tol, "Chebyshev solver tolerance")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-iter", oracle.max_iter, "Chebyshev iteration cap")
      ->check(CLI::PositiveNumber);

  SimulateOptions simulate;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo tournament");
  simulate_cmd->add_option("scenario", path, "Scenario file")->required();
  auto* trials_opt = simulate_cmd->add_option("--trials", trials, "Override the trial count")
                         ->check(CLI::PositiveNumber);
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Override the seed");
  simulate_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate_cmd->add_option("--threads", simulate.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u));

  bool quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in property suites");
  verify_cmd->add_flag("--quick", quick, "Ten times fewer random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*verify_cmd) return cmd_verify(VerifyOptions{quick}, out, err);
    const Scenario sc = load_scenario(path);
    if (*analyze_cmd) return cmd_analyze(sc, analyze, out, err);
    if (*oracle_cmd) return cmd_oracle(sc, oracle, out, err);
    if (*trials_opt) simulate.trials = trials;
    if (*seed_opt) simulate.seed = seed;
    simulate.format = format == "csv" ? Format::kCsv : Format::kJson;
    return cmd_simulate(sc, simulate, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace screening::cli
