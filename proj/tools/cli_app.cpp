// Copyright 2026 The Dynkin Authors
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


#include "cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "dynkin/dynkin.hpp"

namespace dynkin::cli {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return kExitMalformed;
    case ErrorCode::kInvalid:
    case ErrorCode::kValidation: return kExitValidation;
    case ErrorCode::kInfeasibleSize: return kExitInfeasible;
    case ErrorCode::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

namespace {

struct Config {
  bool float_mode = false;
  bool exact_mode = false;
  unsigned threads = 1;
  std::string out_path;
  std::string csv_path;

  std::string instance;
  std::string xi;
  std::string zeta;
  std::string strategy;
  std::string p1_out;
  std::string p2_out;
  std::int64_t cap = kDefaultEnumerationCap;
  int iterations = 0;
  std::string schedule = "alternating";
  int outer = 2;
  std::string strategy_class = "pure";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int kappa = -1;
  long n_max = 0;
  int smooth_player = 1;
  std::string reproduce_id;
  std::string instance_out;
  int grid_k = 10;

  NumberMode mode() const { return float_mode ? NumberMode::kFloat : NumberMode::kExact; }
};

struct Output {
  Json report;
  std::optional<std::string> csv;
  int status = kExitOk;
};

Json num(const Rational& q, const Config& c) { return format_number(q, c.mode()); }

Json checks_json(const std::vector<CheckResult>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

Json comparison_json(const Comparison& c, const Config& cfg) {
  return {{"mean", c.estimate.mean},
          {"std_error", c.estimate.std_error},
          {"exact", num(c.exact, cfg)},
          {"deviation", c.deviation()},
          {"within_3_std_error", c.within(3)}};
}

// Player one's and player two's strategies for commands that take a pair.
std::pair<BehavioralStrategy, BehavioralStrategy> read_pair(const GameInstance& inst, const Config& c) {
  auto xi = read_strategy_file(c.xi, inst);
  auto zeta = read_strategy_file(c.zeta, inst);
  if (xi.owner() != Player::kOne || zeta.owner() != Player::kTwo) {
    throw DynkinError(ErrorCode::kInvalid, "--xi must hold a player-1 strategy and --zeta a player-2 strategy");
  }
  return {std::move(xi), std::move(zeta)};
}

Output cmd_validate(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  const auto report = validate_instance(inst);
  bool playable = true;
  for (const auto& chk : report.checks) {
    if (chk.name != check_names::kOrdering && chk.name != check_names::kInitialCoarse && !chk.passed) playable = false;
  }
  Output o;
  o.report = {{"command", "validate"},
              {"num_paths", inst.num_paths()},
              {"grid_size", inst.grid().size()},
              {"playable", playable},
              {"all_passed", report.all_passed()},
              {"checks", checks_json(report.checks)}};
  o.status = playable ? kExitOk : kExitValidation;
  return o;
}

Output cmd_evaluate(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  const auto [xi, zeta] = read_pair(inst, c);
  const Rational control = expected_payoff(inst, xi, zeta);
  const Rational joint = expected_payoff_by_joint_law(inst, xi, zeta);
  if (control != joint) throw DynkinError(ErrorCode::kInternal, "payoff evaluators disagree");
  Output o;
  o.report = {{"command", "evaluate"}, {"payoff", num(control, c)}};
  return o;
}

void write_strategy(const std::string& path, const BehavioralStrategy& b) {
  if (!path.empty()) write_text_file(path, dump_json(strategy_to_json(b)));
}

Output cmd_solve(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  Output o;
  if (c.iterations > 0) {
    const Schedule s = c.schedule == "simultaneous" ? Schedule::kSimultaneous : Schedule::kAlternating;
    const auto fp = fictitious_play(inst, c.iterations, s);
    o.report = {{"command", "solve"},
                {"method", "fictitious_play"},
                {"schedule", c.schedule},
                {"lower_bound", num(fp.lower, c)},
                {"upper_bound", num(fp.upper, c)},
                {"gap", num(fp.upper - fp.lower, c)},
                {"iterations", fp.iterations},
                {"converged", fp.converged},
                {"best_p1", increments_json(fp.best_p1, c.mode())},
                {"best_p2", increments_json(fp.best_p2, c.mode())}};
    write_strategy(c.p1_out, fp.best_p1);
    write_strategy(c.p2_out, fp.best_p2);
    if (!c.csv_path.empty()) o.csv = strategy_csv(inst, {fp.best_p1, fp.best_p2}, c.mode());
    return o;
  }
  const auto r = solve_matrix_game(inst, {c.cap, c.threads});
  o.report = report_to_json(r, c.mode());
  o.report["command"] = "solve";
  o.report["method"] = "linear_program";
  write_strategy(c.p1_out, r.optimal_p1);
  write_strategy(c.p2_out, r.optimal_p2);
  if (!c.csv_path.empty()) o.csv = strategy_csv(inst, {r.optimal_p1, r.optimal_p2}, c.mode());
  return o;
}

Output cmd_best_response(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  const auto fixed = read_strategy_file(c.strategy, inst);
  const Player responder = opponent(fixed.owner());
  const auto br = best_response_value(inst, fixed, responder);
  Output o;
  o.report = {{"command", "best-response"},
              {"responder", player_number(responder)},
              {"value", num(br.value, c)},
              {"stop_index", br.time.indices()}};
  if (!c.csv_path.empty()) o.csv = strategy_csv(inst, {behavioral_from_pure(br.time, inst)}, c.mode());
  return o;
}

Output cmd_restricted(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  const Player outer = player_from_number(c.outer);
  const StrategyClass cls = c.strategy_class == "pure" ? StrategyClass::kPure : StrategyClass::kRandomised;
  const auto r = restricted_value(inst, outer, cls, StrategyClass::kPure, c.cap);
  Output o;
  o.report = {{"command", "restricted"},
              {"outer", c.outer},
              {"outer_class", to_string(cls)},
              {"value", num(r.value, c)},
              {"outer_choice", r.outer_choice ? Json(r.outer_choice->indices()) : Json(nullptr)}};
  return o;
}

Output cmd_simulate(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  const auto [xi, zeta] = read_pair(inst, c);
  const SimulationOptions opt{c.samples, c.seed, c.threads};
  const int k = c.kappa < 0 ? inst.terminal() - 1 : c.kappa;
  const std::vector<int> kappa(static_cast<std::size_t>(inst.num_paths()), k);
  const auto game = sample_game(inst, xi, zeta, opt);
  const auto dev1 = check_device_identity(inst, xi, kappa, opt);
  const auto dev2 = check_device_identity(inst, zeta, kappa, opt);
  const auto sim = check_simultaneous(inst, xi, zeta, opt);
  Output o;
  o.report = {{"command", "simulate"},
              {"samples", c.samples},
              {"seed", c.seed},
              {"kappa", k},
              {"payoff", comparison_json(game, c)},
              {"device_p1", {{"at_or_before", comparison_json(dev1.at_or_before, c)},
                             {"before", comparison_json(dev1.before, c)}}},
              {"device_p2", {{"at_or_before", comparison_json(dev2.at_or_before, c)},
                             {"before", comparison_json(dev2.before, c)}}},
              {"tie_frequency", comparison_json(sim.tie_frequency, c)},
              {"tie_payoff", comparison_json(sim.tie_payoff, c)}};
  return o;
}

Output cmd_mollify(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  require_playable(inst);
  const auto [xi, zeta] = read_pair(inst, c);
  const bool smooth_xi = c.smooth_player == 1;
  const auto& smooth = smooth_xi ? xi : zeta;
  const auto& other = smooth_xi ? zeta : xi;
  const long sat = saturation_n(inst.grid());
  const long n_max = c.n_max > 0 ? c.n_max : sat;

  std::vector<long> ns;
  for (long n = 1; n < n_max; n *= 2) ns.push_back(n);
  ns.push_back(n_max);
  if (n_max < sat) ns.push_back(sat);

  Json series = Json::array();
  std::ostringstream csv;
  csv << "n,payoff\n";
  bool regular = true;
  for (long n : ns) {
    const auto m = mollify(smooth, inst, n);
    regular = regular && is_monotone(m) && lipschitz_holds(m, inst);
    const Rational v = mollified_payoff(inst, m, other);
    series.push_back({{"n", n}, {"payoff", num(v, c)}});
    csv << n << ',' << format_number(v, c.mode()) << '\n';
  }
  Output o;
  o.report = {{"command", "mollify"},
              {"smoothed_player", c.smooth_player},
              {"saturation_n", sat},
              {"payoff_unsmoothed", num(expected_payoff(inst, xi, zeta), c)},
              {"series", std::move(series)},
              {"monotone_and_lipschitz", regular}};
  if (smooth_xi) o.report["limit"] = num(mollified_limit(inst, xi, zeta), c);
  if (!c.csv_path.empty()) o.csv = csv.str();
  return o;
}

Output cmd_reproduce(const Config& c) {
  const auto r = reproduce(counterexample_from_id(c.reproduce_id), c.grid_k);
  if (!c.instance_out.empty()) write_text_file(c.instance_out, serialize_instance(r.instance));
  Json values = Json::object();
  for (const auto& v : r.values) values[v.name] = num(v.value, c);
  Json checks = Json::array();
  for (const auto& chk : r.checks) checks.push_back({{"name", chk.name}, {"passed", chk.passed}, {"detail", chk.detail}});
  Output o;
  o.report = {{"command", "reproduce"},
              {"id", r.id},
              {"grid_K", r.grid_k},
              {"grid_size", r.instance.grid().size()},
              {"values", std::move(values)},
              {"checks", std::move(checks)},
              {"all_passed", r.all_passed()},
              {"notes", r.notes},
              {"solution", report_to_json(r.solution, c.mode())}};
  if (!c.csv_path.empty()) o.csv = strategy_csv(r.instance, {r.solution.optimal_p1, r.solution.optimal_p2}, c.mode());
  o.status = r.all_passed() ? kExitOk : kExitInternal;
  return o;
}

Output cmd_convert(const Config& c) {
  const auto inst = read_instance_file(c.instance);
  Output o;
  o.report = c.strategy.empty() ? instance_to_json(inst) : strategy_to_json(read_strategy_file(c.strategy, inst));
  return o;
}

Json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact solver and toolkit for finite Dynkin games", "dynkin_cli"};
  app.require_subcommand(1);
  auto* exact = app.add_flag("--exact", c.exact_mode, "Print values as exact num/den rationals (default)");
  app.add_flag("--float", c.float_mode, "Print values as 12-significant-digit decimals")->excludes(exact);
  app.add_option("--threads", c.threads, "Worker threads for payoff matrices and sampling")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", c.out_path, "Also write the JSON report to this file");
  app.add_option("--csv", c.csv_path, "Write a CSV table (strategies or mollifier series) to this file");

  auto instance_arg = [&](CLI::App* sub) {
    sub->add_option("instance", c.instance, "Instance JSON file")->required();
    sub->fallthrough();
  };
  auto pair_args = [&](CLI::App* sub) {
    sub->add_option("--xi", c.xi, "Player-1 strategy file")->required();
    sub->add_option("--zeta", c.zeta, "Player-2 strategy file")->required();
  };

  auto* validate = app.add_subcommand("validate", "Run the instance checks");
  instance_arg(validate);

  auto* evaluate = app.add_subcommand("evaluate", "Exact expected payoff of a strategy pair");
  instance_arg(evaluate);
  pair_args(evaluate);

  auto* solve = app.add_subcommand("solve", "Exact value and optimal strategies");
  instance_arg(solve);
  solve->add_option("--cap", c.cap, "Maximum pure stopping times per player")->check(CLI::PositiveNumber);
  solve->add_option("--iterations", c.iterations, "Run fictitious play for this many rounds instead of the LP")
      ->check(CLI::PositiveNumber);
  solve->add_option("--schedule", c.schedule, "Fictitious-play schedule")
      ->check(CLI::IsMember({"alternating", "simultaneous"}));
  solve->add_option("--p1-out", c.p1_out, "Write player 1's optimal strategy to this file");
  solve->add_option("--p2-out", c.p2_out, "Write player 2's optimal strategy to this file");

  auto* best = app.add_subcommand("best-response", "Optimal pure reply to a fixed strategy");
  instance_arg(best);
  best->add_option("--strategy", c.strategy, "Strategy file of the fixed player")->required();

  auto* restricted = app.add_subcommand("restricted", "Value with the outer player limited to a strategy class");
  instance_arg(restricted);
  restricted->add_option("--outer", c.outer, "Outer player (1: inf-sup, 2: sup-inf)")->check(CLI::IsMember({1, 2}));
  restricted->add_option("--class", c.strategy_class, "Outer strategy class")
      ->check(CLI::IsMember({"pure", "randomised"}));
  restricted->add_option("--cap", c.cap, "Maximum pure stopping times per player")->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo checks against exact values");
  instance_arg(simulate);
  pair_args(simulate);
  simulate->add_option("--samples", c.samples, "Number of samples")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", c.seed, "Base seed");
  simulate->add_option("--kappa", c.kappa, "Index for the device identity (default K - 1)");

  auto* mollify_cmd = app.add_subcommand("mollify", "Payoff of a mollified strategy as n grows");
  instance_arg(mollify_cmd);
  pair_args(mollify_cmd);
  mollify_cmd->add_option("--n-max", c.n_max, "Largest mollifier parameter (default: saturation)")
      ->check(CLI::PositiveNumber);
  mollify_cmd->add_option("--player", c.smooth_player, "Player whose strategy is smoothed")
      ->check(CLI::IsMember({1, 2}));

  auto* repro = app.add_subcommand("reproduce", "Rebuild and check a counterexample (9.1, 9.2, 9.3)");
  repro->add_option("id", c.reproduce_id, "Counterexample id")->required();
  repro->add_option("--grid-K", c.grid_k, "Uniform grid refinement")->check(CLI::PositiveNumber);
  repro->add_option("--instance-out", c.instance_out, "Write the counterexample instance to this file");
  repro->fallthrough();

  auto* convert = app.add_subcommand("convert", "Rewrite an instance or strategy in canonical form");
  instance_arg(convert);
  convert->add_option("--strategy", c.strategy, "Convert this strategy file instead of the instance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << dump_json(error_json("usage", e.what()));
    return kExitMalformed;
  }

  try {
    Output o;
    if (*validate) o = cmd_validate(c);
    else if (*evaluate) o = cmd_evaluate(c);
    else if (*solve) o = cmd_solve(c);
    else if (*best) o = cmd_best_response(c);
    else if (*restricted) o = cmd_restricted(c);
    else if (*simulate) o = cmd_simulate(c);
    else if (*mollify_cmd) o = cmd_mollify(c);
    else if (*repro) o = cmd_reproduce(c);
    else o = cmd_convert(c);

    if (o.report.is_object() && !o.report.contains("format")) o.report["number_mode"] = c.float_mode ? "float" : "exact";
    const std::string text = dump_json(o.report);
    out << text;
    if (!c.out_path.empty()) write_text_file(c.out_path, text);
    if (o.csv) write_text_file(c.csv_path, *o.csv);
    return o.status;
  } catch (const DynkinError& e) {
    err << dump_json(error_json(error_code_name(e.code()), e.what()));
    return exit_code(e.code());
  }
}

}  // namespace dynkin::cli
