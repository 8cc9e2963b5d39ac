#include "gbk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gbk/rng.hpp"
#include "gbk/service.hpp"

namespace gbk {

namespace {

struct BoardArgs {
  std::string kind = "square";
  int n = 0;
  std::string switches;
  int t = 0;
  int a = 0;
  int b = 0;
  std::string board_file;
};

struct CommonArgs {
  std::string format = "human";
  int jobs = 1;
  int cap = 30;
  std::uint64_t seed = 0;
  std::string config_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void add_board_options(CLI::App* cmd, BoardArgs& board) {
  cmd->add_option("--board", board.kind, "Board generator: square, x_board, rotated_square, disk, hyperbola, cube");
  cmd->add_option("--n", board.n, "Board side");
  cmd->add_option("--switches", board.switches,
                  "Switch family: rows_cols, diag_plus_cols, slanted_plus_rows, restricted, cube_lines");
  cmd->add_option("--t", board.t, "Slope for slanted_plus_rows");
  cmd->add_option("--a", board.a, "Column switches for restricted");
  cmd->add_option("--b", board.b, "Row switches for restricted");
  cmd->add_option("--board-file", board.board_file, "Board+family JSON file (overrides the generator flags)");
}

void add_common_options(CLI::App* cmd, CommonArgs& common) {
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  cmd->add_option("--jobs", common.jobs, "Worker threads (default: GBK_JOBS or all cores)");
  cmd->add_option("--cap", common.cap, "Maximum number of enumerated switches");
  cmd->add_option("--seed", common.seed, "Seed for random configurations and strategies");
}

Instance load_instance(const BoardArgs& args) {
  if (!args.board_file.empty()) return instance_from_json(read_json(args.board_file));
  if (args.n < 1) throw ValidationError("--n must be given and at least 1 (or use --board-file)");
  const BoardSpec board{parse_board_kind(args.kind), args.n};
  SwitchSpec switches = args.switches.empty() ? default_switches(board.kind) : SwitchSpec{parse_switch_kind(args.switches)};
  switches.t = args.t;
  switches.a = args.a;
  switches.b = args.b;
  return make_instance(board, switches);
}

Configuration load_config(const CommonArgs& common, const Board& board) {
  if (!common.config_file.empty()) return parse_configuration(read_file(common.config_file), board);
  return random_configuration(board.area(), CounterRng(common.seed));
}

// Effective parameters, enough to reproduce the run.
json effective_params(const std::string& command, const BoardArgs& board, const Instance& inst,
                      const CommonArgs& common, json extra = json::object()) {
  json p = {{"command", command}, {"seed", common.seed}, {"jobs", common.jobs}, {"cap", common.cap}};
  if (inst.board_spec && inst.switch_spec) {
    p["board"] = spec_to_json(*inst.board_spec, *inst.switch_spec);
  } else {
    p["board_file"] = board.board_file;
  }
  if (!common.config_file.empty()) p["config_file"] = common.config_file;
  for (auto& [k, v] : extra.items()) p[k] = v;
  return p;
}

void print_header(std::ostream& out, const json& params) {
  out << "# gbk";
  for (auto& [k, v] : params.items()) out << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
  out << '\n';
}

void print_flipped(std::ostream& out, const Assignment& assignment, const SwitchFamily& family) {
  out << "flipped:";
  bool any = false;
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (assignment[s] < 0) {
      out << ' ' << family[s].id;
      any = true;
    }
  }
  out << (any ? "\n" : " (none)\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the Gale-Berlekamp switching game and its generalisations", "gbk"};
  app.require_subcommand(1);

  BoardArgs board;
  CommonArgs common;
  common.jobs = default_jobs();
  std::string assignment_file;
  std::string method = "auto";
  bool no_canonical = false;
  std::uint64_t config_cap = std::uint64_t{1} << 25;
  std::string strategy = "scramble-greedy";
  std::uint64_t trials = 1000;
  double lambda = 0;
  double delta = 0;
  std::uint64_t tries = 50;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string persist;
  std::string origin = "*";
  int solve_cap = 24;

  auto* gen = app.add_subcommand("gen", "Emit a board and its switch family as JSON");
  add_board_options(gen, board);

  auto* eval = app.add_subcommand("eval", "Signed discrepancy of a configuration under an assignment");
  add_board_options(eval, board);
  add_common_options(eval, common);
  eval->add_option("--config", common.config_file, "Configuration file (JSON or +/- grid)");
  eval->add_option("--assignment", assignment_file, "Assignment JSON (default: no switch pulled)");

  auto* solve = app.add_subcommand("solve", "Maximise the signed discrepancy");
  add_board_options(solve, board);
  add_common_options(solve, common);
  solve->add_option("--config", common.config_file, "Configuration file (JSON or +/- grid)");
  solve->add_option("--method", method, "auto, exact, split, greedy, local, x-cycle or hyperbola")
      ->check(CLI::IsMember({"auto", "exact", "split", "greedy", "local", "x-cycle", "hyperbola"}));

  auto* mm = app.add_subcommand("minimax", "Worst-case configuration of the best achievable discrepancy");
  add_board_options(mm, board);
  add_common_options(mm, common);
  mm->add_flag("--no-canonical", no_canonical, "Scan every configuration");
  mm->add_option("--config-cap", config_cap, "Maximum configurations scanned");

  auto* construct = app.add_subcommand("construct", "Build adversarial configurations");
  construct->require_subcommand(1);
  auto* remove_ii = construct->add_subcommand("remove-ii", "Switch-free block of -1, random elsewhere");
  remove_ii->add_option("--n", board.n, "Board side")->required();
  remove_ii->add_option("--a", board.a, "Controlled columns");
  remove_ii->add_option("--b", board.b, "Controlled rows");
  remove_ii->add_option("--delta", delta, "Use a = b = round((1 - delta) n)");
  add_common_options(remove_ii, common);
  auto* remove_iii = construct->add_subcommand("remove-iii", "Chessboard blocks with -1 blocks, a + b = n");
  remove_iii->add_option("--n", board.n, "Board side")->required();
  remove_iii->add_option("--a", board.a, "Controlled columns")->required();
  remove_iii->add_option("--b", board.b, "Controlled rows")->required();
  add_common_options(remove_iii, common);
  auto* hard = construct->add_subcommand("hard-config", "Sample configurations until the maximum is <= lambda");
  add_board_options(hard, board);
  add_common_options(hard, common);
  hard->add_option("--lambda", lambda, "Target bound")->required();
  hard->add_option("--tries", tries, "Maximum samples");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo statistics of a randomised strategy");
  add_board_options(estimate, board);
  add_common_options(estimate, common);
  estimate->add_option("--strategy", strategy, "scramble-greedy, hyperbola or local-search");
  estimate->add_option("--trials", trials, "Number of trials");
  estimate->add_option("--config", common.config_file, "Fixed configuration instead of fresh random ones");
  common.format = "human";

  auto* constants = app.add_subcommand("constants", "Asymptotic constants of the bounds");
  constants->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"human", "json"}));

  auto* serve = app.add_subcommand("serve", "Start the HTTP session service");
  serve->add_option("--host", host, "Interface to bind");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--persist", persist, "Append session events to this JSON-lines file and replay it at start");
  serve->add_option("--origin", origin, "Allowed CORS origin");
  serve->add_option("--solve-cap", solve_cap, "Switch cap for exact solves");
  serve->add_option("--jobs", common.jobs, "Worker threads for solves");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Help for the failing subcommand when there is one.
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitValidation;
  }
  const bool as_json = common.format == "json" || (estimate->parsed() && common.format == "human" &&
                                                   !estimate->get_option("--format")->count());

  try {
    if (gen->parsed()) {
      const Instance inst = load_instance(board);
      out << instance_to_json(inst.board, inst.family).dump() << '\n';
      return kExitOk;
    }

    if (constants->parsed()) {
      const auto table = theorem_constants();
      if (common.format == "json") {
        json doc = json::object();
        for (const auto& c : table) doc[std::string(c.name)] = c.value;
        out << doc.dump() << '\n';
      } else {
        for (const auto& c : table) {
          out << std::left << std::setw(22) << c.name << std::fixed << std::setprecision(6) << c.value << "  "
              << c.meaning << '\n';
        }
      }
      return kExitOk;
    }

    if (serve->parsed()) {
      ServiceOptions options;
      options.solve_cap = solve_cap;
      options.jobs = common.jobs;
      options.persist_path = persist;
      SessionStore store(options);
      if (!persist.empty()) {
        const std::size_t events = store.replay(persist);
        err << "replayed " << events << " events from " << persist << '\n';
      }
      HttpService http(store, origin);
      const int bound = http.bind(host, port);
      if (bound < 0) throw ValidationError("cannot bind " + host + ":" + std::to_string(port));
      out << "listening on http://" << host << ':' << bound << std::endl;
      http.listen();
      return kExitOk;
    }

    if (construct->parsed()) {
      Configuration config;
      json params;
      std::optional<Board> square;
      if (remove_ii->parsed()) {
        int a = board.a;
        int b = board.b;
        if (delta > 0) {
          if (delta >= 1) throw ValidationError("--delta must lie in (0, 1)");
          a = b = static_cast<int>(std::lround((1.0 - delta) * board.n));
        }
        config = build_remove_ii(board.n, a, b, common.seed);
        params = {{"command", "construct remove-ii"}, {"n", board.n}, {"a", a}, {"b", b}, {"seed", common.seed}};
        square = make_board({BoardKind::square, board.n});
      } else if (remove_iii->parsed()) {
        config = build_remove_iii(board.n, board.a, board.b);
        params = {{"command", "construct remove-iii"}, {"n", board.n}, {"a", board.a}, {"b", board.b}};
        square = make_board({BoardKind::square, board.n});
      } else {
        const Instance inst = load_instance(board);
        const HardConfigOutcome outcome =
            sample_hard_config(inst.board, inst.family, lambda, tries, common.seed, {common.cap, common.jobs});
        params = effective_params("construct hard-config", board, inst, common, {{"lambda", lambda}, {"tries", tries}});
        if (as_json) {
          out << json{{"params", params},
                      {"found", outcome.found},
                      {"certificate", certificate_to_json(outcome.best, inst.board)}}
                     .dump()
              << '\n';
        } else {
          print_header(out, params);
          out << (outcome.found ? "found" : "not found") << " after " << outcome.best.tries << " tries\n";
          out << "certified_max " << outcome.best.certified_max << " (lambda " << lambda << ")\n";
          if (inst.board.dim() == 2) out << configuration_to_grid(outcome.best.config, inst.board);
        }
        return outcome.found ? kExitOk : kExitBudget;
      }
      if (as_json) {
        out << json{{"params", params}, {"config", configuration_to_json(config, *square)}}.dump() << '\n';
      } else {
        print_header(out, params);
        out << configuration_to_grid(config, *square);
      }
      return kExitOk;
    }

    const Instance inst = load_instance(board);

    if (eval->parsed()) {
      const Configuration config = load_config(common, inst.board);
      const Assignment assignment = assignment_file.empty() ? Assignment::identity(inst.family.size())
                                                            : assignment_from_json(read_json(assignment_file), inst.family);
      const std::int64_t value = evaluate(inst.board, inst.family, config, assignment);
      const json params = effective_params("eval", board, inst, common);
      if (as_json) {
        out << json{{"params", params}, {"value", value}, {"area", inst.board.area()}}.dump() << '\n';
      } else {
        print_header(out, params);
        out << "value " << value << '\n';
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      const Configuration config = load_config(common, inst.board);
      const SolverOptions options{common.cap, common.jobs};
      SolveResult result;
      if (method == "auto") {
        result = solve_exact(inst.board, inst.family, config, options);
      } else if (method == "exact") {
        result = exact_max(inst.board, inst.family, config, options);
      } else if (method == "split") {
        const CoverageReport report = coverage_check(inst.board, inst.family);
        if (!report.disjoint_groups) throw ValidationError("switch family has no disjoint two-group split");
        const auto& [first, second] = *report.disjoint_groups;
        const bool first_smaller = first.size() <= second.size();
        result = exact_max_split(inst.board, inst.family, config, first_smaller ? first : second,
                                 first_smaller ? second : first, options);
      } else if (method == "greedy") {
        std::optional<SwitchKind> kind;
        if (inst.switch_spec) kind = inst.switch_spec->kind;
        const auto [scramble, greedy] = scramble_groups(inst.board, inst.family, kind);
        result = scramble_greedy(inst.board, inst.family, config, scramble, greedy, CounterRng(common.seed).derive(2).key());
      } else if (method == "local") {
        result = local_search(inst.board, inst.family, config, Assignment::identity(inst.family.size()));
      } else if (method == "x-cycle") {
        result = x_cycle_solve(inst.board, config);
      } else {
        if (!inst.board_spec || inst.board_spec->kind != BoardKind::hyperbola) {
          throw ValidationError("--method hyperbola needs --board hyperbola");
        }
        result = hyperbola_solve(inst.board_spec->n, config);
      }
      const json params = effective_params("solve", board, inst, common, {{"method", method}});
      if (as_json) {
        json body = solve_result_to_json(result, inst.family);
        body["params"] = params;
        out << body.dump() << '\n';
      } else {
        print_header(out, params);
        out << "value " << result.value << '\n';
        out << "nodes " << result.nodes_explored << '\n';
        print_flipped(out, result.assignment, inst.family);
        if (inst.board.dim() == 2) {
          out << configuration_to_grid(apply_assignment(inst.family, config, result.assignment), inst.board);
        }
      }
      return kExitOk;
    }

    if (mm->parsed()) {
      MinimaxOptions options;
      options.canonicalize = !no_canonical;
      options.config_cap = config_cap;
      options.solver = {common.cap, common.jobs};
      const MinimaxResult result = minimax(inst.board, inst.family, options);
      const json params = effective_params("minimax", board, inst, common,
                                           {{"canonical", !no_canonical}, {"config_cap", config_cap}});
      if (as_json) {
        json body = minimax_to_json(result, inst.board);
        body["params"] = params;
        out << body.dump() << '\n';
      } else {
        print_header(out, params);
        out << "value " << result.value << '\n';
        out << "configs_scanned " << result.configs_scanned << (result.canonical ? " (canonical)" : "") << '\n';
        if (inst.board.dim() == 2) out << configuration_to_grid(result.witness_config, inst.board);
      }
      return kExitOk;
    }

    if (estimate->parsed()) {
      if (!inst.board_spec || !inst.switch_spec) throw ValidationError("estimate needs generator flags, not --board-file");
      TrialStrategy strat = make_strategy(strategy, *inst.board_spec, *inst.switch_spec);
      if (!common.config_file.empty()) strat.fixed_config = parse_configuration(read_file(common.config_file), strat.board);
      const TrialStats stats = run_trials(strat, trials, common.seed, common.jobs);
      const json params =
          effective_params("estimate", board, inst, common, {{"strategy", strategy}, {"trials", trials}});
      if (as_json) {
        json body = stats_to_json(stats);
        body["params"] = params;
        out << body.dump() << '\n';
      } else {
        print_header(out, params);
        out << std::setprecision(10) << "mean " << stats.mean << "\nstd " << stats.sample_std << "\nstderr "
            << stats.std_err << "\nci95 [" << stats.ci95.first << ", " << stats.ci95.second << "]\n";
      }
      return kExitOk;
    }
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << " (required " << e.required() << ", cap " << e.cap() << ")\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace gbk
