#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pcfr/experiment.hpp"
#include "pcfr/games.hpp"

namespace {

struct SolverFlags {
  std::string averaging = "uniform";
  std::string schedule = "alternating";
  std::string chance = "enumerate";
  std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--averaging", flags.averaging, "Average-strategy weighting")
      ->check(CLI::IsMember({"uniform", "linear"}));
  cmd->add_option("--schedule", flags.schedule, "Player update order")
      ->check(CLI::IsMember({"alternating", "simultaneous"}));
  cmd->add_option("--chance", flags.chance, "Chance handling")
      ->check(CLI::IsMember({"enumerate", "sample"}));
  cmd->add_option("--seed", flags.seed, "Seed for --chance sample");
}

pcfr::CfrOptions to_options(const SolverFlags& flags) {
  pcfr::CfrOptions o;
  o.averaging = flags.averaging == "linear" ? pcfr::Averaging::kLinear : pcfr::Averaging::kUniform;
  o.schedule = flags.schedule == "simultaneous" ? pcfr::UpdateSchedule::kSimultaneous
                                                : pcfr::UpdateSchedule::kAlternating;
  o.chance = flags.chance == "sample" ? pcfr::ChanceMode::kSample : pcfr::ChanceMode::kEnumerate;
  o.seed = flags.seed;
  return o;
}

std::vector<double> parse_xi_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    if (!item.empty()) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw std::invalid_argument("bad xi value '" + item + "'");
      }
      values.push_back(v);
    }
    pos = end + 1;
  }
  return values;
}

void print_records(const std::vector<pcfr::ConvergenceRecord>& records) {
  std::printf("%-8s %-11s %-14s %-14s %-14s %-12s\n", "t", "traversals", "exploitability",
              "perturbed", "infoset_regret", "bound");
  for (const auto& r : records) {
    std::printf("%-8lld %-11lld %-14.6g %-14.6g %-14.6g %-12.6g\n", static_cast<long long>(r.t),
                static_cast<long long>(r.traversals), r.exploitability, r.perturbed_regret,
                r.max_infoset_regret, r.bound);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbed CFR+ solver and experiment runner"};
  app.require_subcommand(1);

  pcfr::ExperimentConfig solve_config;
  SolverFlags solve_flags;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "Run one configuration and write a convergence CSV");
  solve->add_option("--game", solve_config.game, "kuhn, leduc3, leduc5, leduc:k=<K>, matrix:<path>")
      ->required();
  solve->add_option("--xi", solve_config.xi, "Uniform perturbation p(I, a) = xi")->default_val(0.0);
  solve->add_option("--iterations", solve_config.iterations, "Iterations T")->required();
  solve->add_option("--checkpoints", solve_config.checkpoints, "Explicit checkpoint iterations")
      ->delimiter(',');
  solve->add_option("--out", solve_out, "CSV output path")->required();
  add_solver_flags(solve, solve_flags);

  pcfr::ExperimentConfig sweep_config;
  SolverFlags sweep_flags;
  std::string xi_list;
  std::string out_dir = ".";
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run one configuration per xi and compare");
  sweep->add_option("--game", sweep_config.game, "Game selector")->required();
  sweep->add_option("--xi-list", xi_list, "Comma-separated xi values")->required();
  sweep->add_option("--iterations", sweep_config.iterations, "Iterations T")->default_val(1 << 14);
  sweep->add_option("--out", out_dir, "Directory for the per-xi CSVs")->default_val(".");
  sweep->add_option("--jobs", jobs, "Concurrent runs")->default_val(1);
  add_solver_flags(sweep, sweep_flags);

  std::string dump_game;
  auto* dump = app.add_subcommand("dump", "Print the game tree");
  dump->add_option("--game", dump_game, "Game selector")->required();

  std::string info_game;
  auto* info = app.add_subcommand("info", "Print game size and payoff range");
  info->add_option("--game", info_game, "Game selector")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      solve_config.solver = to_options(solve_flags);
      solve_config.out = solve_out;
      const auto records = pcfr::run_experiment(solve_config);
      print_records(records);
      std::printf("wrote %s\n", solve_out.c_str());
    } else if (*sweep) {
      sweep_config.solver = to_options(sweep_flags);
      if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
      const auto result = pcfr::sweep(sweep_config, parse_xi_list(xi_list), out_dir, jobs);
      for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      pcfr::print_sweep_table(std::cout, result);
      if (!result.ok()) return 1;
    } else if (*dump) {
      pcfr::dump(pcfr::make_game(dump_game), std::cout);
    } else if (*info) {
      const auto game = pcfr::make_game(info_game);
      const auto range = pcfr::utility_range(game);
      std::printf("game        %s\n", game.name().c_str());
      std::printf("nodes       %zu\n", game.num_nodes());
      std::printf("terminals   %zu\n", game.terminals().size());
      for (int p = 0; p < pcfr::kNumPlayers; ++p) {
        std::printf("infosets p%d %zu (max actions %zu)\n", p + 1, game.infosets_of(p).size(),
                    game.max_actions(p));
      }
      std::printf("utility     [%g, %g] gamma %g\n", range.min, range.max, range.gamma);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
