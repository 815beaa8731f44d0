#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcfr/cfr.hpp"
#include "pcfr/game.hpp"

namespace pcfr {

struct ExperimentConfig {
  std::string game = "kuhn";
  double xi = 0.0;
  std::int64_t iterations = 1 << 14;
  // Iterations at which records are taken; empty means powers of two plus
  // the final iteration.
  std::vector<std::int64_t> checkpoints;
  CfrOptions solver;
  std::filesystem::path out;  // empty: no CSV
};

struct ConvergenceRecord {
  std::int64_t t = 0;
  std::int64_t traversals = 0;
  double exploitability = 0.0;      // full game, average profile
  double perturbed_regret = 0.0;    // eps1 + eps2 in the perturbed game
  double max_infoset_regret = 0.0;  // average profile
  double bound = 0.0;               // cfr_bound summed over both players
  double seconds = 0.0;
};

using CheckpointCallback = std::function<void(const CfrSolver&, const ConvergenceRecord&)>;

// Throws std::invalid_argument for an infeasible xi or bad iteration count.
void check_config(const ExtensiveFormGame& game, const ExperimentConfig& config);

// Runs the solver and evaluates the average profile at each checkpoint.
// Writes the CSV when `config.out` is set; an unwritable path throws
// std::runtime_error before any iteration runs.
std::vector<ConvergenceRecord> run_experiment(const ExtensiveFormGame& game,
                                              const ExperimentConfig& config,
                                              const CheckpointCallback& on_checkpoint = {});
std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config,
                                              const CheckpointCallback& on_checkpoint = {});

inline constexpr const char* kCsvHeader =
    "t,traversals,exploitability,perturbed_regret,max_infoset_regret,bound,seconds";

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<ConvergenceRecord>& records);
// Throws std::runtime_error on a header mismatch or malformed row.
std::vector<ConvergenceRecord> read_csv(std::istream& in);
std::vector<ConvergenceRecord> read_csv(const std::filesystem::path& path);

// "%.12g", the number format of every CSV field.
std::string format_number(double value);

struct SweepEntry {
  double xi = 0.0;
  std::filesystem::path csv;
  std::vector<ConvergenceRecord> records;
  std::string error;  // empty on success
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // ascending xi
  std::vector<std::string> warnings;
  bool ok() const;
};

// Runs one experiment per distinct xi, `jobs` at a time. Each run writes
// `<out_dir>/<game>_xi<xi>.csv` when `out_dir` is nonempty. A failing run is
// reported in its entry; the others still complete.
SweepResult sweep(const ExperimentConfig& base, std::vector<double> xi_list,
                  const std::filesystem::path& out_dir, unsigned jobs = 1);

// Per xi: final exploitability and final max_infoset_regret.
void print_sweep_table(std::ostream& out, const SweepResult& result);

// File-name friendly form of a game selector.
std::string selector_slug(const std::string& selector);

}  // namespace pcfr
