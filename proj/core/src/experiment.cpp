#include "pcfr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "pcfr/games.hpp"
#include "pcfr/metrics.hpp"

namespace pcfr {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

double parse_double(const std::string& field, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size() || field.empty()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void check_config(const ExtensiveFormGame& game, const ExperimentConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  for (std::int64_t t : config.checkpoints) {
    if (t < 1 || t > config.iterations) {
      throw std::invalid_argument("checkpoint " + std::to_string(t) + " outside [1, iterations]");
    }
  }
  Perturbation::uniform(game, config.xi);
}

std::vector<ConvergenceRecord> run_experiment(const ExtensiveFormGame& game,
                                              const ExperimentConfig& config,
                                              const CheckpointCallback& on_checkpoint) {
  check_config(game, config);
  std::ofstream csv;
  if (!config.out.empty()) csv = open_for_writing(config.out);

  std::vector<std::int64_t> checkpoints = config.checkpoints.empty()
                                              ? power_of_two_checkpoints(config.iterations)
                                              : config.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  const Perturbation perturbation = Perturbation::uniform(game, config.xi);
  CfrSolver solver(game, perturbation, config.solver);
  std::vector<ConvergenceRecord> records;
  const auto start = std::chrono::steady_clock::now();

  for (std::int64_t checkpoint : checkpoints) {
    solver.run(checkpoint - solver.iteration());
    const BehavioralStrategy average = solver.average_strategy();
    ConvergenceRecord r;
    r.t = solver.iteration();
    r.traversals = solver.traversals();
    r.exploitability = exploitability(game, average);
    r.perturbed_regret = perturbed_game_regret(game, average, perturbation).sum();
    r.max_infoset_regret = max_infoset_regret(game, average).value;
    r.bound = cfr_bound(game, 0, r.t) + cfr_bound(game, 1, r.t);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records.push_back(r);
    if (on_checkpoint) on_checkpoint(solver, r);
  }

  if (csv.is_open()) {
    write_csv(csv, records);
    if (!csv.flush()) throw std::runtime_error("failed writing '" + config.out.string() + "'");
  }
  return records;
}

std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config,
                                              const CheckpointCallback& on_checkpoint) {
  const ExtensiveFormGame game = make_game(config.game);
  return run_experiment(game, config, on_checkpoint);
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << kCsvHeader << '\n';
  for (const ConvergenceRecord& r : records) {
    out << r.t << ',' << r.traversals << ',' << format_number(r.exploitability) << ','
        << format_number(r.perturbed_regret) << ',' << format_number(r.max_infoset_regret) << ','
        << format_number(r.bound) << ',' << format_number(r.seconds) << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<ConvergenceRecord>& records) {
  std::ofstream out = open_for_writing(path);
  write_csv(out, records);
  if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<ConvergenceRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv header mismatch");
  }
  std::vector<ConvergenceRecord> records;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("csv line " + std::to_string(number) + ": expected 7 fields");
    }
    ConvergenceRecord r;
    r.t = static_cast<std::int64_t>(parse_double(fields[0], number));
    r.traversals = static_cast<std::int64_t>(parse_double(fields[1], number));
    r.exploitability = parse_double(fields[2], number);
    r.perturbed_regret = parse_double(fields[3], number);
    r.max_infoset_regret = parse_double(fields[4], number);
    r.bound = parse_double(fields[5], number);
    r.seconds = parse_double(fields[6], number);
    records.push_back(r);
  }
  return records;
}

std::vector<ConvergenceRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  return read_csv(in);
}

std::string selector_slug(const std::string& selector) {
  std::string slug;
  for (char c : selector) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    slug.push_back(keep ? c : '_');
  }
  return slug;
}

bool SweepResult::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const SweepEntry& e) { return e.error.empty(); });
}

SweepResult sweep(const ExperimentConfig& base, std::vector<double> xi_list,
                  const std::filesystem::path& out_dir, unsigned jobs) {
  SweepResult result;
  std::sort(xi_list.begin(), xi_list.end());
  const auto last = std::unique(xi_list.begin(), xi_list.end());
  if (last != xi_list.end()) {
    result.warnings.push_back("dropped " + std::to_string(xi_list.end() - last) +
                              " duplicate xi value(s)");
    xi_list.erase(last, xi_list.end());
  }
  if (xi_list.empty()) return result;

  const ExtensiveFormGame game = make_game(base.game);
  for (double xi : xi_list) {
    SweepEntry entry;
    entry.xi = xi;
    if (!out_dir.empty()) {
      entry.csv = out_dir / (selector_slug(base.game) + "_xi" + format_number(xi) + ".csv");
    }
    result.entries.push_back(std::move(entry));
  }

  auto run_one = [&](SweepEntry& entry) {
    ExperimentConfig config = base;
    config.xi = entry.xi;
    config.out = entry.csv;
    try {
      entry.records = run_experiment(game, config);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
  };

  jobs = std::max(1u, jobs);
  for (std::size_t begin = 0; begin < result.entries.size(); begin += jobs) {
    const std::size_t end = std::min(result.entries.size(), begin + jobs);
    std::vector<std::future<void>> running;
    for (std::size_t i = begin + 1; i < end; ++i) {
      running.push_back(std::async(std::launch::async, run_one, std::ref(result.entries[i])));
    }
    run_one(result.entries[begin]);
    for (auto& f : running) f.get();
  }
  return result;
}

void print_sweep_table(std::ostream& out, const SweepResult& result) {
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %-18s %-18s %s\n", "xi", "t", "exploitability",
                "max_infoset_regret", "status");
  out << line;
  for (const SweepEntry& e : result.entries) {
    if (!e.error.empty() || e.records.empty()) {
      std::snprintf(line, sizeof line, "%-10s %-10s %-18s %-18s %s\n", format_number(e.xi).c_str(),
                    "-", "-", "-", e.error.empty() ? "no records" : e.error.c_str());
    } else {
      const ConvergenceRecord& r = e.records.back();
      std::snprintf(line, sizeof line, "%-10s %-10lld %-18s %-18s %s\n", format_number(e.xi).c_str(),
                    static_cast<long long>(r.t), format_number(r.exploitability).c_str(),
                    format_number(r.max_infoset_regret).c_str(), "ok");
    }
    out << line;
  }
}

}  // namespace pcfr
