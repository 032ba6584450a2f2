#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aoii/rl_mpc.hpp"
#include "aoii/scenarios.hpp"

namespace aoii {

struct PolicyChoice {
  std::string name;
  int lookahead = 1;
  std::string checkpoint;  // rl-mpc only; empty means train before the sweep
};

// One experiment grid: a scenario, a sweep axis (rho_s values for the fire
// scenario, grid sizes at fixed rho_s for the grid scenario), and the
// policies to compare. All policies at one sweep point share the base seed,
// so ground truth and erasures are common random numbers.
struct SweepSpec {
  std::string scenario;  // "fire" | "grid"
  std::vector<double> rho_values;
  std::vector<std::pair<int, int>> grids;
  BoundaryRule boundary = BoundaryRule::kRenormalizeRow;
  std::vector<PolicyChoice> policies;
  int episodes = 10;
  int slots = 100000;
  int age_cap = 15;
  std::uint64_t seed = 1;
  std::string out_path;  // empty = stdout
  RlMpcConfig training;  // defaults for rl-mpc entries without a checkpoint
};

// Key-value sweep document (grammar in the README).
SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec(const std::string& path);

struct CsvRow {
  std::string scenario;
  std::string param;
  std::string policy;
  int lookahead = 0;
  int episodes = 0;
  long long slots = 0;
  std::uint64_t seed = 0;
  double maoii = 0.0;
  double stderr_maoii = 0.0;
  double erasure_rate = 0.0;
  double wall_ms = 0.0;
};

std::string csv_header();
void write_csv_row(std::ostream& out, const CsvRow& row);

// Runs every (sweep point, policy) combination and writes one CSV row per
// combination, in spec order.
void run_sweep(const SweepSpec& spec, std::ostream& out);
void run_sweep(const SweepSpec& spec);  // honors spec.out_path

}  // namespace aoii
