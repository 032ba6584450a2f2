// Command-line front end: closed-loop simulation, RL-MPC training, and
// config-driven experiment sweeps producing CSV data.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "aoii/rl_mpc.hpp"
#include "aoii/scenarios.hpp"
#include "aoii/sim.hpp"
#include "aoii/sweep.hpp"

namespace {

struct ScenarioOptions {
  std::string scenario = "fire";
  int lx = 3;
  int ly = 3;
  std::string boundary = "renormalize";
  double rho_s = 0.8;
  int age_cap = 15;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& opts) {
  cmd->add_option("--scenario", opts.scenario, "Scenario: fire|grid")
      ->check(CLI::IsMember({"fire", "grid"}))
      ->required();
  cmd->add_option("--lx", opts.lx, "Grid width (grid scenario)");
  cmd->add_option("--ly", opts.ly, "Grid height (grid scenario)");
  cmd->add_option("--boundary", opts.boundary, "Grid boundary rule: renormalize|stay")
      ->check(CLI::IsMember({"renormalize", "stay"}));
  cmd->add_option("--rho-s", opts.rho_s, "Channel success probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--dmax", opts.age_cap, "Age truncation bound")->check(CLI::PositiveNumber);
}

aoii::JointSourceModel build_model(const ScenarioOptions& opts) {
  if (opts.scenario == "fire") return aoii::build_scenario_fire();
  const auto rule = opts.boundary == "stay" ? aoii::BoundaryRule::kStayAbsorbs
                                            : aoii::BoundaryRule::kRenormalizeRow;
  return aoii::build_scenario_grid(opts.lx, opts.ly, rule);
}

std::string scenario_param(const ScenarioOptions& opts) {
  if (opts.scenario == "fire") {
    std::ostringstream ss;
    ss << opts.rho_s;
    return ss.str();
  }
  return std::to_string(opts.lx) + "x" + std::to_string(opts.ly);
}

int run_simulate(const ScenarioOptions& scenario, const std::string& policy_name, int lookahead,
                 const std::string& checkpoint, int slots, int episodes, std::uint64_t seed,
                 const std::string& out_path, const std::string& episode_csv,
                 const std::string& trace_path) {
  const aoii::JointSourceModel model = build_model(scenario);
  const aoii::ChannelModel channel(scenario.rho_s);

  aoii::PolicySpec spec{policy_name, lookahead, nullptr};
  if (policy_name == "rl-mpc") {
    if (checkpoint.empty()) {
      std::cerr << "rl-mpc needs --checkpoint (train one with `aoii-lab train-rl`)\n";
      return 1;
    }
    spec.net = std::make_shared<aoii::ValueNet>(aoii::load_net(checkpoint));
  }

  aoii::EpisodeConfig cfg;
  cfg.model = &model;
  cfg.channel = channel;
  cfg.policy = aoii::make_policy(spec);
  cfg.age_cap = scenario.age_cap;
  cfg.seed = seed;
  cfg.initial_state = 0;

  if (!trace_path.empty()) {
    std::ofstream trace(trace_path);
    if (!trace) throw std::runtime_error("cannot write trace '" + trace_path + "'");
    trace << "slot,aoii,map_state,true_state,action,delivered\n";
    aoii::EpisodeConfig first = cfg;
    first.slots = slots;
    aoii::run_episode(first, [&trace](const aoii::SlotRecord& r) {
      trace << r.slot << ',' << r.aoii << ',' << r.map_state << ',' << r.true_state << ','
            << r.action << ',' << (r.delivered ? 1 : 0) << '\n';
    });
  }

  const auto start = std::chrono::steady_clock::now();
  const aoii::BatchResult batch = aoii::run_batch(cfg, episodes, slots);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();

  aoii::CsvRow row;
  row.scenario = scenario.scenario;
  row.param = scenario_param(scenario);
  row.policy = policy_name;
  row.lookahead = (policy_name == "mpc-wtc" || policy_name == "rl-mpc") ? lookahead : 0;
  row.episodes = episodes;
  row.slots = slots;
  row.seed = seed;
  row.maoii = batch.maoii;
  row.stderr_maoii = batch.stderr_maoii;
  row.erasure_rate = batch.erasure_rate;
  row.wall_ms = wall_ms;

  std::cout << "scenario " << row.scenario << " (" << row.param << "), policy " << row.policy;
  if (row.lookahead > 0) std::cout << " (lookahead " << row.lookahead << ")";
  std::cout << ": maoii " << batch.maoii << " +- " << batch.stderr_maoii << " over "
            << batch.slots << " slots, erasure rate " << batch.erasure_rate << "\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << aoii::csv_header() << '\n';
    aoii::write_csv_row(out, row);
  }
  if (!episode_csv.empty()) {
    std::ofstream out(episode_csv);
    if (!out) throw std::runtime_error("cannot write '" + episode_csv + "'");
    out << "episode,seed,slots,maoii,erasure_rate\n";
    for (std::size_t e = 0; e < batch.episodes.size(); ++e) {
      const auto& ep = batch.episodes[e];
      std::ostringstream ss;
      ss.precision(12);
      ss << e << ',' << (seed + e) << ',' << ep.slots << ',' << ep.maoii << ','
         << (static_cast<double>(ep.erasure_count) / ep.slots);
      out << ss.str() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor-scheduling laboratory for timely tracking of a joint Markov source"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run one policy and report MAoII");
  ScenarioOptions sim_scenario;
  add_scenario_options(simulate, sim_scenario);
  std::string policy_name;
  int lookahead = 1;
  std::string checkpoint;
  int slots = 100000;
  int episodes = 10;
  std::uint64_t seed = 1;
  std::string out_path, episode_csv, trace_path;
  simulate->add_option("--policy", policy_name, "random|rr|ea-rr|mpc-wtc|rl-mpc")->required();
  simulate->add_option("--lookahead", lookahead, "Look-ahead horizon (MPC policies)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--checkpoint", checkpoint, "Net checkpoint (rl-mpc)");
  simulate->add_option("--slots", slots, "Slots per episode")->check(CLI::PositiveNumber);
  simulate->add_option("--episodes", episodes, "Restarted episodes")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Base seed");
  simulate->add_option("--out", out_path, "Write an aggregate CSV row here");
  simulate->add_option("--episode-csv", episode_csv, "Write per-episode CSV rows here");
  simulate->add_option("--trace", trace_path,
                       "Dump a per-slot trace of the first episode (large output)");

  // train-rl
  auto* train = app.add_subcommand("train-rl", "Train an RL-MPC terminal-cost net");
  ScenarioOptions train_scenario;
  add_scenario_options(train, train_scenario);
  aoii::RlMpcConfig train_cfg;
  std::string train_checkpoint, train_log;
  train->add_option("--lookahead", train_cfg.horizon, "Look-ahead horizon")
      ->check(CLI::PositiveNumber);
  train->add_option("--iterations", train_cfg.iterations, "Training iterations")
      ->check(CLI::PositiveNumber);
  train->add_option("--samples", train_cfg.samples_per_iteration, "Beliefs per iteration")
      ->check(CLI::PositiveNumber);
  train->add_option("--lr", train_cfg.learning_rate, "Learning rate");
  train->add_option("--epochs", train_cfg.epochs, "Gradient-descent epochs per iteration")
      ->check(CLI::PositiveNumber);
  train->add_option("--hidden", train_cfg.hidden_width, "Hidden layer width")
      ->check(CLI::PositiveNumber);
  train->add_option("--seed", train_cfg.seed, "Training seed");
  train->add_option("--checkpoint", train_checkpoint, "Where to save the final net")->required();
  train->add_option("--log", train_log, "Training-log CSV (default <checkpoint>.log.csv)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a sweep spec and emit CSV");
  std::string spec_path;
  sweep->add_option("--spec", spec_path, "Sweep spec file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_scenario, policy_name, lookahead, checkpoint, slots, episodes,
                          seed, out_path, episode_csv, trace_path);
    }
    if (train->parsed()) {
      const aoii::JointSourceModel model = build_model(train_scenario);
      const aoii::ChannelModel channel(train_scenario.rho_s);
      aoii::TrainingOutputs outputs;
      outputs.checkpoint_prefix = train_checkpoint;
      outputs.log_path = train_log.empty() ? train_checkpoint + ".log.csv" : train_log;
      const aoii::RlMpcResult result =
          aoii::train_rl_mpc(train_cfg, model, channel, 0, train_scenario.age_cap, outputs);
      aoii::save_net(result.net, train_checkpoint);
      for (const auto& s : result.stats) {
        std::cout << "iteration " << s.iteration << ": mean loss " << s.mean_loss << " ("
                  << s.wall_ms << " ms)\n";
      }
      std::cout << "saved " << train_checkpoint << "\n";
      return 0;
    }
    if (sweep->parsed()) {
      aoii::run_sweep(aoii::load_sweep_spec(spec_path));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
