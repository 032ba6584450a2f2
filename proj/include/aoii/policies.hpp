#pragma once

#include <functional>
#include <memory>
#include <string>

#include "aoii/belief.hpp"
#include "aoii/rng.hpp"
#include "aoii/source_model.hpp"

namespace aoii {

struct ValueNet;

// State the benchmark schedulers carry between slots. Actions are 0-based;
// the harness seeds both fields with the last sensor index so the first
// round-robin pick is sensor 0.
struct PolicyState {
  int last_action = 0;
  int last_success_action = 0;
};

int random_action(int num_sensors, Rng& rng);
int round_robin_action(const PolicyState& state, int num_sensors);

// Round-robin advanced from the action of the last successful delivery; the
// harness refreshes last_success_action whenever a packet gets through.
int erasure_aware_rr_action(const PolicyState& state, int num_sensors);

// Receding-horizon search setup. An empty terminal_cost means zero terminal
// costs everywhere (the no-terminal-cost controller).
struct LookaheadConfig {
  int horizon = 1;
  std::function<double(const Belief&)> terminal_cost;
};

struct LookaheadResult {
  double value;
  int best_action;
};

// Expected cost of the best decision rule over the remaining horizon - step
// steps: minimizes over the action, sums over its successor beliefs, charges
// each successor's expected age plus the recursive value (terminal cost at
// the leaves). Ties break toward the lowest action index.
LookaheadResult lookahead_cost(const Belief& belief, int step, const LookaheadConfig& config,
                               const JointSourceModel& model, const ChannelModel& channel);

// First action of the minimizing look-ahead tree.
int mpc_action(const Belief& belief, const LookaheadConfig& config,
               const JointSourceModel& model, const ChannelModel& channel);

// Decision rule as the simulator sees it: belief plus scheduler state in,
// sensor index out.
using PolicyFn = std::function<int(const Belief&, const PolicyState&, const JointSourceModel&,
                                   const ChannelModel&, Rng&)>;

// Policy selection by name: "random" | "rr" | "ea-rr" | "mpc-wtc" | "rl-mpc".
// rl-mpc requires a trained net.
struct PolicySpec {
  std::string name;
  int lookahead = 1;
  std::shared_ptr<const ValueNet> net;
};

PolicyFn make_policy(const PolicySpec& spec);

}  // namespace aoii
