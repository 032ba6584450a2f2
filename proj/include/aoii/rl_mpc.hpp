#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoii/belief.hpp"
#include "aoii/policies.hpp"
#include "aoii/sim.hpp"
#include "aoii/value_net.hpp"

namespace aoii {

struct RlMpcConfig {
  int horizon = 1;
  int iterations = 4;
  int samples_per_iteration = 10000;
  double learning_rate = 1e-3;
  int epochs = 30;
  int hidden_width = 64;
  std::uint64_t seed = 1;
};

// Training beliefs: one per slot of a simulated episode run under the given
// policy from the known initial state, recorded after each slot's
// propagation.
std::vector<Belief> collect_beliefs(const JointSourceModel& model, const ChannelModel& channel,
                                    const PolicyFn& policy, int count, std::uint64_t seed,
                                    int initial_state, int age_cap);

// One fitted-value sweep: targets are look-ahead values with the previous
// net as terminal cost (for iteration 1 the previous net must be a fresh,
// zero-output net), fitted by a newly initialized net. Target evaluation
// fans out across threads; the fit itself is sequential and deterministic.
ValueNet rl_iteration(int iteration, const ValueNet& prev_net,
                      const std::vector<Belief>& beliefs, const RlMpcConfig& cfg,
                      const JointSourceModel& model, const ChannelModel& channel,
                      double* mean_loss = nullptr);

struct IterationStats {
  int iteration;
  double mean_loss;
  double wall_ms;
};

// Optional sinks: a checkpoint is written per iteration as
// "<prefix>.d<iteration>" and the stats go to log_path as CSV.
struct TrainingOutputs {
  std::string checkpoint_prefix;
  std::string log_path;
};

struct RlMpcResult {
  ValueNet net;
  std::vector<IterationStats> stats;
};

// Full trainer: iteration d collects beliefs under the policy induced by the
// previous net, then fits the next net to d's horizon-extended targets.
RlMpcResult train_rl_mpc(const RlMpcConfig& cfg, const JointSourceModel& model,
                         const ChannelModel& channel, int initial_state, int age_cap,
                         const TrainingOutputs& outputs = {});

// Receding-horizon action with the trained net as terminal cost.
int rl_mpc_action(const Belief& belief, const ValueNet& net, int horizon,
                  const JointSourceModel& model, const ChannelModel& channel);

}  // namespace aoii
