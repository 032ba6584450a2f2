#include "aoii/policies.hpp"

#include <limits>
#include <stdexcept>

#include "aoii/value_net.hpp"

namespace aoii {

int random_action(int num_sensors, Rng& rng) {
  if (num_sensors < 1) throw std::invalid_argument("need at least one sensor");
  return std::uniform_int_distribution<int>(0, num_sensors - 1)(rng);
}

int round_robin_action(const PolicyState& state, int num_sensors) {
  if (num_sensors < 1) throw std::invalid_argument("need at least one sensor");
  return (state.last_action + 1) % num_sensors;
}

int erasure_aware_rr_action(const PolicyState& state, int num_sensors) {
  if (num_sensors < 1) throw std::invalid_argument("need at least one sensor");
  return (state.last_success_action + 1) % num_sensors;
}

LookaheadResult lookahead_cost(const Belief& belief, int step, const LookaheadConfig& config,
                               const JointSourceModel& model, const ChannelModel& channel) {
  if (config.horizon < 1) throw std::invalid_argument("look-ahead horizon must be >= 1");
  if (step < 0 || step >= config.horizon) {
    throw std::invalid_argument("look-ahead step outside [0, horizon)");
  }

  double best_value = std::numeric_limits<double>::infinity();
  int best_action = 0;
  for (int action = 0; action < model.num_sensors(); ++action) {
    double value = 0.0;
    for (const auto& entry : successors(belief, action, model, channel).entries) {
      double tail;
      if (step + 1 == config.horizon) {
        tail = config.terminal_cost ? config.terminal_cost(entry.belief) : 0.0;
      } else {
        tail = lookahead_cost(entry.belief, step + 1, config, model, channel).value;
      }
      value += entry.probability * (expected_cost(entry.belief) + tail);
    }
    if (value < best_value) {
      best_value = value;
      best_action = action;
    }
  }
  return LookaheadResult{best_value, best_action};
}

int mpc_action(const Belief& belief, const LookaheadConfig& config,
               const JointSourceModel& model, const ChannelModel& channel) {
  return lookahead_cost(belief, 0, config, model, channel).best_action;
}

PolicyFn make_policy(const PolicySpec& spec) {
  if (spec.name == "random") {
    return [](const Belief&, const PolicyState&, const JointSourceModel& model,
              const ChannelModel&, Rng& rng) { return random_action(model.num_sensors(), rng); };
  }
  if (spec.name == "rr") {
    return [](const Belief&, const PolicyState& state, const JointSourceModel& model,
              const ChannelModel&, Rng&) {
      return round_robin_action(state, model.num_sensors());
    };
  }
  if (spec.name == "ea-rr") {
    return [](const Belief&, const PolicyState& state, const JointSourceModel& model,
              const ChannelModel&, Rng&) {
      return erasure_aware_rr_action(state, model.num_sensors());
    };
  }
  if (spec.name == "mpc-wtc") {
    const int horizon = spec.lookahead;
    return [horizon](const Belief& belief, const PolicyState&, const JointSourceModel& model,
                     const ChannelModel& channel, Rng&) {
      return mpc_action(belief, LookaheadConfig{horizon, {}}, model, channel);
    };
  }
  if (spec.name == "rl-mpc") {
    if (!spec.net) throw std::invalid_argument("rl-mpc policy needs a trained net");
    const int horizon = spec.lookahead;
    auto net = spec.net;
    return [horizon, net](const Belief& belief, const PolicyState&,
                          const JointSourceModel& model, const ChannelModel& channel, Rng&) {
      LookaheadConfig config{horizon,
                             [&net](const Belief& b) { return forward(*net, b.flatten()); }};
      return mpc_action(belief, config, model, channel);
    };
  }
  throw std::invalid_argument("unknown policy '" + spec.name +
                              "' (expected random|rr|ea-rr|mpc-wtc|rl-mpc)");
}

}  // namespace aoii
