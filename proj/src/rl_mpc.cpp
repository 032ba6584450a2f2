#include "aoii/rl_mpc.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <stdexcept>
#include <thread>

namespace aoii {

std::vector<Belief> collect_beliefs(const JointSourceModel& model, const ChannelModel& channel,
                                    const PolicyFn& policy, int count, std::uint64_t seed,
                                    int initial_state, int age_cap) {
  if (count < 1) throw std::invalid_argument("need at least one training belief");

  std::vector<Belief> beliefs;
  beliefs.reserve(count);

  EpisodeConfig cfg;
  cfg.model = &model;
  cfg.channel = channel;
  cfg.policy = policy;
  cfg.slots = count;
  cfg.age_cap = age_cap;
  cfg.seed = seed;
  cfg.initial_state = initial_state;
  run_episode(cfg, [&beliefs](const SlotRecord& record) { beliefs.push_back(record.belief); });
  return beliefs;
}

namespace {

std::vector<double> lookahead_targets(const std::vector<Belief>& beliefs,
                                      const LookaheadConfig& config,
                                      const JointSourceModel& model,
                                      const ChannelModel& channel) {
  const int n = static_cast<int>(beliefs.size());
  std::vector<double> targets(n);
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));

  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      targets[i] = lookahead_cost(beliefs[i], 0, config, model, channel).value;
    }
  };
  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::future<void>> futures;
    const int chunk = (n + workers - 1) / workers;
    for (int begin = 0; begin < n; begin += chunk) {
      futures.push_back(
          std::async(std::launch::async, run_range, begin, std::min(begin + chunk, n)));
    }
    for (auto& f : futures) f.get();
  }
  return targets;
}

}  // namespace

ValueNet rl_iteration(int iteration, const ValueNet& prev_net,
                      const std::vector<Belief>& beliefs, const RlMpcConfig& cfg,
                      const JointSourceModel& model, const ChannelModel& channel,
                      double* mean_loss) {
  if (beliefs.empty()) throw std::invalid_argument("rl_iteration needs training beliefs");

  LookaheadConfig lookahead{cfg.horizon,
                            [&prev_net](const Belief& b) { return forward(prev_net, b.flatten()); }};
  const std::vector<double> targets = lookahead_targets(beliefs, lookahead, model, channel);

  std::vector<TrainingSample> samples;
  samples.reserve(beliefs.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    samples.push_back({beliefs[i].flatten(), targets[i]});
  }

  ValueNet net = init_net(prev_net.input_dim(), cfg.hidden_width,
                          splitmix64(cfg.seed + static_cast<std::uint64_t>(iteration)));
  net.iteration = iteration;
  const double loss = train_batch(net, samples, cfg.learning_rate, cfg.epochs);
  if (mean_loss) *mean_loss = loss;
  return net;
}

RlMpcResult train_rl_mpc(const RlMpcConfig& cfg, const JointSourceModel& model,
                         const ChannelModel& channel, int initial_state, int age_cap,
                         const TrainingOutputs& outputs) {
  if (cfg.iterations < 1) throw std::invalid_argument("need at least one training iteration");
  if (cfg.samples_per_iteration < 1) {
    throw std::invalid_argument("need at least one sample per iteration");
  }

  const int input_dim = model.num_states() * (age_cap + 1);
  ValueNet prev = init_net(input_dim, cfg.hidden_width, cfg.seed);  // Q = 0 everywhere

  RlMpcResult result;
  for (int d = 1; d <= cfg.iterations; ++d) {
    const auto start = std::chrono::steady_clock::now();

    const ValueNet* terminal_net = &prev;
    const int horizon = cfg.horizon;
    PolicyFn policy = [terminal_net, horizon](const Belief& b, const PolicyState&,
                                              const JointSourceModel& m, const ChannelModel& ch,
                                              Rng&) {
      return rl_mpc_action(b, *terminal_net, horizon, m, ch);
    };
    const std::uint64_t collection_seed = splitmix64(cfg.seed) + static_cast<std::uint64_t>(d);
    const std::vector<Belief> beliefs = collect_beliefs(
        model, channel, policy, cfg.samples_per_iteration, collection_seed, initial_state,
        age_cap);

    double loss = 0.0;
    ValueNet net = rl_iteration(d, prev, beliefs, cfg, model, channel, &loss);

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    result.stats.push_back({d, loss, wall_ms});
    if (!outputs.checkpoint_prefix.empty()) {
      save_net(net, outputs.checkpoint_prefix + ".d" + std::to_string(d));
    }
    prev = std::move(net);
  }

  if (!outputs.log_path.empty()) {
    std::ofstream log(outputs.log_path);
    if (!log) throw std::runtime_error("cannot write training log '" + outputs.log_path + "'");
    log << "iteration,mean_loss,wall_ms\n";
    for (const auto& s : result.stats) {
      log << s.iteration << ',' << s.mean_loss << ',' << s.wall_ms << '\n';
    }
  }

  result.net = std::move(prev);
  return result;
}

int rl_mpc_action(const Belief& belief, const ValueNet& net, int horizon,
                  const JointSourceModel& model, const ChannelModel& channel) {
  LookaheadConfig config{horizon, [&net](const Belief& b) { return forward(net, b.flatten()); }};
  return mpc_action(belief, config, model, channel);
}

}  // namespace aoii
