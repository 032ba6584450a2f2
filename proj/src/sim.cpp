#include "aoii/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace aoii {

namespace {

void validate(const EpisodeConfig& cfg) {
  if (!cfg.model) throw std::invalid_argument("episode config needs a model");
  if (!cfg.policy) throw std::invalid_argument("episode config needs a policy");
  if (cfg.slots < 1) throw std::invalid_argument("episode needs at least one slot");
  if (cfg.age_cap < 1) throw std::invalid_argument("age cap must be >= 1");
  if (cfg.initial_state < 0 || cfg.initial_state >= cfg.model->num_states()) {
    throw std::out_of_range("initial state out of range");
  }
}

}  // namespace

EpisodeResult run_episode(const EpisodeConfig& cfg, const SlotObserver& observer) {
  validate(cfg);
  const JointSourceModel& model = *cfg.model;
  const int num_sensors = model.num_sensors();

  Rng source_rng = make_stream(cfg.seed, 0);
  Rng channel_rng = make_stream(cfg.seed, 1);
  Rng policy_rng = make_stream(cfg.seed, 2);

  EpisodeResult result;
  result.slots = cfg.slots;
  result.action_histogram.assign(num_sensors, 0);
  if (cfg.record_trace) result.aoii_trace.reserve(cfg.slots);

  int true_state = cfg.initial_state;
  Belief belief = initial_belief(model, true_state, cfg.age_cap);
  // Seed the round-robin cycle so the first pick is sensor 0.
  PolicyState policy_state{num_sensors - 1, num_sensors - 1};
  int aoii = 0;
  long long aoii_sum = 0;

  // Slot 0: the state is known, no observation is in flight yet.
  int action = cfg.policy(belief, policy_state, model, cfg.channel, policy_rng);
  policy_state.last_action = action;
  ++result.action_histogram[action];
  Observation pending =
      transmit(cfg.channel, action, model.project(true_state, action), channel_rng);
  true_state = step_source(model, true_state, source_rng);

  for (int t = 1; t <= cfg.slots; ++t) {
    // (1) deliver the observation sampled in the previous slot
    const Observation o = pending;
    if (o.is_erased()) {
      ++result.erasure_count;
    } else {
      policy_state.last_success_action = o.sensor();
    }

    // (2) condition on the observation, then advance one slot
    PropagateResult next = propagate(observation_posterior(belief, o, model), model);
    belief = std::move(next.belief);

    // (3) measured age against ground truth, clamped like the belief ages
    aoii = (next.map_state == true_state) ? 0 : std::min(aoii + 1, cfg.age_cap);
    aoii_sum += aoii;
    if (cfg.record_trace) result.aoii_trace.push_back(aoii);

    // (4) next request
    action = -1;
    if (t < cfg.slots) {
      action = cfg.policy(belief, policy_state, model, cfg.channel, policy_rng);
      policy_state.last_action = action;
      ++result.action_histogram[action];
    }

    if (observer) {
      observer(SlotRecord{t, belief, next.map_state, true_state, aoii, action, !o.is_erased()});
    }

    // (5) sample the chosen component and make the channel draw
    if (action >= 0) {
      pending = transmit(cfg.channel, action, model.project(true_state, action), channel_rng);
    }

    // (6) the source moves on
    true_state = step_source(model, true_state, source_rng);
  }

  result.maoii = static_cast<double>(aoii_sum) / cfg.slots;
  return result;
}

BatchResult run_batch(const EpisodeConfig& base, int episodes, int slots_per_episode,
                      int max_threads) {
  if (episodes < 1) throw std::invalid_argument("batch needs at least one episode");
  if (slots_per_episode < 1) throw std::invalid_argument("episodes need at least one slot");

  if (max_threads <= 0) {
    max_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (max_threads < 1) max_threads = 1;
  }

  auto run_one = [&base, slots_per_episode](int e) {
    EpisodeConfig cfg = base;
    cfg.slots = slots_per_episode;
    cfg.seed = base.seed + static_cast<std::uint64_t>(e);
    return run_episode(cfg);
  };

  BatchResult batch;
  batch.episodes.resize(episodes);
  if (max_threads == 1 || episodes == 1) {
    for (int e = 0; e < episodes; ++e) batch.episodes[e] = run_one(e);
  } else {
    std::vector<std::future<EpisodeResult>> futures;
    futures.reserve(episodes);
    for (int e = 0; e < episodes; ++e) {
      futures.push_back(std::async(std::launch::async, run_one, e));
    }
    for (int e = 0; e < episodes; ++e) batch.episodes[e] = futures[e].get();
  }

  long long total_slots = 0, total_erasures = 0;
  double mean = 0.0;
  for (const auto& ep : batch.episodes) {
    total_slots += ep.slots;
    total_erasures += ep.erasure_count;
    mean += ep.maoii;
  }
  mean /= episodes;
  batch.maoii = mean;
  batch.slots = total_slots;
  batch.erasure_rate = static_cast<double>(total_erasures) / total_slots;
  if (episodes > 1) {
    double ss = 0.0;
    for (const auto& ep : batch.episodes) ss += (ep.maoii - mean) * (ep.maoii - mean);
    batch.stderr_maoii = std::sqrt(ss / (episodes - 1)) / std::sqrt(episodes);
  }
  return batch;
}

}  // namespace aoii
