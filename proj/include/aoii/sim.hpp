#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aoii/belief.hpp"
#include "aoii/policies.hpp"
#include "aoii/source_model.hpp"

namespace aoii {

struct EpisodeConfig {
  const JointSourceModel* model = nullptr;
  ChannelModel channel{1.0};
  PolicyFn policy;
  int slots = 100000;
  int age_cap = 15;
  std::uint64_t seed = 1;
  int initial_state = 0;
  bool record_trace = false;
};

// Per-slot view handed to an observer: the freshly propagated belief, the
// monitor's estimate, the simulator-side ground truth (which the monitor
// never sees) and the measured age. `action` is -1 on the final slot, where
// no further request is sent.
struct SlotRecord {
  int slot;
  const Belief& belief;
  int map_state;
  int true_state;
  int aoii;
  int action;
  bool delivered;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

struct EpisodeResult {
  double maoii = 0.0;
  std::vector<int> aoii_trace;             // filled when record_trace is set
  std::vector<long long> action_histogram;  // requests sent per sensor
  long long erasure_count = 0;
  long long slots = 0;
};

// Runs the closed loop for cfg.slots slots: deliver the in-flight
// observation, update the belief and the MAP estimate, measure the true age,
// pick the next sensor, make the channel draw, and step the source. The
// initial state is known to the monitor; the first delivery happens in slot 1
// (one-slot channel delay). MAoII averages the measured age over slots
// 1..slots.
EpisodeResult run_episode(const EpisodeConfig& cfg, const SlotObserver& observer = {});

struct BatchResult {
  double maoii = 0.0;
  double stderr_maoii = 0.0;
  double erasure_rate = 0.0;
  long long slots = 0;
  std::vector<EpisodeResult> episodes;
};

// Independent episodes restarted from the initial state, episode e seeded
// with base.seed + e. Aggregate MAoII is the slot-weighted mean; the standard
// error is across episodes. Episodes run concurrently up to max_threads
// (0 = hardware concurrency); results are reduced in episode order.
BatchResult run_batch(const EpisodeConfig& base, int episodes, int slots_per_episode,
                      int max_threads = 0);

}  // namespace aoii
