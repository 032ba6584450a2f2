#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aoii/rng.hpp"

namespace aoii {

// One sensor's component process: a named, ordered list of symbols.
struct ComponentSpec {
  std::string name;
  std::vector<std::string> values;
};

// Erasure channel with a fixed one-slot delay: a packet sampled at t arrives
// at t+1 with probability rho_s, otherwise it is lost. The erasure
// probability is derived, never stored.
struct ChannelModel {
  explicit ChannelModel(double success_probability);
  double rho_s;
  double rho_e() const { return 1.0 - rho_s; }
};

// What the monitor receives in a slot: either the erasure symbol or the value
// of one component. Symbols are indices into the component's value list.
class Observation {
 public:
  static Observation erased() { return Observation(-1, -1); }
  static Observation value(int sensor, int symbol);

  bool is_erased() const { return sensor_ < 0; }
  int sensor() const;
  int symbol() const;

  bool operator==(const Observation&) const = default;

 private:
  Observation(int sensor, int symbol) : sensor_(sensor), symbol_(symbol) {}
  int sensor_;
  int symbol_;
};

// The joint Markov source: K component processes whose tuple evolves with a
// row-stochastic transition matrix. The state ordering is frozen at
// construction; every matrix, belief and index in the library refers to it.
// All indices (states, sensors, symbols) are 0-based.
class JointSourceModel {
 public:
  JointSourceModel(std::vector<ComponentSpec> components,
                   std::vector<std::vector<int>> states,
                   Eigen::MatrixXd transition);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_sensors() const { return static_cast<int>(components_.size()); }
  const std::vector<ComponentSpec>& components() const { return components_; }
  const ComponentSpec& component(int k) const;

  // The k-th entry of joint state i, as an index into component k's values.
  int project(int state, int sensor) const;
  const std::string& value_label(int sensor, int symbol) const;
  const std::vector<int>& state_tuple(int state) const;
  std::string state_label(int state) const;

  // Index of the state with the given component-value tuple, if present.
  std::optional<int> state_index(const std::vector<int>& tuple) const;

  const Eigen::MatrixXd& transition() const { return transition_; }
  double transition(int from, int to) const { return transition_(from, to); }

 private:
  std::vector<ComponentSpec> components_;
  std::vector<std::vector<int>> states_;
  Eigen::MatrixXd transition_;
  std::map<std::vector<int>, int> index_;
};

// Builds the joint state space. With no `reachable` list the space is the
// full product of component values, ordered with the first component varying
// fastest; otherwise states appear in the order of the given tuples.
// Throws std::invalid_argument on dimension mismatch, a non-stochastic row
// (row-sum deviation above 1e-9), or duplicate states.
JointSourceModel build_joint_space(
    std::vector<ComponentSpec> components,
    const std::optional<std::vector<std::vector<int>>>& reachable,
    Eigen::MatrixXd transition);

// True iff joint state i agrees with the received component value.
// Erased observations have no consistency semantics; passing one throws.
bool consistent(const JointSourceModel& model, const Observation& o, int state);

// Samples the successor of state i from row i of the transition matrix.
int step_source(const JointSourceModel& model, int state, Rng& rng);

// One channel use: the sampled symbol survives with probability rho_s.
// The one-slot delay is realized by the caller delivering the result in the
// next slot.
Observation transmit(const ChannelModel& channel, int sensor, int symbol, Rng& rng);

// Plain-text model document (see README for the grammar). Round-trips are
// lossless: values are printed with 17 significant digits.
void save_model(const JointSourceModel& model, std::ostream& out);
JointSourceModel load_model(std::istream& in);

}  // namespace aoii
