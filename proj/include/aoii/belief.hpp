#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "aoii/source_model.hpp"

namespace aoii {

// Joint distribution over (state index, age of incorrect information). Entry
// (i, d) is the probability that the source is in state i and the monitor's
// estimate has been wrong for d consecutive slots, given everything the
// monitor has seen. Ages are truncated at age_cap; the shift in propagate()
// clamps there so mass is conserved. This is the sufficient statistic the
// whole controller works on.
class Belief {
 public:
  Belief(int num_states, int age_cap);
  static Belief point_mass(int num_states, int age_cap, int state);

  int num_states() const { return static_cast<int>(mass_.rows()); }
  int age_cap() const { return static_cast<int>(mass_.cols()) - 1; }

  double operator()(int state, int age) const { return mass_(state, age); }
  double& operator()(int state, int age) { return mass_(state, age); }

  const Eigen::MatrixXd& mass() const { return mass_; }
  double total_mass() const { return mass_.sum(); }

  // State marginal: pi(i) = sum over ages of (i, d).
  Eigen::VectorXd state_marginal() const { return mass_.rowwise().sum(); }

  // State-major flattening (all ages of state 0, then state 1, ...); the
  // input layout the value approximator is trained on.
  Eigen::VectorXd flatten() const;

 private:
  Eigen::MatrixXd mass_;
};

// Raised when an observation carries zero mass under the current belief.
// With exact Bayes beliefs the true state always has positive mass, so this
// indicates a harness bug; the run must abort instead of renormalizing.
class ImpossibleObservation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Known initial state: all mass at (initial_state, age 0).
Belief initial_belief(const JointSourceModel& model, int initial_state, int age_cap);

// Conditions the belief on a delivered observation. Erased observations
// leave the belief unchanged; a component value zeroes every inconsistent
// state and renormalizes by the total consistent mass (global Bayes
// normalization). Throws ImpossibleObservation when that mass is zero.
Belief observation_posterior(const Belief& belief, const Observation& o,
                             const JointSourceModel& model);

struct PropagateResult {
  Belief belief;
  int map_state;
};

// Advances an observation-updated belief one slot: the state marginal is
// pushed through the transition matrix, the MAP row collapses to age 0 with
// its full marginal, and every other state receives the age-shifted inflow
// (clamped at age_cap). Total mass is conserved exactly and checked.
PropagateResult propagate(const Belief& updated, const JointSourceModel& model);

// Argmax of a state distribution; ties break toward the lowest index.
// The distribution must sum to 1 within 1e-9.
int map_estimate(const Eigen::VectorXd& pi);

// Expected age under the belief: sum over ages of d * (column mass at d).
double expected_cost(const Belief& belief);

// All one-slot belief transitions for a given action, with their
// probabilities: one entry per component value with positive consistent mass
// (probability rho_s * mass) plus an erasure entry (probability rho_e).
// Zero-probability entries are omitted; probabilities sum to 1.
struct SuccessorSet {
  struct Entry {
    Observation observation;
    Belief belief;
    double probability;
  };
  std::vector<Entry> entries;
};

SuccessorSet successors(const Belief& belief, int action, const JointSourceModel& model,
                        const ChannelModel& channel);

// Plain-text matrix dump with state labels as row headers and ages as
// columns; used in golden-file tests and the CLI trace output.
void dump(const Belief& belief, const JointSourceModel& model, std::ostream& out);

}  // namespace aoii
