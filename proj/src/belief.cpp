#include "aoii/belief.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace aoii {

namespace {

constexpr double kMassTolerance = 1e-9;

}  // namespace

Belief::Belief(int num_states, int age_cap) {
  if (num_states < 1 || age_cap < 1) {
    throw std::invalid_argument("belief needs at least one state and age_cap >= 1");
  }
  mass_ = Eigen::MatrixXd::Zero(num_states, age_cap + 1);
}

Belief Belief::point_mass(int num_states, int age_cap, int state) {
  Belief b(num_states, age_cap);
  if (state < 0 || state >= num_states) {
    throw std::out_of_range("point mass state out of range");
  }
  b.mass_(state, 0) = 1.0;
  return b;
}

Eigen::VectorXd Belief::flatten() const {
  Eigen::VectorXd flat(mass_.size());
  const int cols = static_cast<int>(mass_.cols());
  for (int i = 0; i < mass_.rows(); ++i) {
    flat.segment(static_cast<Eigen::Index>(i) * cols, cols) = mass_.row(i).transpose();
  }
  return flat;
}

Belief initial_belief(const JointSourceModel& model, int initial_state, int age_cap) {
  return Belief::point_mass(model.num_states(), age_cap, initial_state);
}

Belief observation_posterior(const Belief& belief, const Observation& o,
                             const JointSourceModel& model) {
  if (o.is_erased()) return belief;

  Belief updated = belief;
  double consistent_mass = 0.0;
  for (int i = 0; i < belief.num_states(); ++i) {
    if (consistent(model, o, i)) {
      consistent_mass += belief.mass().row(i).sum();
    } else {
      for (int d = 0; d <= belief.age_cap(); ++d) updated(i, d) = 0.0;
    }
  }
  if (consistent_mass <= 0.0) {
    throw ImpossibleObservation("observation " + model.value_label(o.sensor(), o.symbol()) +
                                " from sensor " + std::to_string(o.sensor()) +
                                " has zero mass under the current belief");
  }
  for (int i = 0; i < belief.num_states(); ++i) {
    for (int d = 0; d <= belief.age_cap(); ++d) updated(i, d) /= consistent_mass;
  }
  return updated;
}

PropagateResult propagate(const Belief& updated, const JointSourceModel& model) {
  const int n = updated.num_states();
  const int cap = updated.age_cap();
  if (n != model.num_states()) {
    throw std::invalid_argument("belief state count does not match the model");
  }

  const Eigen::VectorXd pi_prev = updated.state_marginal();
  const Eigen::VectorXd pi = model.transition().transpose() * pi_prev;
  const int map_state = map_estimate(pi);

  Belief next(n, cap);
  // Age-shifted inflow: column d of the result comes from column d-1 of the
  // input, with columns cap-1 and cap both landing at cap.
  for (int d = 1; d <= cap; ++d) {
    Eigen::VectorXd inflow = updated.mass().col(d - 1);
    if (d == cap) inflow += updated.mass().col(cap);
    const Eigen::VectorXd shifted = model.transition().transpose() * inflow;
    for (int i = 0; i < n; ++i) next(i, d) = shifted(i);
  }
  // The MAP row holds its entire marginal at age 0; everything else in that
  // row is zero.
  for (int d = 1; d <= cap; ++d) next(map_state, d) = 0.0;
  next(map_state, 0) = pi(map_state);

  const double drift = std::abs(next.total_mass() - updated.total_mass());
  if (drift > kMassTolerance) {
    throw std::logic_error("propagate lost probability mass (drift " + std::to_string(drift) +
                           ")");
  }
  return PropagateResult{std::move(next), map_state};
}

int map_estimate(const Eigen::VectorXd& pi) {
  if (std::abs(pi.sum() - 1.0) > kMassTolerance) {
    throw std::invalid_argument("state distribution does not sum to 1");
  }
  int best = 0;
  for (int i = 1; i < pi.size(); ++i) {
    if (pi(i) > pi(best)) best = i;
  }
  return best;
}

double expected_cost(const Belief& belief) {
  double cost = 0.0;
  for (int d = 1; d <= belief.age_cap(); ++d) {
    cost += d * belief.mass().col(d).sum();
  }
  return cost;
}

SuccessorSet successors(const Belief& belief, int action, const JointSourceModel& model,
                        const ChannelModel& channel) {
  if (action < 0 || action >= model.num_sensors()) {
    throw std::out_of_range("action out of range");
  }

  SuccessorSet set;
  const int num_symbols = static_cast<int>(model.component(action).values.size());
  for (int symbol = 0; symbol < num_symbols; ++symbol) {
    const Observation o = Observation::value(action, symbol);
    double mass = 0.0;
    for (int i = 0; i < belief.num_states(); ++i) {
      if (consistent(model, o, i)) mass += belief.mass().row(i).sum();
    }
    const double probability = channel.rho_s * mass;
    if (probability <= 0.0) continue;
    set.entries.push_back(
        {o, propagate(observation_posterior(belief, o, model), model).belief, probability});
  }
  if (channel.rho_e() > 0.0) {
    set.entries.push_back(
        {Observation::erased(), propagate(belief, model).belief, channel.rho_e()});
  }

  double total = 0.0;
  for (const auto& entry : set.entries) total += entry.probability;
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::logic_error("successor probabilities sum to " + std::to_string(total));
  }
  return set;
}

void dump(const Belief& belief, const JointSourceModel& model, std::ostream& out) {
  int width = 10;
  for (int i = 0; i < model.num_states(); ++i) {
    width = std::max(width, static_cast<int>(model.state_label(i).size()) + 1);
  }
  out << std::left << std::setw(width) << "state";
  for (int d = 0; d <= belief.age_cap(); ++d) {
    out << std::right << std::setw(9) << ("age " + std::to_string(d));
  }
  out << '\n';
  for (int i = 0; i < belief.num_states(); ++i) {
    out << std::left << std::setw(width) << model.state_label(i);
    for (int d = 0; d <= belief.age_cap(); ++d) {
      out << std::right << std::setw(9) << std::fixed << std::setprecision(4) << belief(i, d);
    }
    out << '\n';
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace aoii
