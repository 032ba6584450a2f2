#include "aoii/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace aoii {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void check_range(int value, int bound, const char* what) {
  if (value < 0 || value >= bound) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(value) +
                            " out of range [0, " + std::to_string(bound) + ")");
  }
}

}  // namespace

ChannelModel::ChannelModel(double success_probability) : rho_s(success_probability) {
  if (!(rho_s >= 0.0 && rho_s <= 1.0)) {
    throw std::invalid_argument("channel success probability must lie in [0, 1]");
  }
}

Observation Observation::value(int sensor, int symbol) {
  if (sensor < 0 || symbol < 0) {
    throw std::invalid_argument("observation sensor/symbol must be nonnegative");
  }
  return Observation(sensor, symbol);
}

int Observation::sensor() const {
  if (is_erased()) throw std::logic_error("erased observation has no sensor");
  return sensor_;
}

int Observation::symbol() const {
  if (is_erased()) throw std::logic_error("erased observation has no symbol");
  return symbol_;
}

JointSourceModel::JointSourceModel(std::vector<ComponentSpec> components,
                                   std::vector<std::vector<int>> states,
                                   Eigen::MatrixXd transition)
    : components_(std::move(components)),
      states_(std::move(states)),
      transition_(std::move(transition)) {
  if (components_.empty()) throw std::invalid_argument("model needs at least one component");
  for (const auto& c : components_) {
    if (c.values.empty()) throw std::invalid_argument("component '" + c.name + "' has no values");
    std::unordered_set<std::string> seen(c.values.begin(), c.values.end());
    if (seen.size() != c.values.size()) {
      throw std::invalid_argument("component '" + c.name + "' has duplicate values");
    }
  }

  const int n = static_cast<int>(states_.size());
  if (n == 0) throw std::invalid_argument("model needs at least one joint state");
  for (const auto& tuple : states_) {
    if (tuple.size() != components_.size()) {
      throw std::invalid_argument("joint state arity does not match component count");
    }
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      if (tuple[k] < 0 || tuple[k] >= static_cast<int>(components_[k].values.size())) {
        throw std::invalid_argument("joint state entry outside component '" +
                                    components_[k].name + "' value list");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(states_[i], i).second) {
      throw std::invalid_argument("duplicate joint state at index " + std::to_string(i));
    }
  }

  if (transition_.rows() != n || transition_.cols() != n) {
    throw std::invalid_argument("transition matrix is " + std::to_string(transition_.rows()) +
                                "x" + std::to_string(transition_.cols()) + ", expected " +
                                std::to_string(n) + "x" + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = transition_(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("transition entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside [0, 1]");
      }
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("transition row " + std::to_string(i) +
                                  " is not stochastic (sum " + std::to_string(row_sum) + ")");
    }
  }
}

const ComponentSpec& JointSourceModel::component(int k) const {
  check_range(k, num_sensors(), "sensor");
  return components_[k];
}

int JointSourceModel::project(int state, int sensor) const {
  check_range(state, num_states(), "state");
  check_range(sensor, num_sensors(), "sensor");
  return states_[state][sensor];
}

const std::string& JointSourceModel::value_label(int sensor, int symbol) const {
  const auto& c = component(sensor);
  check_range(symbol, static_cast<int>(c.values.size()), "symbol");
  return c.values[symbol];
}

const std::vector<int>& JointSourceModel::state_tuple(int state) const {
  check_range(state, num_states(), "state");
  return states_[state];
}

std::string JointSourceModel::state_label(int state) const {
  const auto& tuple = state_tuple(state);
  std::string label = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k > 0) label += ",";
    label += components_[k].values[tuple[k]];
  }
  label += ")";
  return label;
}

std::optional<int> JointSourceModel::state_index(const std::vector<int>& tuple) const {
  auto it = index_.find(tuple);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

JointSourceModel build_joint_space(
    std::vector<ComponentSpec> components,
    const std::optional<std::vector<std::vector<int>>>& reachable,
    Eigen::MatrixXd transition) {
  std::vector<std::vector<int>> states;
  if (reachable.has_value()) {
    states = *reachable;
  } else {
    // Full product, first component varying fastest.
    std::size_t total = 1;
    for (const auto& c : components) total *= c.values.size();
    states.reserve(total);
    std::vector<int> tuple(components.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      states.push_back(tuple);
      for (std::size_t k = 0; k < components.size(); ++k) {
        if (++tuple[k] < static_cast<int>(components[k].values.size())) break;
        tuple[k] = 0;
      }
    }
  }
  return JointSourceModel(std::move(components), std::move(states), std::move(transition));
}

bool consistent(const JointSourceModel& model, const Observation& o, int state) {
  if (o.is_erased()) {
    throw std::logic_error("consistent() called with an erased observation");
  }
  return model.project(state, o.sensor()) == o.symbol();
}

int step_source(const JointSourceModel& model, int state, Rng& rng) {
  check_range(state, model.num_states(), "state");
  const double u = uniform01(rng);
  double cumulative = 0.0;
  const int n = model.num_states();
  for (int j = 0; j < n; ++j) {
    cumulative += model.transition(state, j);
    if (u < cumulative) return j;
  }
  // Row sums to 1 within tolerance; u landed in the residual sliver.
  for (int j = n - 1; j >= 0; --j) {
    if (model.transition(state, j) > 0.0) return j;
  }
  return n - 1;
}

Observation transmit(const ChannelModel& channel, int sensor, int symbol, Rng& rng) {
  return uniform01(rng) < channel.rho_s ? Observation::value(sensor, symbol)
                                        : Observation::erased();
}

namespace {

void write_double(std::ostream& out, double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  out << ss.str();
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

void save_model(const JointSourceModel& model, std::ostream& out) {
  for (const auto& c : model.components()) {
    out << "component " << c.name;
    for (const auto& v : c.values) out << ' ' << v;
    out << '\n';
  }
  for (int i = 0; i < model.num_states(); ++i) {
    out << "state";
    for (int k = 0; k < model.num_sensors(); ++k) {
      out << ' ' << model.value_label(k, model.project(i, k));
    }
    out << '\n';
  }
  for (int i = 0; i < model.num_states(); ++i) {
    out << "row";
    for (int j = 0; j < model.num_states(); ++j) {
      out << ' ';
      write_double(out, model.transition(i, j));
    }
    out << '\n';
  }
}

JointSourceModel load_model(std::istream& in) {
  std::vector<ComponentSpec> components;
  std::vector<std::vector<int>> states;
  std::vector<std::vector<double>> rows;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "component") {
      if (tokens.size() < 3) {
        throw std::invalid_argument("model line " + std::to_string(line_no) +
                                    ": component needs a name and at least one value");
      }
      ComponentSpec spec;
      spec.name = tokens[1];
      spec.values.assign(tokens.begin() + 2, tokens.end());
      components.push_back(std::move(spec));
    } else if (kind == "state") {
      if (tokens.size() != components.size() + 1) {
        throw std::invalid_argument("model line " + std::to_string(line_no) +
                                    ": state arity does not match component count");
      }
      std::vector<int> tuple;
      for (std::size_t k = 0; k + 1 < tokens.size(); ++k) {
        const auto& values = components[k].values;
        auto it = std::find(values.begin(), values.end(), tokens[k + 1]);
        if (it == values.end()) {
          throw std::invalid_argument("model line " + std::to_string(line_no) + ": value '" +
                                      tokens[k + 1] + "' not in component '" +
                                      components[k].name + "'");
        }
        tuple.push_back(static_cast<int>(it - values.begin()));
      }
      states.push_back(std::move(tuple));
    } else if (kind == "row") {
      std::vector<double> row;
      for (std::size_t j = 1; j < tokens.size(); ++j) {
        std::size_t pos = 0;
        row.push_back(std::stod(tokens[j], &pos));
        if (pos != tokens[j].size()) {
          throw std::invalid_argument("model line " + std::to_string(line_no) +
                                      ": bad probability literal '" + tokens[j] + "'");
        }
      }
      rows.push_back(std::move(row));
    } else {
      throw std::invalid_argument("model line " + std::to_string(line_no) +
                                  ": unknown directive '" + kind + "'");
    }
  }

  const int n = static_cast<int>(states.size());
  if (static_cast<int>(rows.size()) != n) {
    throw std::invalid_argument("model has " + std::to_string(states.size()) + " states but " +
                                std::to_string(rows.size()) + " transition rows");
  }
  Eigen::MatrixXd transition(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("transition row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (int j = 0; j < n; ++j) transition(i, j) = rows[i][j];
  }
  return JointSourceModel(std::move(components), std::move(states), std::move(transition));
}

}  // namespace aoii
