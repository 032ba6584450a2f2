#include "aoii/sweep.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace aoii {

namespace {

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

std::pair<int, int> parse_grid_token(const std::string& token) {
  const auto x = token.find('x');
  if (x == std::string::npos) {
    throw std::invalid_argument("bad grid size '" + token + "', expected LXxLY like 3x3");
  }
  return {std::stoi(token.substr(0, x)), std::stoi(token.substr(x + 1))};
}

PolicyChoice parse_policy_tokens(const std::vector<std::string>& tokens) {
  PolicyChoice choice;
  choice.name = tokens[1];
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad policy option '" + tokens[i] + "', expected key=value");
    }
    const std::string key = tokens[i].substr(0, eq);
    const std::string value = tokens[i].substr(eq + 1);
    if (key == "lookahead") {
      choice.lookahead = std::stoi(value);
    } else if (key == "checkpoint") {
      choice.checkpoint = value;
    } else {
      throw std::invalid_argument("unknown policy option '" + key + "'");
    }
  }
  return choice;
}

}  // namespace

SweepSpec parse_sweep_spec(std::istream& in) {
  SweepSpec spec;
  spec.rho_values.clear();

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    auto need = [&](std::size_t count) {
      if (tokens.size() < count + 1) {
        throw std::invalid_argument("sweep line " + std::to_string(line_no) + ": '" + key +
                                    "' needs " + std::to_string(count) + " value(s)");
      }
    };
    if (key == "scenario") {
      need(1);
      spec.scenario = tokens[1];
    } else if (key == "rho_s") {
      need(1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        spec.rho_values.push_back(std::stod(tokens[i]));
      }
    } else if (key == "grids") {
      need(1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        spec.grids.push_back(parse_grid_token(tokens[i]));
      }
    } else if (key == "boundary") {
      need(1);
      if (tokens[1] == "renormalize") {
        spec.boundary = BoundaryRule::kRenormalizeRow;
      } else if (tokens[1] == "stay") {
        spec.boundary = BoundaryRule::kStayAbsorbs;
      } else {
        throw std::invalid_argument("sweep line " + std::to_string(line_no) +
                                    ": boundary must be renormalize|stay");
      }
    } else if (key == "policy") {
      need(1);
      spec.policies.push_back(parse_policy_tokens(tokens));
    } else if (key == "episodes") {
      need(1);
      spec.episodes = std::stoi(tokens[1]);
    } else if (key == "slots") {
      need(1);
      spec.slots = std::stoi(tokens[1]);
    } else if (key == "dmax") {
      need(1);
      spec.age_cap = std::stoi(tokens[1]);
    } else if (key == "seed") {
      need(1);
      spec.seed = std::stoull(tokens[1]);
    } else if (key == "out") {
      need(1);
      spec.out_path = tokens[1];
    } else if (key == "train") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos) {
          throw std::invalid_argument("sweep line " + std::to_string(line_no) +
                                      ": train options are key=value");
        }
        const std::string opt = tokens[i].substr(0, eq);
        const std::string value = tokens[i].substr(eq + 1);
        if (opt == "iterations") {
          spec.training.iterations = std::stoi(value);
        } else if (opt == "samples") {
          spec.training.samples_per_iteration = std::stoi(value);
        } else if (opt == "lr") {
          spec.training.learning_rate = std::stod(value);
        } else if (opt == "epochs") {
          spec.training.epochs = std::stoi(value);
        } else if (opt == "hidden") {
          spec.training.hidden_width = std::stoi(value);
        } else {
          throw std::invalid_argument("unknown train option '" + opt + "'");
        }
      }
    } else {
      throw std::invalid_argument("sweep line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }

  if (spec.scenario != "fire" && spec.scenario != "grid") {
    throw std::invalid_argument("sweep spec needs 'scenario fire' or 'scenario grid'");
  }
  if (spec.policies.empty()) throw std::invalid_argument("sweep spec needs at least one policy");
  if (spec.scenario == "fire") {
    if (spec.rho_values.empty()) {
      throw std::invalid_argument("fire sweep needs at least one rho_s value");
    }
    if (!spec.grids.empty()) {
      throw std::invalid_argument("fire sweep does not take grid sizes");
    }
  } else {
    if (spec.grids.empty()) throw std::invalid_argument("grid sweep needs at least one grid");
    if (spec.rho_values.empty()) spec.rho_values.push_back(0.8);
    if (spec.rho_values.size() != 1) {
      throw std::invalid_argument("grid sweep takes exactly one rho_s value");
    }
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read sweep spec '" + path + "'");
  return parse_sweep_spec(in);
}

std::string csv_header() {
  return "scenario,param,policy,lookahead,episodes,slots,seed,maoii,stderr,erasure_rate,wall_ms";
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
  std::ostringstream ss;
  ss.precision(12);
  ss << row.scenario << ',' << row.param << ',' << row.policy << ',' << row.lookahead << ','
     << row.episodes << ',' << row.slots << ',' << row.seed << ',' << row.maoii << ','
     << row.stderr_maoii << ',' << row.erasure_rate << ',' << static_cast<long long>(row.wall_ms);
  out << ss.str() << '\n';
}

void run_sweep(const SweepSpec& spec, std::ostream& out) {
  struct Point {
    JointSourceModel model;
    ChannelModel channel;
    std::string param;
  };
  std::vector<Point> points;
  if (spec.scenario == "fire") {
    for (double rho : spec.rho_values) {
      std::ostringstream param;
      param << rho;
      points.push_back({build_scenario_fire(), ChannelModel(rho), param.str()});
    }
  } else {
    for (const auto& [lx, ly] : spec.grids) {
      points.push_back({build_scenario_grid(lx, ly, spec.boundary),
                        ChannelModel(spec.rho_values.front()),
                        std::to_string(lx) + "x" + std::to_string(ly)});
    }
  }

  out << csv_header() << '\n';
  for (const auto& point : points) {
    for (const auto& choice : spec.policies) {
      const auto start = std::chrono::steady_clock::now();

      PolicySpec policy_spec{choice.name, choice.lookahead, nullptr};
      if (choice.name == "rl-mpc") {
        std::shared_ptr<ValueNet> net;
        if (!choice.checkpoint.empty()) {
          net = std::make_shared<ValueNet>(load_net(choice.checkpoint));
        } else {
          RlMpcConfig training = spec.training;
          training.horizon = choice.lookahead;
          training.seed = spec.seed;
          net = std::make_shared<ValueNet>(
              train_rl_mpc(training, point.model, point.channel, 0, spec.age_cap).net);
        }
        const int expected = point.model.num_states() * (spec.age_cap + 1);
        if (net->input_dim() != expected) {
          throw std::invalid_argument("checkpoint input dim " +
                                      std::to_string(net->input_dim()) + " does not match " +
                                      std::to_string(expected) + " for point " + point.param);
        }
        policy_spec.net = net;
      }

      EpisodeConfig cfg;
      cfg.model = &point.model;
      cfg.channel = point.channel;
      cfg.policy = make_policy(policy_spec);
      cfg.age_cap = spec.age_cap;
      cfg.seed = spec.seed;
      cfg.initial_state = 0;
      const BatchResult batch = run_batch(cfg, spec.episodes, spec.slots);

      const double wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      CsvRow row;
      row.scenario = spec.scenario;
      row.param = point.param;
      row.policy = choice.name;
      row.lookahead =
          (choice.name == "mpc-wtc" || choice.name == "rl-mpc") ? choice.lookahead : 0;
      row.episodes = spec.episodes;
      row.slots = spec.slots;
      row.seed = spec.seed;
      row.maoii = batch.maoii;
      row.stderr_maoii = batch.stderr_maoii;
      row.erasure_rate = batch.erasure_rate;
      row.wall_ms = wall_ms;
      write_csv_row(out, row);
    }
  }
}

void run_sweep(const SweepSpec& spec) {
  if (spec.out_path.empty()) {
    run_sweep(spec, std::cout);
    return;
  }
  std::ofstream out(spec.out_path);
  if (!out) throw std::runtime_error("cannot write sweep output '" + spec.out_path + "'");
  run_sweep(spec, out);
}

}  // namespace aoii
