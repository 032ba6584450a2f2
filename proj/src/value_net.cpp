#include "aoii/value_net.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace aoii {

namespace {

void check_input(const ValueNet& net, const Eigen::VectorXd& input) {
  if (input.size() != net.input_dim()) {
    throw std::invalid_argument("net expects input of length " +
                                std::to_string(net.input_dim()) + ", got " +
                                std::to_string(input.size()));
  }
  if (!input.allFinite()) throw std::invalid_argument("net input must be finite");
}

struct ForwardTrace {
  Eigen::VectorXd z1, h1, z2, h2;
  double q;
};

ForwardTrace forward_trace(const ValueNet& net, const Eigen::VectorXd& input) {
  ForwardTrace t;
  t.z1 = net.w1 * input + net.b1;
  t.h1 = t.z1.cwiseMax(0.0);
  t.z2 = net.w2 * t.h1 + net.b2;
  t.h2 = t.z2.cwiseMax(0.0);
  t.q = net.w3.dot(t.h2) + net.b3;
  return t;
}

}  // namespace

ValueNet init_net(int input_dim, int hidden_width, Rng& rng) {
  if (input_dim < 1 || hidden_width < 1) {
    throw std::invalid_argument("net dimensions must be >= 1");
  }
  ValueNet net;
  const double r1 = std::sqrt(6.0 / input_dim);
  const double r2 = std::sqrt(6.0 / hidden_width);
  std::uniform_real_distribution<double> u1(-r1, r1), u2(-r2, r2);
  net.w1 = Eigen::MatrixXd::NullaryExpr(hidden_width, input_dim, [&] { return u1(rng); });
  net.b1 = Eigen::VectorXd::Zero(hidden_width);
  net.w2 = Eigen::MatrixXd::NullaryExpr(hidden_width, hidden_width, [&] { return u2(rng); });
  net.b2 = Eigen::VectorXd::Zero(hidden_width);
  net.w3 = Eigen::RowVectorXd::Zero(hidden_width);
  net.b3 = 0.0;
  return net;
}

ValueNet init_net(int input_dim, int hidden_width, std::uint64_t seed) {
  Rng rng = make_stream(seed);
  ValueNet net = init_net(input_dim, hidden_width, rng);
  net.seed = seed;
  return net;
}

double forward(const ValueNet& net, const Eigen::VectorXd& input) {
  check_input(net, input);
  return forward_trace(net, input).q;
}

NetGradient gradient(const ValueNet& net, const Eigen::VectorXd& input, double target) {
  check_input(net, input);
  const ForwardTrace t = forward_trace(net, input);
  const double residual = t.q - target;

  NetGradient g;
  g.b3 = residual;
  g.w3 = residual * t.h2.transpose();

  // Rectifier subgradient: 0 at exactly 0.
  Eigen::VectorXd d2 =
      (residual * net.w3.transpose().array() * (t.z2.array() > 0.0).cast<double>()).matrix();
  g.b2 = d2;
  g.w2 = d2 * t.h1.transpose();

  Eigen::VectorXd d1 =
      ((net.w2.transpose() * d2).array() * (t.z1.array() > 0.0).cast<double>()).matrix();
  g.b1 = d1;
  g.w1 = d1 * input.transpose();
  return g;
}

double train_batch(ValueNet& net, const std::vector<TrainingSample>& samples,
                   double learning_rate, int epochs) {
  if (samples.empty()) throw std::invalid_argument("train_batch needs at least one sample");
  if (epochs < 1) throw std::invalid_argument("train_batch needs at least one epoch");

  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (const auto& sample : samples) {
      const NetGradient g = gradient(net, sample.input, sample.target);
      net.w1 -= learning_rate * g.w1;
      net.b1 -= learning_rate * g.b1;
      net.w2 -= learning_rate * g.w2;
      net.b2 -= learning_rate * g.b2;
      net.w3 -= learning_rate * g.w3;
      net.b3 -= learning_rate * g.b3;
    }
  }

  double mse = 0.0;
  for (const auto& sample : samples) {
    const double r = forward(net, sample.input) - sample.target;
    mse += r * r;
  }
  mse /= static_cast<double>(samples.size());
  if (!std::isfinite(mse)) {
    throw TrainingFault("training diverged: non-finite loss after " + std::to_string(epochs) +
                        " epochs");
  }
  return mse;
}

namespace {

void write_matrix(std::ostream& out, const char* tag, const Eigen::MatrixXd& m) {
  out << tag;
  std::ostringstream ss;
  ss.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      ss.str("");
      ss << m(i, j);
      out << ' ' << ss.str();
    }
  }
  out << '\n';
}

Eigen::MatrixXd read_matrix(std::istream& in, const char* tag, Eigen::Index rows,
                            Eigen::Index cols) {
  std::string got;
  if (!(in >> got) || got != tag) {
    throw std::invalid_argument("bad net checkpoint: expected section '" + std::string(tag) +
                                "'");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> m(i, j))) {
        throw std::invalid_argument("bad net checkpoint: truncated section '" +
                                    std::string(tag) + "'");
      }
    }
  }
  return m;
}

}  // namespace

void save_net(const ValueNet& net, std::ostream& out) {
  out << "valuenet v1\n";
  out << "dims " << net.input_dim() << ' ' << net.hidden_width() << ' ' << net.hidden_width()
      << " 1\n";
  out << "seed " << net.seed << '\n';
  out << "iteration " << net.iteration << '\n';
  write_matrix(out, "w1", net.w1);
  write_matrix(out, "b1", net.b1);
  write_matrix(out, "w2", net.w2);
  write_matrix(out, "b2", net.b2);
  write_matrix(out, "w3", net.w3);
  Eigen::MatrixXd b3(1, 1);
  b3(0, 0) = net.b3;
  write_matrix(out, "b3", b3);
}

void save_net(const ValueNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write net checkpoint '" + path + "'");
  save_net(net, out);
}

ValueNet load_net(std::istream& in) {
  std::string word, version;
  if (!(in >> word >> version) || word != "valuenet" || version != "v1") {
    throw std::invalid_argument("bad net checkpoint: missing 'valuenet v1' header");
  }
  int input_dim = 0, h1 = 0, h2 = 0, out_dim = 0;
  if (!(in >> word >> input_dim >> h1 >> h2 >> out_dim) || word != "dims" || h1 != h2 ||
      out_dim != 1 || input_dim < 1 || h1 < 1) {
    throw std::invalid_argument("bad net checkpoint: malformed dims line");
  }
  ValueNet net;
  if (!(in >> word >> net.seed) || word != "seed") {
    throw std::invalid_argument("bad net checkpoint: malformed seed line");
  }
  if (!(in >> word >> net.iteration) || word != "iteration") {
    throw std::invalid_argument("bad net checkpoint: malformed iteration line");
  }
  net.w1 = read_matrix(in, "w1", h1, input_dim);
  net.b1 = read_matrix(in, "b1", h1, 1);
  net.w2 = read_matrix(in, "w2", h1, h1);
  net.b2 = read_matrix(in, "b2", h1, 1);
  net.w3 = read_matrix(in, "w3", 1, h1);
  net.b3 = read_matrix(in, "b3", 1, 1)(0, 0);
  return net;
}

ValueNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read net checkpoint '" + path + "'");
  return load_net(in);
}

}  // namespace aoii
