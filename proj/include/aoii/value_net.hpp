#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoii/rng.hpp"

namespace aoii {

// Feed-forward terminal-cost approximator: two rectified hidden layers of
// equal width and a linear scalar output. The output layer starts at exactly
// zero, so a fresh net evaluates to 0 for every input.
struct ValueNet {
  Eigen::MatrixXd w1, w2;
  Eigen::VectorXd b1, b2;
  Eigen::RowVectorXd w3;
  double b3 = 0.0;

  std::uint64_t seed = 0;  // recorded in checkpoints
  int iteration = 0;       // trainer iteration that produced this net

  int input_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_width() const { return static_cast<int>(w1.rows()); }
};

// Hidden weights uniform in +-sqrt(6 / fan_in), hidden biases zero, output
// layer exactly zero.
ValueNet init_net(int input_dim, int hidden_width, Rng& rng);
ValueNet init_net(int input_dim, int hidden_width, std::uint64_t seed);

double forward(const ValueNet& net, const Eigen::VectorXd& input);

struct NetGradient {
  Eigen::MatrixXd w1, w2;
  Eigen::VectorXd b1, b2;
  Eigen::RowVectorXd w3;
  double b3 = 0.0;
};

// Backpropagated gradient of the squared-residual loss 0.5*(Q(x) - target)^2.
NetGradient gradient(const ValueNet& net, const Eigen::VectorXd& input, double target);

struct TrainingSample {
  Eigen::VectorXd input;
  double target;
};

// Signals a divergent fit (non-finite loss or parameters).
class TrainingFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plain per-sample gradient descent, samples visited in order, single
// threaded and deterministic. Returns the mean squared residual over the
// batch after the final epoch.
double train_batch(ValueNet& net, const std::vector<TrainingSample>& samples,
                   double learning_rate, int epochs);

// Text checkpoint: header (dims, seed, iteration) followed by row-major
// parameters at 17 significant digits, so reloads reproduce forward outputs.
void save_net(const ValueNet& net, std::ostream& out);
void save_net(const ValueNet& net, const std::string& path);
ValueNet load_net(std::istream& in);
ValueNet load_net(const std::string& path);

}  // namespace aoii
