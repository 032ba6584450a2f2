#include "aoii/scenarios.hpp"

#include <stdexcept>
#include <tuple>

namespace aoii {

JointSourceModel build_scenario_fire() {
  std::vector<ComponentSpec> components = {
      {"temperature", {"H", "M", "L"}},
      {"fire", {"e1", "ne1"}},
      {"freeze", {"e2", "ne2"}},
  };
  // Reachable states in their canonical order: the fire event needs high
  // temperature, the freeze event needs low temperature.
  const std::vector<std::vector<int>> reachable = {
      {0, 0, 1},  // (H, e1,  ne2)
      {0, 1, 1},  // (H, ne1, ne2)
      {1, 1, 1},  // (M, ne1, ne2)
      {2, 1, 0},  // (L, ne1, e2)
      {2, 1, 1},  // (L, ne1, ne2)
  };
  Eigen::MatrixXd p1(5, 5);
  p1 << 0.1, 0.7, 0.1, 0.05, 0.05,   //
      0.4, 0.4, 0.1, 0.05, 0.05,     //
      0.05, 0.05, 0.8, 0.05, 0.05,   //
      0.05, 0.05, 0.1, 0.1, 0.7,     //
      0.05, 0.05, 0.1, 0.4, 0.4;
  return build_joint_space(std::move(components), reachable, std::move(p1));
}

JointSourceModel build_scenario_grid(int lx, int ly, BoundaryRule rule) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("grid dimensions must be >= 1");

  std::vector<ComponentSpec> components(2);
  components[0].name = "x";
  for (int x = 0; x < lx; ++x) components[0].values.push_back("x" + std::to_string(x));
  components[1].name = "y";
  for (int y = 0; y < ly; ++y) components[1].values.push_back("y" + std::to_string(y));

  // Default product ordering: x varies fastest, so state index = x + lx*y.
  const int n = lx * ly;
  Eigen::MatrixXd transition = Eigen::MatrixXd::Zero(n, n);
  const double stay = 0.5, horizontal = 0.2, vertical = 0.05;
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      const int i = x + lx * y;
      double removed = 0.0;
      transition(i, i) = stay;
      for (const auto& [dx, dy, p] : {std::tuple{-1, 0, horizontal},
                                      std::tuple{+1, 0, horizontal},
                                      std::tuple{0, -1, vertical},
                                      std::tuple{0, +1, vertical}}) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= lx || ny < 0 || ny >= ly) {
          removed += p;
        } else {
          transition(i, nx + lx * ny) = p;
        }
      }
      if (removed > 0.0) {
        if (rule == BoundaryRule::kStayAbsorbs) {
          transition(i, i) += removed;
        } else {
          transition.row(i) /= 1.0 - removed;
        }
      }
    }
  }
  return build_joint_space(std::move(components), std::nullopt, std::move(transition));
}

}  // namespace aoii
