#pragma once

#include "aoii/source_model.hpp"

namespace aoii {

// Correlated temperature/fire/freeze source: three sensors (temperature
// H/M/L, fire event, freeze event), five reachable joint states since each
// event can only fire at its temperature extreme.
JointSourceModel build_scenario_fire();

// What happens to the probability of moves that would leave the grid.
enum class BoundaryRule {
  kRenormalizeRow,  // zero infeasible moves, divide the row by its sum
  kStayAbsorbs,     // add the removed mass to the stay probability
};

// Random walk on an lx-by-ly grid observed by an x sensor and a y sensor.
// Interior cells: stay 0.5, left/right 0.2 each, down/up 0.05 each.
JointSourceModel build_scenario_grid(int lx, int ly,
                                     BoundaryRule rule = BoundaryRule::kRenormalizeRow);

}  // namespace aoii
