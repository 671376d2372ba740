#pragma once

#include <utility>
#include <vector>

#include "mechlab/mechanism.hpp"
#include "mechlab/model.hpp"

namespace mechlab {

struct OptimalResult {
  Placement placement;
  double cost = 0.0;
  int ties = 0;  // slot pairs achieving the optimum (exact equality)
};

/// All C(m,2) unordered slot pairs in lexicographic order.
std::vector<std::pair<int, int>> all_slot_pairs(int m);

/// Exhaustive minimum over slot pairs; ties resolved by lexicographic
/// (slot_a, slot_b). O(m^2 * n).
OptimalResult optimal_placement(const Instance& inst, ObjectiveKind kind);

/// Distortion value with an explicit infinity flag for opt = 0 < mech.
struct Ratio {
  double value = 1.0;
  bool infinite = false;

  bool worse_than(const Ratio& other) const {
    if (infinite != other.infinite) return infinite;
    return value > other.value;
  }
  bool exceeds(double bound) const { return infinite || value > bound; }
};

/// opt > 0 -> mech/opt; both zero -> 1; opt = 0 < mech -> infinite.
/// Negative inputs are rejected.
Ratio distortion_of(double mech_cost, double opt_cost);

struct DistortionReport {
  Instance instance;
  double mechanism_cost = 0.0;
  double optimal_cost = 0.0;
  Ratio ratio;
  Placement mechanism_placement;
  Placement optimal_placement;
};

/// Mechanism run + oracle on one instance.
DistortionReport evaluate_instance(const Instance& inst,
                                   const QuantileConfig& cfg,
                                   ObjectiveKind kind);

}  // namespace mechlab
