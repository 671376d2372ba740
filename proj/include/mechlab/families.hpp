#pragma once

#include <string>
#include <vector>

#include "mechlab/mechanism.hpp"
#include "mechlab/model.hpp"
#include "mechlab/oracle.hpp"

namespace mechlab {

/// Largest theta accepted by the family builders; keeps every inequality
/// the constructions rely on comfortably satisfied.
inline constexpr double kMaxFamilyTheta = 0.01;

struct FamilyInstance {
  std::string name;  // I1..I6
  Instance instance;
};

/// One objective's lower-bound construction, parameterized by theta.
struct FamilySpec {
  ObjectiveKind objective{};
  double theta = 0.0;
  std::vector<FamilyInstance> instances;
  QuantileConfig preset;  // the headline mechanism for this objective
  double target = 0.0;    // limiting ratio as theta -> 0
};

/// AoA: A={0,0,1,1}. MoM: A={0,0,2,2,4,4}. MoA: A={0,0,1,1,2,2}.
/// AoM: A={0,0,1,1}. Throws unless 0 < theta <= kMaxFamilyTheta.
FamilySpec build_family(ObjectiveKind kind, double theta);

struct FamilyReplayRow {
  std::string instance_name;
  Placement mechanism_placement;
  Placement optimal_placement;
  double mechanism_cost = 0.0;
  double optimal_cost = 0.0;
  Ratio ratio;
};

struct FamilyReplay {
  ObjectiveKind objective{};
  double theta = 0.0;
  double target = 0.0;
  std::vector<FamilyReplayRow> rows;
  double max_ratio = 0.0;
  std::string max_instance;
};

/// Runs the configured mechanism and the oracle on every family instance.
/// For the matching preset the family max approaches the target as
/// theta -> 0.
FamilyReplay replay_family(const FamilySpec& spec, const QuantileConfig& cfg);

}  // namespace mechlab
