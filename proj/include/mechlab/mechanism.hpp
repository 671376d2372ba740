#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mechlab/model.hpp"

namespace mechlab {

/// (alpha, beta) in [0,1]^2 selects a mechanism from the quantile family:
/// alpha picks each group's representative agent, beta picks the rank used
/// when aggregating the group representatives.
struct QuantileConfig {
  double alpha = 0.5;
  double beta = 0.5;
};

/// alpha* = beta* = (3 - sqrt 5)/2, the parameter equalizing the two
/// branches of the parametric distortion bound.
inline const double kCriticalQuantile = (3.0 - std::sqrt(5.0)) / 2.0;

/// Named presets, one per objective: aoa=(1/2,1/2), mom=(1,1),
/// moa=(alpha*,1), aom=(1,beta*).
QuantileConfig preset_config(const std::string& name);
QuantileConfig preset_config(ObjectiveKind kind);

struct GroupRepresentatives {
  int group = 0;
  int quantile_agent = 0;  // agent id of the selected quantile agent
  int y1 = 0;              // slot nearest to that agent
  int y2 = 0;              // slot nearest among the remaining slots
};

struct MechanismTrace {
  std::vector<GroupRepresentatives> reps;  // index d-1 holds group d
  std::vector<double> z_before;            // y1 values per group
  std::vector<double> z_after;             // after the w1 replacement
  double w1_value = 0.0;
  double w2_value = 0.0;
  int w1_slot = 0;
  int w2_slot = 0;
  int witness_group = 0;  // lowest group whose pair equals the output
};

struct MechanismResult {
  Placement placement;
  MechanismTrace trace;
};

/// Raised when the aggregation output matches no group's representative
/// pair, so no slot assignment is defensible. Carries the instance dump.
struct WitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Slot minimizing |x - value|; distance ties break toward the smaller
/// value, then the smaller slot id.
int nearest_candidate(Location x, const CandidateMultiset& cands);

/// nearest_candidate over the multiset with one slot removed.
int second_nearest(Location x, const CandidateMultiset& cands,
                   int excluded_slot);

/// 1-based rank max(1, ceil(q*count - 1e-12)) clamped to [1, count].
/// The guard keeps q*count from rounding up past a representable integer;
/// q=0 selects rank 1 by convention.
int quantile_index(double q, int count);

/// Step 1: per group, the ceil(alpha*n_d)-th leftmost agent and its two
/// nearest slots. Reads only the group's own agents.
std::vector<GroupRepresentatives> step1_representatives(const Instance& inst,
                                                        double alpha);

/// Step 2: z_d starts at the y1 values; w1 is the ceil(beta*k)-th leftmost
/// z value; every group whose y1 value equals w1 has z_d replaced by its y2
/// value; w2 is the same rank on the updated list. Slots are resolved via
/// the lowest-id group whose (y1,y2) values equal (w1,w2); throws
/// WitnessError when none matches.
MechanismResult step2_aggregate(const std::vector<GroupRepresentatives>& reps,
                                double beta, const CandidateMultiset& cands);

/// Full mechanism: step 1 then step 2. Deterministic. Asserts on every run
/// that each group's representative values are adjacent in the sorted
/// multiset (no candidate value strictly between them).
MechanismResult run_quantile(const Instance& inst, const QuantileConfig& cfg);

/// True when (v1,v2) occurs as a consecutive value pair of the sorted
/// multiset, i.e. no slot value lies strictly between them.
bool values_adjacent(const CandidateMultiset& cands, double v1, double v2);

}  // namespace mechlab
