#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mechlab/mechanism.hpp"
#include "mechlab/model.hpp"
#include "mechlab/oracle.hpp"

namespace mechlab {

/// Absolute gain above which a deviation counts as a strategyproofness
/// violation; separates genuine violations from float noise at O(1) scales.
inline constexpr double kStrategyproofEpsilon = 1e-9;

/// Tolerance added to distortion bounds before a scan flags a violation.
inline constexpr double kEnvelopeEpsilon = 1e-9;

struct DeviationFinding {
  Instance instance;  // the audited instance, kept for replay
  int agent_id = 0;
  double true_location = 0.0;
  double misreport = 0.0;
  double honest_cost = 0.0;
  double deviated_cost = 0.0;
  double gain = 0.0;  // honest - deviated; recorded only when > epsilon
};

enum class GeneratorKind { UniformRandom, Clustered, LowerBoundFamily, HillClimb };

const char* to_string(GeneratorKind g);
GeneratorKind generator_from_string(const std::string& name);

struct SizeRange {
  int lo = 0;
  int hi = 0;
};

struct ScanConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  GeneratorKind generator = GeneratorKind::UniformRandom;
  SizeRange agents{1, 12};
  SizeRange groups{1, 5};
  SizeRange candidates{2, 8};
  double theta = 1e-3;        // used by the lower-bound family generator
  int hill_climb_steps = 200; // used by the hill-climb generator
};

/// Finite probe set aimed at every report that can change the mechanism's
/// behavior (the output depends on the report only through its group rank
/// and nearest slots): candidate values, midpoints of consecutive distinct
/// candidate values +- eps, other agents' locations +- eps, the instance
/// extremes pushed out by one candidate-range span, and the agent's own
/// location. eps = 1e-6 * candidate range (1 if the range is zero).
/// Heuristic, not proven exhaustive over the reals; callers can add random
/// misreports as a safety net. Sorted, deduplicated.
std::vector<double> deviation_set(const Instance& inst, int agent_id);

/// Runs the mechanism on every deviation in deviation_set (plus
/// random_misreports uniform draws per agent when requested) and records
/// every gain above epsilon. Empty result = strategyproof on this instance.
std::vector<DeviationFinding> check_strategyproof(
    const Instance& inst, const QuantileConfig& cfg,
    double epsilon = kStrategyproofEpsilon, int random_misreports = 0,
    std::uint64_t seed = 0);

struct StructuralCheck {
  bool pass = false;
  std::string detail;  // filled on failure
  MechanismTrace trace;
};

/// Every group's representative values adjacent in the sorted multiset and
/// the output pair equal to some group's representative pair.
StructuralCheck check_witness_and_adjacency(const Instance& inst,
                                            const QuantileConfig& cfg);

/// P2: a group's step-1 representatives survive arbitrary rewrites of the
/// other groups (locations and sizes). P1: cloning a group's location
/// multiset into a fresh group yields identical representative values.
bool check_locality(const Instance& inst, const QuantileConfig& cfg,
                    int mutations, std::uint64_t seed);

struct ParametricBound {
  double parameter = 0.0;
  double bound = 0.0;
};

/// max(1 + 2(1-q)/q, 1 + 2/(1-q)); singular at q in {0,1} (rejected).
/// Bounds the MoA distortion of (q,1) and the AoM distortion of (1,q).
ParametricBound parametric_bound(double q);

struct ScanRow {
  int trial = 0;
  int n = 0;
  int k = 0;
  int m = 0;
  double mech_cost = 0.0;
  double opt_cost = 0.0;
  Ratio ratio;
};

struct RatioHistogram {
  // bins[i] counts ratios in [1 + i*width, 1 + (i+1)*width); the last bin
  // absorbs everything above, including infinite ratios.
  std::vector<long> bins;
  double width = 0.25;

  void add(const Ratio& r);
  long total() const;
};

struct ScanReport {
  std::vector<ScanRow> rows;  // one per trial, in trial order
  RatioHistogram histogram;
  int worst_trial = -1;
  DistortionReport worst;
};

/// Seeded scan: per-trial streams derived from (seed, trial), max-ratio
/// reduction tie-broken by lowest trial, so reports are identical for any
/// worker count.
ScanReport distortion_scan(const ScanConfig& scan, const QuantileConfig& cfg,
                           ObjectiveKind kind);

/// Local search for bad instances: perturb one agent location or one
/// candidate value, keep strictly improving moves, halve the step scale
/// after every 50 rejected moves.
DistortionReport hill_climb_adversary(const Instance& start,
                                      const QuantileConfig& cfg,
                                      ObjectiveKind kind, int steps,
                                      std::uint64_t seed);

/// Deterministic instance generation used by scans; exposed for tests and
/// the acceptance suite. LowerBoundFamily cycles the objective's lower-bound
/// instances at scan.theta; HillClimb starts are uniform-random.
Instance random_instance(const ScanConfig& scan, ObjectiveKind kind,
                         int trial);

}  // namespace mechlab
