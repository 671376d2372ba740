#pragma once

#include <string>
#include <vector>

namespace mechlab {

/// Line coordinate. Finite by contract; validate_instance reports violations.
using Location = double;

struct Agent {
  int id = 0;
  int group = 0;  // 1..k after normalization
  Location location = 0.0;
};

struct CandidateSlot {
  int id = 0;  // sorted position, assigned at construction
  double value = 0.0;
};

/// Allowed facility sites. Duplicate values occupy distinct slots and each
/// slot hosts at most one facility, so a pair like (0,0) is legal whenever
/// the multiset carries the value twice.
struct CandidateMultiset {
  std::vector<CandidateSlot> slots;  // ascending by (value, id)

  static CandidateMultiset from_values(std::vector<double> values);

  int size() const { return static_cast<int>(slots.size()); }
  bool contains_slot(int slot_id) const {
    return slot_id >= 0 && slot_id < size();
  }
  double value_of(int slot_id) const;
  double min_value() const;
  double max_value() const;
};

struct Instance {
  std::vector<Agent> agents;
  CandidateMultiset candidates;

  /// Normalizing factory: sorts candidates, assigns slot ids by sorted
  /// position, and maps group ids to 1..k in ascending original order.
  /// Permissive: structural problems are reported by validate_instance.
  static Instance make(std::vector<double> candidate_values,
                       std::vector<Agent> raw_agents);

  int agent_count() const { return static_cast<int>(agents.size()); }
  int group_count() const;  // max group id; equals k for valid instances

  /// Agent indices per group (index d-1 holds group d), each ordered by
  /// (location, id) so "j-th leftmost" is deterministic under ties.
  std::vector<std::vector<int>> groups_sorted() const;

  const Agent* find_agent(int agent_id) const;
};

/// Unordered pair of distinct slots, canonicalized slot_a < slot_b.
/// Values may coincide when the multiset has duplicates.
struct Placement {
  int slot_a = 0;
  int slot_b = 0;
  double value_a = 0.0;
  double value_b = 0.0;
};

Placement make_placement(const CandidateMultiset& cands, int slot1, int slot2);

enum class ObjectiveKind { AoA, MoM, MoA, AoM };

const char* to_string(ObjectiveKind kind);
ObjectiveKind objective_from_string(const std::string& name);

/// Distance from x to the farther of the two facilities.
double individual_cost(Location x, const Placement& p);

/// AoA: mean over groups of the group mean cost.
/// MoM: max cost over all agents.
/// MoA: max over groups of the group mean cost.
/// AoM: mean over groups of the group max cost.
/// Throws std::invalid_argument if p's slots are not drawn from
/// inst.candidates.
double eval_objective(ObjectiveKind kind, const Instance& inst,
                      const Placement& p);

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks all type invariants: finite locations, unique agent ids, groups
/// contiguous 1..k and nonempty, at least one agent, at least two slots,
/// slots sorted with unique ids.
ValidationReport validate_instance(const Instance& inst);

/// Compact one-line rendering for error messages and logs.
std::string debug_string(const Instance& inst);

}  // namespace mechlab
