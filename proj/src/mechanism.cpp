#include "mechlab/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mechlab {

QuantileConfig preset_config(const std::string& name) {
  if (name == "aoa") return {0.5, 0.5};
  if (name == "mom") return {1.0, 1.0};
  if (name == "moa") return {kCriticalQuantile, 1.0};
  if (name == "aom") return {1.0, kCriticalQuantile};
  throw std::invalid_argument("unknown preset: " + name);
}

QuantileConfig preset_config(ObjectiveKind kind) {
  return preset_config(std::string(to_string(kind)));
}

int nearest_candidate(Location x, const CandidateMultiset& cands) {
  if (cands.size() == 0) {
    throw std::invalid_argument("nearest_candidate on empty multiset");
  }
  // Slots are sorted by (value, id), so the first strict minimizer is the
  // smallest-value then smallest-id one.
  int best = cands.slots.front().id;
  double best_dist = std::fabs(x - cands.slots.front().value);
  for (const CandidateSlot& s : cands.slots) {
    const double d = std::fabs(x - s.value);
    if (d < best_dist) {
      best_dist = d;
      best = s.id;
    }
  }
  return best;
}

int second_nearest(Location x, const CandidateMultiset& cands,
                   int excluded_slot) {
  if (cands.size() < 2) {
    throw std::invalid_argument("second_nearest needs at least two slots");
  }
  int best = -1;
  double best_dist = 0.0;
  for (const CandidateSlot& s : cands.slots) {
    if (s.id == excluded_slot) continue;
    const double d = std::fabs(x - s.value);
    if (best < 0 || d < best_dist) {
      best_dist = d;
      best = s.id;
    }
  }
  return best;
}

int quantile_index(double q, int count) {
  const int raw = static_cast<int>(std::ceil(q * count - 1e-12));
  return std::clamp(raw, 1, count);
}

std::vector<GroupRepresentatives> step1_representatives(const Instance& inst,
                                                        double alpha) {
  const auto groups = inst.groups_sorted();
  std::vector<GroupRepresentatives> reps;
  reps.reserve(groups.size());
  for (std::size_t d = 0; d < groups.size(); ++d) {
    const auto& members = groups[d];
    if (members.empty()) {
      throw std::invalid_argument("group " + std::to_string(d + 1) +
                                  " is empty");
    }
    const int rank = quantile_index(alpha, static_cast<int>(members.size()));
    const Agent& picked =
        inst.agents[static_cast<std::size_t>(members[static_cast<std::size_t>(rank - 1)])];
    GroupRepresentatives r;
    r.group = static_cast<int>(d + 1);
    r.quantile_agent = picked.id;
    r.y1 = nearest_candidate(picked.location, inst.candidates);
    r.y2 = second_nearest(picked.location, inst.candidates, r.y1);
    reps.push_back(r);
  }
  return reps;
}

bool values_adjacent(const CandidateMultiset& cands, double v1, double v2) {
  const double lo = std::min(v1, v2);
  const double hi = std::max(v1, v2);
  const auto& slots = cands.slots;
  for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
    if (slots[i].value == lo && slots[i + 1].value == hi) return true;
  }
  return false;
}

namespace {

// rank-th leftmost value; equal values ordered by group id (1-based order
// of the reps vector), which never changes the selected value itself.
double kth_leftmost(const std::vector<double>& z, int rank) {
  std::vector<int> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return z[static_cast<std::size_t>(a)] < z[static_cast<std::size_t>(b)];
  });
  return z[static_cast<std::size_t>(order[static_cast<std::size_t>(rank - 1)])];
}

}  // namespace

MechanismResult step2_aggregate(const std::vector<GroupRepresentatives>& reps,
                                double beta, const CandidateMultiset& cands) {
  if (reps.empty()) {
    throw std::invalid_argument("step2 needs at least one group");
  }
  const int k = static_cast<int>(reps.size());
  MechanismTrace trace;
  trace.reps = reps;

  trace.z_before.reserve(reps.size());
  for (const GroupRepresentatives& r : reps) {
    trace.z_before.push_back(cands.value_of(r.y1));
  }

  const int rank = quantile_index(beta, k);
  trace.w1_value = kth_leftmost(trace.z_before, rank);

  trace.z_after = trace.z_before;
  for (std::size_t d = 0; d < reps.size(); ++d) {
    if (trace.z_before[d] == trace.w1_value) {
      trace.z_after[d] = cands.value_of(reps[d].y2);
    }
  }
  trace.w2_value = kth_leftmost(trace.z_after, rank);

  trace.witness_group = 0;
  for (const GroupRepresentatives& r : reps) {
    if (cands.value_of(r.y1) == trace.w1_value &&
        cands.value_of(r.y2) == trace.w2_value) {
      trace.witness_group = r.group;
      trace.w1_slot = r.y1;
      trace.w2_slot = r.y2;
      break;
    }
  }
  if (trace.witness_group == 0) {
    throw WitnessError("non-witnessable output: no group's representative "
                       "pair matches the aggregate values");
  }

  MechanismResult out;
  out.placement = make_placement(cands, trace.w1_slot, trace.w2_slot);
  out.trace = std::move(trace);
  return out;
}

MechanismResult run_quantile(const Instance& inst, const QuantileConfig& cfg) {
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0 || cfg.beta < 0.0 || cfg.beta > 1.0) {
    throw std::invalid_argument("quantile config outside [0,1]^2");
  }
  const auto reps = step1_representatives(inst, cfg.alpha);
  for (const GroupRepresentatives& r : reps) {
    if (r.y1 == r.y2 ||
        !values_adjacent(inst.candidates, inst.candidates.value_of(r.y1),
                         inst.candidates.value_of(r.y2))) {
      throw std::logic_error(
          "representative pair not adjacent in the sorted multiset for group " +
          std::to_string(r.group) + " on " + debug_string(inst));
    }
  }
  try {
    return step2_aggregate(reps, cfg.beta, inst.candidates);
  } catch (const WitnessError&) {
    throw WitnessError("non-witnessable output on " + debug_string(inst));
  }
}

}  // namespace mechlab
