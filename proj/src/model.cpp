#include "mechlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace mechlab {

CandidateMultiset CandidateMultiset::from_values(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  CandidateMultiset out;
  out.slots.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.slots.push_back({static_cast<int>(i), values[i]});
  }
  return out;
}

double CandidateMultiset::value_of(int slot_id) const {
  if (!contains_slot(slot_id)) {
    throw std::invalid_argument("slot id " + std::to_string(slot_id) +
                                " not in candidate multiset");
  }
  return slots[static_cast<std::size_t>(slot_id)].value;
}

double CandidateMultiset::min_value() const {
  if (slots.empty()) throw std::invalid_argument("empty candidate multiset");
  return slots.front().value;
}

double CandidateMultiset::max_value() const {
  if (slots.empty()) throw std::invalid_argument("empty candidate multiset");
  return slots.back().value;
}

Instance Instance::make(std::vector<double> candidate_values,
                        std::vector<Agent> raw_agents) {
  Instance inst;
  inst.candidates = CandidateMultiset::from_values(std::move(candidate_values));
  // Group ids map to 1..k in ascending original order.
  std::map<int, int> remap;
  for (const Agent& a : raw_agents) remap[a.group] = 0;
  int next = 1;
  for (auto& [orig, norm] : remap) norm = next++;
  inst.agents = std::move(raw_agents);
  for (Agent& a : inst.agents) a.group = remap[a.group];
  return inst;
}

int Instance::group_count() const {
  int k = 0;
  for (const Agent& a : agents) k = std::max(k, a.group);
  return k;
}

std::vector<std::vector<int>> Instance::groups_sorted() const {
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(group_count()));
  for (int i = 0; i < agent_count(); ++i) {
    const int g = agents[static_cast<std::size_t>(i)].group;
    if (g >= 1 && g <= group_count()) {
      groups[static_cast<std::size_t>(g - 1)].push_back(i);
    }
  }
  for (auto& members : groups) {
    std::sort(members.begin(), members.end(), [&](int lhs, int rhs) {
      const Agent& a = agents[static_cast<std::size_t>(lhs)];
      const Agent& b = agents[static_cast<std::size_t>(rhs)];
      if (a.location != b.location) return a.location < b.location;
      return a.id < b.id;
    });
  }
  return groups;
}

const Agent* Instance::find_agent(int agent_id) const {
  for (const Agent& a : agents) {
    if (a.id == agent_id) return &a;
  }
  return nullptr;
}

Placement make_placement(const CandidateMultiset& cands, int slot1,
                         int slot2) {
  if (slot1 == slot2) {
    throw std::invalid_argument("placement needs two distinct slots");
  }
  if (!cands.contains_slot(slot1) || !cands.contains_slot(slot2)) {
    throw std::invalid_argument("placement slot not in candidate multiset");
  }
  Placement p;
  p.slot_a = std::min(slot1, slot2);
  p.slot_b = std::max(slot1, slot2);
  p.value_a = cands.value_of(p.slot_a);
  p.value_b = cands.value_of(p.slot_b);
  return p;
}

const char* to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::AoA: return "aoa";
    case ObjectiveKind::MoM: return "mom";
    case ObjectiveKind::MoA: return "moa";
    case ObjectiveKind::AoM: return "aom";
  }
  return "?";
}

ObjectiveKind objective_from_string(const std::string& name) {
  if (name == "aoa") return ObjectiveKind::AoA;
  if (name == "mom") return ObjectiveKind::MoM;
  if (name == "moa") return ObjectiveKind::MoA;
  if (name == "aom") return ObjectiveKind::AoM;
  throw std::invalid_argument("unknown objective: " + name);
}

double individual_cost(Location x, const Placement& p) {
  return std::max(std::fabs(x - p.value_a), std::fabs(x - p.value_b));
}

namespace {

void require_placement_in(const Instance& inst, const Placement& p) {
  const CandidateMultiset& c = inst.candidates;
  if (!c.contains_slot(p.slot_a) || !c.contains_slot(p.slot_b) ||
      p.slot_a == p.slot_b || c.value_of(p.slot_a) != p.value_a ||
      c.value_of(p.slot_b) != p.value_b) {
    throw std::invalid_argument(
        "placement slots are not drawn from the instance's multiset");
  }
}

}  // namespace

double eval_objective(ObjectiveKind kind, const Instance& inst,
                      const Placement& p) {
  require_placement_in(inst, p);
  const auto groups = inst.groups_sorted();
  const double k = static_cast<double>(groups.size());

  double agg = 0.0;  // running sum or max across groups
  for (const auto& members : groups) {
    double sum = 0.0;
    double grp_max = 0.0;
    for (int idx : members) {
      const double c =
          individual_cost(inst.agents[static_cast<std::size_t>(idx)].location, p);
      sum += c;
      grp_max = std::max(grp_max, c);
    }
    const double avg = members.empty() ? 0.0
                                       : sum / static_cast<double>(members.size());
    switch (kind) {
      case ObjectiveKind::AoA: agg += avg; break;
      case ObjectiveKind::MoM: agg = std::max(agg, grp_max); break;
      case ObjectiveKind::MoA: agg = std::max(agg, avg); break;
      case ObjectiveKind::AoM: agg += grp_max; break;
    }
  }
  if (kind == ObjectiveKind::AoA || kind == ObjectiveKind::AoM) {
    return k > 0 ? agg / k : 0.0;
  }
  return agg;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto add = [&](const std::string& code, const std::string& msg) {
    report.violations.push_back({code, msg});
  };

  if (inst.agents.empty()) add("no-agents", "instance has no agents");
  if (inst.candidates.size() < 2) {
    add("too-few-candidates", "fewer than two candidate slots");
  }

  std::set<int> ids;
  for (const Agent& a : inst.agents) {
    if (!std::isfinite(a.location)) {
      add("non-finite-location",
          "agent " + std::to_string(a.id) + " has a non-finite location");
    }
    if (!ids.insert(a.id).second) {
      add("duplicate-agent-id", "agent id " + std::to_string(a.id) +
                                    " appears more than once");
    }
    if (a.group < 1) {
      add("bad-group-id", "agent " + std::to_string(a.id) +
                              " has group id " + std::to_string(a.group) +
                              " (groups are 1..k)");
    }
  }

  const int k = inst.group_count();
  std::vector<int> counts(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (const Agent& a : inst.agents) {
    if (a.group >= 1 && a.group <= k) counts[static_cast<std::size_t>(a.group - 1)]++;
  }
  for (int d = 1; d <= k; ++d) {
    if (counts[static_cast<std::size_t>(d - 1)] == 0) {
      add("empty-group", "group " + std::to_string(d) + " has no agents");
    }
  }

  const auto& slots = inst.candidates.slots;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!std::isfinite(slots[i].value)) {
      add("non-finite-candidate", "candidate slot " + std::to_string(slots[i].id) +
                                      " has a non-finite value");
    }
    if (i > 0) {
      const bool ordered = slots[i - 1].value < slots[i].value ||
                           (slots[i - 1].value == slots[i].value &&
                            slots[i - 1].id < slots[i].id);
      if (!ordered) add("unsorted-candidates", "candidate slots out of order");
    }
  }
  std::set<int> slot_ids;
  for (const CandidateSlot& s : slots) {
    if (!slot_ids.insert(s.id).second) {
      add("duplicate-slot-id", "slot id " + std::to_string(s.id) + " repeats");
    }
  }
  return report;
}

std::string debug_string(const Instance& inst) {
  std::string out = "candidates=[";
  char buf[64];
  for (std::size_t i = 0; i < inst.candidates.slots.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "",
                  inst.candidates.slots[i].value);
    out += buf;
  }
  out += "] agents=[";
  for (std::size_t i = 0; i < inst.agents.size(); ++i) {
    const Agent& a = inst.agents[i];
    std::snprintf(buf, sizeof(buf), "%s(id=%d,g=%d,x=%.17g)", i ? "," : "",
                  a.id, a.group, a.location);
    out += buf;
  }
  out += "]";
  return out;
}

}  // namespace mechlab
