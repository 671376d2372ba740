#pragma once

#include <vector>

#include "mechlab/audit.hpp"
#include "mechlab/model.hpp"
#include "mechlab/rng.hpp"

namespace mechlab::testing {

inline Instance single_group(std::vector<double> cands,
                             std::vector<double> xs) {
  std::vector<Agent> agents;
  int id = 1;
  for (double x : xs) agents.push_back({id++, 1, x});
  return Instance::make(std::move(cands), std::move(agents));
}

inline Instance two_groups(std::vector<double> cands, std::vector<double> g1,
                           std::vector<double> g2) {
  std::vector<Agent> agents;
  int id = 1;
  for (double x : g1) agents.push_back({id++, 1, x});
  for (double x : g2) agents.push_back({id++, 2, x});
  return Instance::make(std::move(cands), std::move(agents));
}

/// Seeded random instances for property tests; same shape as the audit
/// module's uniform generator but produced independently of it.
inline Instance random_instance_for_tests(Rng& rng, int max_n = 10,
                                          int max_k = 4, int max_m = 7) {
  const int n = rng.uniform_int(1, max_n);
  const int k = std::min(n, rng.uniform_int(1, max_k));
  const int m = rng.uniform_int(2, max_m);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) {
    const int group = i < k ? i + 1 : rng.uniform_int(1, k);
    agents.push_back({i + 1, group, rng.uniform(-5.0, 5.0)});
  }
  std::vector<double> cands;
  for (int j = 0; j < m; ++j) cands.push_back(rng.uniform(-5.0, 5.0));
  return Instance::make(std::move(cands), std::move(agents));
}

/// Coordinates on a coarse grid so exact distance ties and duplicate
/// candidate values are common; stresses the deterministic tie-breaks.
inline Instance gridded_instance_for_tests(Rng& rng) {
  const int n = rng.uniform_int(1, 10);
  const int k = std::min(n, rng.uniform_int(1, 4));
  const int m = rng.uniform_int(2, 7);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) {
    const int group = i < k ? i + 1 : rng.uniform_int(1, k);
    agents.push_back({i + 1, group, rng.uniform_int(-8, 8) * 0.5});
  }
  std::vector<double> cands;
  for (int j = 0; j < m; ++j) cands.push_back(rng.uniform_int(-6, 6) * 1.0);
  return Instance::make(std::move(cands), std::move(agents));
}

/// Naive recomputation of the four objectives, kept independent of
/// eval_objective: group agents by id scan, average/max by direct loops.
inline double naive_objective(ObjectiveKind kind, const Instance& inst,
                              const Placement& p) {
  const int k = inst.group_count();
  std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
  std::vector<double> maxes(static_cast<std::size_t>(k), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (const Agent& a : inst.agents) {
    const double c1 = a.location > p.value_a ? a.location - p.value_a
                                             : p.value_a - a.location;
    const double c2 = a.location > p.value_b ? a.location - p.value_b
                                             : p.value_b - a.location;
    const double c = c1 > c2 ? c1 : c2;
    auto g = static_cast<std::size_t>(a.group - 1);
    sums[g] += c;
    counts[g]++;
    if (c > maxes[g]) maxes[g] = c;
  }
  double acc = 0.0;
  for (int d = 0; d < k; ++d) {
    auto g = static_cast<std::size_t>(d);
    const double avg = sums[g] / counts[g];
    switch (kind) {
      case ObjectiveKind::AoA: acc += avg / k; break;
      case ObjectiveKind::MoM: acc = std::max(acc, maxes[g]); break;
      case ObjectiveKind::MoA: acc = std::max(acc, avg); break;
      case ObjectiveKind::AoM: acc += maxes[g] / k; break;
    }
  }
  return acc;
}

}  // namespace mechlab::testing
