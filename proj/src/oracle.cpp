#include "mechlab/oracle.hpp"

#include <stdexcept>

namespace mechlab {

std::vector<std::pair<int, int>> all_slot_pairs(int m) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

OptimalResult optimal_placement(const Instance& inst, ObjectiveKind kind) {
  const int m = inst.candidates.size();
  if (m < 2) {
    throw std::invalid_argument("optimal_placement needs at least two slots");
  }
  OptimalResult best;
  bool first = true;
  for (const auto& [a, b] : all_slot_pairs(m)) {
    const Placement p = make_placement(inst.candidates, a, b);
    const double cost = eval_objective(kind, inst, p);
    if (first || cost < best.cost) {
      best.placement = p;
      best.cost = cost;
      best.ties = 1;
      first = false;
    } else if (cost == best.cost) {
      best.ties++;
    }
  }
  return best;
}

Ratio distortion_of(double mech_cost, double opt_cost) {
  if (mech_cost < 0.0 || opt_cost < 0.0) {
    throw std::invalid_argument("costs must be nonnegative");
  }
  Ratio r;
  if (opt_cost > 0.0) {
    r.value = mech_cost / opt_cost;
  } else if (mech_cost == 0.0) {
    r.value = 1.0;  // degenerate convention
  } else {
    r.infinite = true;
    r.value = 0.0;
  }
  return r;
}

DistortionReport evaluate_instance(const Instance& inst,
                                   const QuantileConfig& cfg,
                                   ObjectiveKind kind) {
  DistortionReport report;
  report.instance = inst;
  const MechanismResult mech = run_quantile(inst, cfg);
  const OptimalResult opt = optimal_placement(inst, kind);
  report.mechanism_placement = mech.placement;
  report.optimal_placement = opt.placement;
  report.mechanism_cost = eval_objective(kind, inst, mech.placement);
  report.optimal_cost = opt.cost;
  report.ratio = distortion_of(report.mechanism_cost, report.optimal_cost);
  return report;
}

}  // namespace mechlab
