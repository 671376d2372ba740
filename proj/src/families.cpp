#include "mechlab/families.hpp"

#include <limits>
#include <stdexcept>

namespace mechlab {

namespace {

Instance single_group(std::vector<double> cands, std::vector<double> xs) {
  std::vector<Agent> agents;
  int id = 1;
  for (double x : xs) agents.push_back({id++, 1, x});
  return Instance::make(std::move(cands), std::move(agents));
}

Instance two_groups(std::vector<double> cands, std::vector<double> g1,
                    std::vector<double> g2) {
  std::vector<Agent> agents;
  int id = 1;
  for (double x : g1) agents.push_back({id++, 1, x});
  for (double x : g2) agents.push_back({id++, 2, x});
  return Instance::make(std::move(cands), std::move(agents));
}

}  // namespace

FamilySpec build_family(ObjectiveKind kind, double theta) {
  if (!(theta > 0.0) || theta > kMaxFamilyTheta) {
    throw std::invalid_argument("theta must lie in (0, 0.01]");
  }
  FamilySpec spec;
  spec.objective = kind;
  spec.theta = theta;
  spec.preset = preset_config(kind);

  switch (kind) {
    case ObjectiveKind::AoA: {
      const std::vector<double> A = {0, 0, 1, 1};
      spec.target = 3.0;
      spec.instances = {
          {"I1", single_group(A, {0.0})},
          {"I2", single_group(A, {0.5 - theta})},
          {"I3", single_group(A, {1.0})},
          {"I4", single_group(A, {0.5 + theta})},
          {"I5", two_groups(A, {0.5 - theta}, {1.0})},
          {"I6", two_groups(A, {0.5 + theta}, {0.0})},
      };
      break;
    }
    case ObjectiveKind::MoM: {
      const std::vector<double> A = {0, 0, 2, 2, 4, 4};
      spec.target = 3.0;
      spec.instances = {
          {"I1", single_group(A, {-1.0, 1.0 - theta})},
          {"I2", single_group(A, {1.0 - theta, 1.0 - theta})},
          {"I3", single_group(A, {5.0, 3.0 + theta})},
          {"I4", single_group(A, {3.0 + theta, 3.0 + theta})},
          {"I5", two_groups(A, {1.0 - theta, 1.0 - theta},
                            {3.0 + theta, 3.0 + theta})},
      };
      break;
    }
    case ObjectiveKind::MoA: {
      const std::vector<double> A = {0, 0, 1, 1, 2, 2};
      const double h = 0.5 - theta;   // left block position
      const double t = 1.5 + theta;   // right block position
      spec.target = 3.5;
      spec.instances = {
          {"I1", single_group(A, {0, 0, 0, 0, 1})},
          {"I2", single_group(A, {h, 0, 0, 0, 1})},
          {"I3", single_group(A, {h, h, h, h, 1})},
          {"I4", single_group(A, {2, 2, 2, 2, 1})},
          {"I5", single_group(A, {t, t, t, t, 1})},
          {"I6", two_groups(A, {h, h, h, h, 1}, {t, t, t, t, 1})},
      };
      break;
    }
    case ObjectiveKind::AoM: {
      const std::vector<double> A = {0, 0, 1, 1};
      spec.target = 3.0;
      spec.instances = {
          {"I1", single_group(A, {0.5, 1.5})},
          {"I2", single_group(A, {0.5, 0.5 + theta})},
          {"I3", single_group(A, {0.0})},
          {"I4", single_group(A, {0.5 - theta})},
          {"I5", two_groups(A, {0.5 - theta}, {1.0})},
          {"I6", two_groups(A, {0.5, 0.5 + theta}, {0.0})},
      };
      break;
    }
  }
  return spec;
}

FamilyReplay replay_family(const FamilySpec& spec, const QuantileConfig& cfg) {
  FamilyReplay replay;
  replay.objective = spec.objective;
  replay.theta = spec.theta;
  replay.target = spec.target;
  bool first = true;
  for (const FamilyInstance& fam : spec.instances) {
    const DistortionReport rep =
        evaluate_instance(fam.instance, cfg, spec.objective);
    FamilyReplayRow row;
    row.instance_name = fam.name;
    row.mechanism_placement = rep.mechanism_placement;
    row.optimal_placement = rep.optimal_placement;
    row.mechanism_cost = rep.mechanism_cost;
    row.optimal_cost = rep.optimal_cost;
    row.ratio = rep.ratio;
    const double value = rep.ratio.infinite
                             ? std::numeric_limits<double>::infinity()
                             : rep.ratio.value;
    if (first || value > replay.max_ratio) {
      replay.max_ratio = value;
      replay.max_instance = fam.name;
      first = false;
    }
    replay.rows.push_back(std::move(row));
  }
  return replay;
}

}  // namespace mechlab
