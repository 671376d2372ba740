#include "mechlab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mechlab/families.hpp"
#include "mechlab/parallel.hpp"
#include "mechlab/rng.hpp"

namespace mechlab {

const char* to_string(GeneratorKind g) {
  switch (g) {
    case GeneratorKind::UniformRandom: return "uniform-random";
    case GeneratorKind::Clustered: return "clustered";
    case GeneratorKind::LowerBoundFamily: return "family";
    case GeneratorKind::HillClimb: return "hill-climb";
  }
  return "?";
}

GeneratorKind generator_from_string(const std::string& name) {
  if (name == "uniform-random") return GeneratorKind::UniformRandom;
  if (name == "clustered") return GeneratorKind::Clustered;
  if (name == "family") return GeneratorKind::LowerBoundFamily;
  if (name == "hill-climb") return GeneratorKind::HillClimb;
  throw std::invalid_argument("unknown generator: " + name);
}

std::vector<double> deviation_set(const Instance& inst, int agent_id) {
  const Agent* self = inst.find_agent(agent_id);
  if (self == nullptr) {
    throw std::invalid_argument("no agent with id " + std::to_string(agent_id));
  }
  const auto& slots = inst.candidates.slots;
  const double range = slots.empty()
                           ? 0.0
                           : inst.candidates.max_value() - inst.candidates.min_value();
  const double span = range > 0.0 ? range : 1.0;
  const double eps = 1e-6 * span;

  std::vector<double> probes;
  for (const CandidateSlot& s : slots) probes.push_back(s.value);
  for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
    if (slots[i].value == slots[i + 1].value) continue;
    const double mid = 0.5 * (slots[i].value + slots[i + 1].value);
    probes.push_back(mid - eps);
    probes.push_back(mid + eps);
  }
  for (const Agent& a : inst.agents) {
    if (a.id == agent_id) continue;
    probes.push_back(a.location - eps);
    probes.push_back(a.location + eps);
  }
  double lo = self->location;
  double hi = self->location;
  for (const Agent& a : inst.agents) {
    lo = std::min(lo, a.location);
    hi = std::max(hi, a.location);
  }
  for (const CandidateSlot& s : slots) {
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
  }
  probes.push_back(lo - span);
  probes.push_back(hi + span);
  probes.push_back(self->location);  // identity probe

  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  return probes;
}

namespace {

Instance with_report(const Instance& inst, int agent_id, double report) {
  Instance out = inst;
  for (Agent& a : out.agents) {
    if (a.id == agent_id) {
      a.location = report;
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<DeviationFinding> check_strategyproof(const Instance& inst,
                                                  const QuantileConfig& cfg,
                                                  double epsilon,
                                                  int random_misreports,
                                                  std::uint64_t seed) {
  std::vector<DeviationFinding> findings;
  const MechanismResult honest = run_quantile(inst, cfg);

  const double range =
      inst.candidates.max_value() - inst.candidates.min_value();
  const double span = range > 0.0 ? range : 1.0;

  for (const Agent& agent : inst.agents) {
    const double honest_cost = individual_cost(agent.location, honest.placement);

    std::vector<double> probes = deviation_set(inst, agent.id);
    if (random_misreports > 0) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(agent.id)));
      const double lo = inst.candidates.min_value() - span;
      const double hi = inst.candidates.max_value() + span;
      for (int i = 0; i < random_misreports; ++i) {
        probes.push_back(rng.uniform(lo, hi));
      }
    }

    for (double report : probes) {
      const Instance deviated = with_report(inst, agent.id, report);
      const MechanismResult res = run_quantile(deviated, cfg);
      const double deviated_cost =
          individual_cost(agent.location, res.placement);
      const double gain = honest_cost - deviated_cost;
      if (gain > epsilon) {
        findings.push_back({inst, agent.id, agent.location, report,
                            honest_cost, deviated_cost, gain});
      }
    }
  }
  return findings;
}

StructuralCheck check_witness_and_adjacency(const Instance& inst,
                                            const QuantileConfig& cfg) {
  StructuralCheck check;
  // run_quantile asserts adjacency and witness existence itself; recompute
  // them here so a failure reports detail instead of an exception.
  const auto reps = step1_representatives(inst, cfg.alpha);
  for (const GroupRepresentatives& r : reps) {
    const double v1 = inst.candidates.value_of(r.y1);
    const double v2 = inst.candidates.value_of(r.y2);
    if (r.y1 == r.y2 || !values_adjacent(inst.candidates, v1, v2)) {
      check.detail = "group " + std::to_string(r.group) +
                     " representatives not adjacent";
      return check;
    }
  }
  try {
    MechanismResult res = step2_aggregate(reps, cfg.beta, inst.candidates);
    check.trace = std::move(res.trace);
  } catch (const WitnessError& err) {
    check.detail = err.what();
    return check;
  }
  check.pass = true;
  return check;
}

namespace {

bool same_representatives(const GroupRepresentatives& a,
                          const GroupRepresentatives& b) {
  return a.y1 == b.y1 && a.y2 == b.y2;
}

}  // namespace

bool check_locality(const Instance& inst, const QuantileConfig& cfg,
                    int mutations, std::uint64_t seed) {
  const int k = inst.group_count();
  const auto base = step1_representatives(inst, cfg.alpha);

  int max_id = 0;
  for (const Agent& a : inst.agents) max_id = std::max(max_id, a.id);

  // P2: rewrite every other group (locations and sizes) and require the
  // protected group's representatives to survive untouched.
  if (k >= 2) {
    for (int d = 1; d <= k; ++d) {
      for (int round = 0; round < mutations; ++round) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(d) * 1000 +
                                      static_cast<std::uint64_t>(round)));
        std::vector<Agent> agents;
        for (const Agent& a : inst.agents) {
          if (a.group == d) agents.push_back(a);
        }
        int next_id = max_id + 1;
        for (int g = 1; g <= k; ++g) {
          if (g == d) continue;
          const int size = rng.uniform_int(1, 6);
          for (int i = 0; i < size; ++i) {
            agents.push_back({next_id++, g, rng.uniform(-5.0, 5.0)});
          }
        }
        std::vector<double> cand_values;
        for (const CandidateSlot& s : inst.candidates.slots) {
          cand_values.push_back(s.value);
        }
        const Instance mutated =
            Instance::make(std::move(cand_values), std::move(agents));
        const auto reps = step1_representatives(mutated, cfg.alpha);
        if (!same_representatives(reps[static_cast<std::size_t>(d - 1)],
                                  base[static_cast<std::size_t>(d - 1)])) {
          return false;
        }
      }
    }
  }

  // P1: clone each group's location multiset into a fresh group; the clone
  // must receive the same representative slots.
  for (int d = 1; d <= k; ++d) {
    std::vector<Agent> agents = inst.agents;
    int next_id = max_id + 1;
    for (const Agent& a : inst.agents) {
      if (a.group == d) agents.push_back({next_id++, k + 1, a.location});
    }
    std::vector<double> cand_values;
    for (const CandidateSlot& s : inst.candidates.slots) {
      cand_values.push_back(s.value);
    }
    const Instance cloned =
        Instance::make(std::move(cand_values), std::move(agents));
    const auto reps = step1_representatives(cloned, cfg.alpha);
    if (!same_representatives(reps[static_cast<std::size_t>(d - 1)],
                              reps[static_cast<std::size_t>(k)]) ||
        !same_representatives(reps[static_cast<std::size_t>(d - 1)],
                              base[static_cast<std::size_t>(d - 1)])) {
      return false;
    }
  }
  return true;
}

ParametricBound parametric_bound(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw std::invalid_argument("parametric bound is singular at q in {0,1}");
  }
  ParametricBound b;
  b.parameter = q;
  b.bound = std::max(1.0 + 2.0 * (1.0 - q) / q, 1.0 + 2.0 / (1.0 - q));
  return b;
}

void RatioHistogram::add(const Ratio& r) {
  if (bins.empty()) bins.assign(21, 0);
  std::size_t idx;
  if (r.infinite) {
    idx = bins.size() - 1;
  } else {
    const double offset = (r.value - 1.0) / width;
    idx = offset < 0.0 ? 0 : static_cast<std::size_t>(offset);
    idx = std::min(idx, bins.size() - 1);
  }
  bins[idx]++;
}

long RatioHistogram::total() const {
  long t = 0;
  for (long b : bins) t += b;
  return t;
}

namespace {

Instance uniform_random_instance(const ScanConfig& scan, Rng& rng) {
  const int n = rng.uniform_int(scan.agents.lo, scan.agents.hi);
  const int k = std::min(n, rng.uniform_int(scan.groups.lo, scan.groups.hi));
  const int m = rng.uniform_int(scan.candidates.lo, scan.candidates.hi);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) {
    const int group = i < k ? i + 1 : rng.uniform_int(1, k);
    agents.push_back({i + 1, group, rng.uniform(-5.0, 5.0)});
  }
  std::vector<double> cands;
  for (int j = 0; j < m; ++j) cands.push_back(rng.uniform(-5.0, 5.0));
  return Instance::make(std::move(cands), std::move(agents));
}

Instance clustered_instance(const ScanConfig& scan, Rng& rng) {
  const int n = rng.uniform_int(scan.agents.lo, scan.agents.hi);
  const int k = std::min(n, rng.uniform_int(scan.groups.lo, scan.groups.hi));
  const int m = rng.uniform_int(scan.candidates.lo, scan.candidates.hi);
  std::vector<double> centers;
  for (int g = 0; g < k; ++g) centers.push_back(rng.uniform(-5.0, 5.0));
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) {
    const int group = i < k ? i + 1 : rng.uniform_int(1, k);
    const double x = centers[static_cast<std::size_t>(group - 1)] +
                     rng.uniform(-0.1, 0.1);  // blob width 0.2
    agents.push_back({i + 1, group, x});
  }
  std::vector<double> cands;
  for (int j = 0; j < m; ++j) cands.push_back(rng.uniform(-5.0, 5.0));
  return Instance::make(std::move(cands), std::move(agents));
}

}  // namespace

Instance random_instance(const ScanConfig& scan, ObjectiveKind kind,
                         int trial) {
  Rng rng(derive_seed(scan.seed, static_cast<std::uint64_t>(trial)));
  switch (scan.generator) {
    case GeneratorKind::Clustered:
      return clustered_instance(scan, rng);
    case GeneratorKind::LowerBoundFamily: {
      const FamilySpec spec = build_family(kind, scan.theta);
      const std::size_t idx =
          static_cast<std::size_t>(trial) % spec.instances.size();
      return spec.instances[idx].instance;
    }
    case GeneratorKind::UniformRandom:
    case GeneratorKind::HillClimb:
      return uniform_random_instance(scan, rng);
  }
  throw std::logic_error("unreachable generator kind");
}

namespace {

DistortionReport run_trial(const ScanConfig& scan, const QuantileConfig& cfg,
                           ObjectiveKind kind, int trial) {
  const Instance inst = random_instance(scan, kind, trial);
  if (scan.generator == GeneratorKind::HillClimb) {
    return hill_climb_adversary(inst, cfg, kind, scan.hill_climb_steps,
                                derive_seed(scan.seed ^ 0xc1f5u,
                                            static_cast<std::uint64_t>(trial)));
  }
  return evaluate_instance(inst, cfg, kind);
}

}  // namespace

ScanReport distortion_scan(const ScanConfig& scan, const QuantileConfig& cfg,
                           ObjectiveKind kind) {
  if (scan.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (scan.agents.lo < 1 || scan.agents.hi < scan.agents.lo ||
      scan.groups.lo < 1 || scan.groups.hi < scan.groups.lo ||
      scan.candidates.lo < 2 || scan.candidates.hi < scan.candidates.lo) {
    throw std::invalid_argument("empty or invalid size range");
  }

  ScanReport report;
  report.rows.resize(static_cast<std::size_t>(scan.trials));
  parallel_for(scan.trials, [&](int t) {
    const DistortionReport trial_report = run_trial(scan, cfg, kind, t);
    ScanRow& row = report.rows[static_cast<std::size_t>(t)];
    row.trial = t;
    row.n = trial_report.instance.agent_count();
    row.k = trial_report.instance.group_count();
    row.m = trial_report.instance.candidates.size();
    row.mech_cost = trial_report.mechanism_cost;
    row.opt_cost = trial_report.optimal_cost;
    row.ratio = trial_report.ratio;
  });

  for (const ScanRow& row : report.rows) {
    report.histogram.add(row.ratio);
    if (report.worst_trial < 0 ||
        row.ratio.worse_than(
            report.rows[static_cast<std::size_t>(report.worst_trial)].ratio)) {
      report.worst_trial = row.trial;
    }
  }
  // Trials are pure functions of (config, trial), so the worst witness can
  // be rebuilt after the reduction instead of storing every instance.
  report.worst = run_trial(scan, cfg, kind, report.worst_trial);
  return report;
}

DistortionReport hill_climb_adversary(const Instance& start,
                                      const QuantileConfig& cfg,
                                      ObjectiveKind kind, int steps,
                                      std::uint64_t seed) {
  Rng rng(seed);
  DistortionReport best = evaluate_instance(start, cfg, kind);
  double scale = 1.0;
  int rejected_streak = 0;

  for (int step = 0; step < steps; ++step) {
    Instance proposal = best.instance;
    const int n = proposal.agent_count();
    const int m = proposal.candidates.size();
    const int coord = rng.uniform_int(0, n + m - 1);
    const double delta = rng.uniform(-scale, scale);
    if (coord < n) {
      proposal.agents[static_cast<std::size_t>(coord)].location += delta;
    } else {
      std::vector<double> values;
      for (const CandidateSlot& s : proposal.candidates.slots) {
        values.push_back(s.value);
      }
      values[static_cast<std::size_t>(coord - n)] += delta;
      proposal = Instance::make(std::move(values), std::move(proposal.agents));
    }

    const DistortionReport candidate = evaluate_instance(proposal, cfg, kind);
    const bool improves =
        candidate.ratio.worse_than(best.ratio);  // strictly larger ratio
    if (improves) {
      best = candidate;
      rejected_streak = 0;
    } else if (++rejected_streak == 50) {
      scale *= 0.5;
      rejected_streak = 0;
    }
  }
  return best;
}

}  // namespace mechlab
