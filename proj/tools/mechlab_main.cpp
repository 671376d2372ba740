// mechlab: strategyproof distributed two-facility location on a line.
//
// Subcommands: run (mechanism with trace), opt (exact oracle), audit
// (strategyproofness + distortion envelopes), sweep ((alpha,beta) grids),
// families (lower-bound instance replays).
//
// Exit codes: 0 all checks pass, 1 a violation was found, 2 input error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mechlab/audit.hpp"
#include "mechlab/families.hpp"
#include "mechlab/instance_io.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/oracle.hpp"
#include "mechlab/parallel.hpp"
#include "mechlab/rng.hpp"

namespace {

using namespace mechlab;

std::string num(double v, const char* fmt = "%g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string csv_num(double v) { return num(v, "%.17g"); }

std::string ratio_str(const Ratio& r, const char* fmt = "%.6f") {
  return r.infinite ? "inf" : num(r.value, fmt);
}

std::string placement_str(const Placement& p) {
  return "(" + num(p.value_a) + ", " + num(p.value_b) + ")";
}

struct ConfigFlags {
  std::string preset;
  double alpha = -1.0;
  double beta = -1.0;

  bool given() const { return !preset.empty() || alpha >= 0.0 || beta >= 0.0; }

  QuantileConfig resolve() const {
    if (!preset.empty()) {
      if (alpha >= 0.0 || beta >= 0.0) {
        throw CLI::ValidationError("--preset conflicts with --alpha/--beta");
      }
      return preset_config(preset);
    }
    if (alpha < 0.0 || beta < 0.0) {
      throw CLI::ValidationError("need --preset or both --alpha and --beta");
    }
    if (alpha > 1.0 || beta > 1.0) {
      throw CLI::ValidationError("--alpha/--beta must lie in [0,1]");
    }
    return {alpha, beta};
  }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--preset", flags.preset,
                  "named mechanism: aoa=(1/2,1/2), mom=(1,1), moa=(a*,1), "
                  "aom=(1,a*) with a*=(3-sqrt(5))/2")
      ->check(CLI::IsMember({"aoa", "mom", "moa", "aom"}));
  cmd->add_option("--alpha", flags.alpha, "step-1 quantile in [0,1]");
  cmd->add_option("--beta", flags.beta, "step-2 quantile in [0,1]");
}

Instance load_checked(const std::string& path) {
  const Instance inst = load_instance(path);
  const ValidationReport report = validate_instance(inst);
  if (!report.ok()) {
    std::string msg = path + ": invalid instance";
    for (const Violation& v : report.violations) {
      msg += "\n  [" + v.code + "] " + v.message;
    }
    throw ParseError(msg);
  }
  return inst;
}

ObjectiveKind resolve_objective(const std::string& objective,
                                const std::string& preset) {
  if (!objective.empty()) return objective_from_string(objective);
  if (!preset.empty()) return objective_from_string(preset);
  throw CLI::ValidationError("need --objective (or a --preset to infer it)");
}

// ---------------------------------------------------------------- run ----

int cmd_run(const std::string& path, const ConfigFlags& flags,
            const std::string& objective) {
  const Instance inst = load_checked(path);
  const QuantileConfig cfg = flags.resolve();
  const ObjectiveKind kind = resolve_objective(objective, flags.preset);

  const MechanismResult res = run_quantile(inst, cfg);
  const auto& t = res.trace;

  std::printf("instance: %s (n=%d, k=%d, m=%d)\n", path.c_str(),
              inst.agent_count(), inst.group_count(), inst.candidates.size());
  std::printf("config: alpha=%s beta=%s\n", num(cfg.alpha).c_str(),
              num(cfg.beta).c_str());
  for (const GroupRepresentatives& r : t.reps) {
    std::printf(
        "group %d: quantile agent %d -> y1 slot %d (value %s), y2 slot %d "
        "(value %s)\n",
        r.group, r.quantile_agent, r.y1,
        num(inst.candidates.value_of(r.y1)).c_str(), r.y2,
        num(inst.candidates.value_of(r.y2)).c_str());
  }
  auto list = [](const std::vector<double>& zs) {
    std::string out;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      out += (i ? " " : "") + num(zs[i]);
    }
    return out;
  };
  std::printf("z before: %s\n", list(t.z_before).c_str());
  std::printf("z after:  %s\n", list(t.z_after).c_str());
  std::printf("w1: slot %d (value %s)\n", t.w1_slot, num(t.w1_value).c_str());
  std::printf("w2: slot %d (value %s)\n", t.w2_slot, num(t.w2_value).c_str());
  std::printf("witness group: %d\n", t.witness_group);
  std::printf("placement: values %s slots (%d, %d)\n",
              placement_str(res.placement).c_str(), res.placement.slot_a,
              res.placement.slot_b);
  const double cost = eval_objective(kind, inst, res.placement);
  std::printf("objective %s = %s\n", to_string(kind), num(cost).c_str());
  return 0;
}

// ---------------------------------------------------------------- opt ----

int cmd_opt(const std::string& path, const std::string& objective) {
  const Instance inst = load_checked(path);
  const ObjectiveKind kind = objective_from_string(objective);
  const OptimalResult opt = optimal_placement(inst, kind);
  const int m = inst.candidates.size();
  std::printf("instance: %s (n=%d, k=%d, m=%d)\n", path.c_str(),
              inst.agent_count(), inst.group_count(), m);
  std::printf("objective %s\n", to_string(kind));
  std::printf("optimal placement: values %s slots (%d, %d)\n",
              placement_str(opt.placement).c_str(), opt.placement.slot_a,
              opt.placement.slot_b);
  std::printf("optimal cost = %s\n", num(opt.cost).c_str());
  std::printf("ties: %d (of %d pairs)\n", opt.ties, m * (m - 1) / 2);
  return 0;
}

// -------------------------------------------------------------- audit ----

struct BoundInfo {
  bool known = false;
  double bound = 0.0;
  std::string label;
};

BoundInfo envelope_bound(const QuantileConfig& cfg, ObjectiveKind kind) {
  BoundInfo info;
  if (kind == ObjectiveKind::MoM) {
    // holds for every (alpha, beta)
    return {true, 3.0, "3"};
  }
  if (kind == ObjectiveKind::AoA && cfg.alpha == 0.5 && cfg.beta == 0.5) {
    return {true, 9.0, "9"};
  }
  if (kind == ObjectiveKind::MoA && cfg.beta == 1.0 && cfg.alpha > 0.0 &&
      cfg.alpha < 1.0) {
    return {true, parametric_bound(cfg.alpha).bound, "parametric(alpha)"};
  }
  if (kind == ObjectiveKind::AoM && cfg.alpha == 1.0 && cfg.beta > 0.0 &&
      cfg.beta < 1.0) {
    return {true, parametric_bound(cfg.beta).bound, "parametric(beta)"};
  }
  return info;
}

void write_scan_csv(const std::string& out_path, const ScanReport& report,
                    GeneratorKind generator, const std::string& witness_path) {
  std::ofstream out(out_path);
  if (!out) throw ParseError(out_path + ": cannot open file for writing");
  out << "trial,generator,n,k,m,mech_cost,opt_cost,ratio,witness\n";
  for (const ScanRow& row : report.rows) {
    out << row.trial << ',' << to_string(generator) << ',' << row.n << ','
        << row.k << ',' << row.m << ',' << csv_num(row.mech_cost) << ','
        << csv_num(row.opt_cost) << ','
        << (row.ratio.infinite ? "inf" : csv_num(row.ratio.value)) << ','
        << (row.trial == report.worst_trial ? witness_path : "") << '\n';
  }
}

// Restarted climbs from one fixed start instance, shaped like a scan report.
ScanReport fixed_start_climbs(const Instance& start, const ScanConfig& scan,
                              const QuantileConfig& cfg, ObjectiveKind kind) {
  ScanReport report;
  report.rows.resize(static_cast<std::size_t>(scan.trials));
  std::vector<DistortionReport> results(
      static_cast<std::size_t>(scan.trials));
  parallel_for(scan.trials, [&](int t) {
    results[static_cast<std::size_t>(t)] =
        hill_climb_adversary(start, cfg, kind, scan.hill_climb_steps,
                             derive_seed(scan.seed, static_cast<std::uint64_t>(t)));
  });
  for (int t = 0; t < scan.trials; ++t) {
    const DistortionReport& r = results[static_cast<std::size_t>(t)];
    ScanRow& row = report.rows[static_cast<std::size_t>(t)];
    row.trial = t;
    row.n = r.instance.agent_count();
    row.k = r.instance.group_count();
    row.m = r.instance.candidates.size();
    row.mech_cost = r.mechanism_cost;
    row.opt_cost = r.optimal_cost;
    row.ratio = r.ratio;
    report.histogram.add(row.ratio);
    if (report.worst_trial < 0 ||
        row.ratio.worse_than(
            report.rows[static_cast<std::size_t>(report.worst_trial)].ratio)) {
      report.worst_trial = row.trial;
    }
  }
  report.worst = results[static_cast<std::size_t>(report.worst_trial)];
  return report;
}

int cmd_audit(bool sp_mode, const ConfigFlags& flags,
              const std::string& objective, ScanConfig scan,
              const std::string& generator, double epsilon, int misreports,
              const std::string& out_path, const std::string& instance_path) {
  if (scan.trials < 1) throw CLI::ValidationError("--trials must be >= 1");
  if (!generator.empty()) scan.generator = generator_from_string(generator);
  if (!instance_path.empty() && scan.generator != GeneratorKind::HillClimb) {
    throw CLI::ValidationError(
        "--instance is a hill-climb start; add --generator hill-climb");
  }

  if (sp_mode) {
    std::vector<QuantileConfig> configs;
    if (flags.given()) {
      configs.push_back(flags.resolve());
    } else {
      for (const char* p : {"aoa", "mom", "moa", "aom"}) {
        configs.push_back(preset_config(p));
      }
      const double grid[][2] = {{0, 0},       {0, 1},          {1, 0},
                                {1, 1},       {0.5, 0.5},      {0.25, 0.75},
                                {0.75, 0.25}, {0.382, 1},      {1, 0.382}};
      for (const auto& g : grid) configs.push_back({g[0], g[1]});
    }
    const ObjectiveKind kind = objective.empty()
                                   ? ObjectiveKind::AoA
                                   : objective_from_string(objective);
    std::printf("audit sp: trials=%d seed=%" PRIu64
                " configs=%zu epsilon=%s misreports=%d\n",
                scan.trials, scan.seed, configs.size(), num(epsilon).c_str(),
                misreports);
    std::vector<DeviationFinding> findings;
    long audited = 0;
    for (int t = 0; t < scan.trials; ++t) {
      const Instance inst = random_instance(scan, kind, t);
      for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto found = check_strategyproof(
            inst, configs[c], epsilon, misreports,
            derive_seed(scan.seed, static_cast<std::uint64_t>(t) * 100 + c));
        findings.insert(findings.end(), found.begin(), found.end());
        ++audited;
      }
    }
    std::printf("instance-config pairs audited: %ld, findings: %zu\n", audited,
                findings.size());
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw ParseError(out_path + ": cannot open file for writing");
      out << "agent_id,true_location,misreport,honest_cost,deviated_cost,"
             "gain,instance\n";
      for (std::size_t i = 0; i < findings.size(); ++i) {
        const DeviationFinding& f = findings[i];
        const std::string inst_path =
            out_path + ".finding" + std::to_string(i) + ".json";
        save_instance(f.instance, inst_path);
        out << f.agent_id << ',' << csv_num(f.true_location) << ','
            << csv_num(f.misreport) << ',' << csv_num(f.honest_cost) << ','
            << csv_num(f.deviated_cost) << ',' << csv_num(f.gain) << ','
            << inst_path << '\n';
      }
      std::printf("csv: %s\n", out_path.c_str());
    }
    for (const DeviationFinding& f : findings) {
      std::printf("FINDING agent %d: report %s -> gain %s on %s\n", f.agent_id,
                  num(f.misreport).c_str(), num(f.gain).c_str(),
                  debug_string(f.instance).c_str());
    }
    return findings.empty() ? 0 : 1;
  }

  // One row per requested config; with no config given, reproduce the whole
  // preset table (one row per objective).
  struct AuditRow {
    QuantileConfig cfg;
    ObjectiveKind kind;
  };
  std::vector<AuditRow> audit_rows;
  if (flags.given()) {
    const QuantileConfig cfg = flags.resolve();
    audit_rows.push_back({cfg, resolve_objective(objective, flags.preset)});
  } else if (!objective.empty()) {
    const ObjectiveKind kind = objective_from_string(objective);
    audit_rows.push_back({preset_config(kind), kind});
  } else {
    for (const char* p : {"aoa", "mom", "moa", "aom"}) {
      audit_rows.push_back({preset_config(p), objective_from_string(p)});
    }
  }

  bool any_violation = false;
  for (std::size_t r = 0; r < audit_rows.size(); ++r) {
    const QuantileConfig cfg = audit_rows[r].cfg;
    const ObjectiveKind kind = audit_rows[r].kind;
    const ScanReport report =
        instance_path.empty()
            ? distortion_scan(scan, cfg, kind)
            : fixed_start_climbs(load_checked(instance_path), scan, cfg, kind);
    std::printf("audit scan: objective=%s alpha=%s beta=%s generator=%s "
                "trials=%d seed=%" PRIu64 "\n",
                to_string(kind), num(cfg.alpha).c_str(), num(cfg.beta).c_str(),
                to_string(scan.generator), scan.trials, scan.seed);
    const ScanRow& worst_row =
        report.rows[static_cast<std::size_t>(report.worst_trial)];
    std::printf("max ratio = %s at trial %d (n=%d k=%d m=%d)\n",
                ratio_str(worst_row.ratio).c_str(), report.worst_trial,
                worst_row.n, worst_row.k, worst_row.m);

    // With multiple rows, suffix the CSV paths by objective.
    if (!out_path.empty()) {
      const std::string row_path =
          audit_rows.size() == 1
              ? out_path
              : out_path + "." + to_string(kind) + ".csv";
      const std::string witness_path = row_path + ".worst.json";
      save_instance(report.worst.instance, witness_path);
      write_scan_csv(row_path, report, scan.generator, witness_path);
      std::printf("csv: %s\nworst instance: %s\n", row_path.c_str(),
                  witness_path.c_str());
    }

    const BoundInfo bound = envelope_bound(cfg, kind);
    if (bound.known) {
      const bool violated =
          worst_row.ratio.exceeds(bound.bound + kEnvelopeEpsilon);
      any_violation = any_violation || violated;
      std::printf("bound %s = %s -> %s\n", bound.label.c_str(),
                  num(bound.bound, "%.12g").c_str(),
                  violated ? "VIOLATION" : "OK");
    } else {
      std::printf("bound: none established for this (config, objective)\n");
    }
  }
  return any_violation ? 1 : 0;
}

// -------------------------------------------------------------- sweep ----

int cmd_sweep(const std::vector<double>& alphas,
              const std::vector<double>& betas, const std::string& objective,
              ScanConfig scan, const std::string& out_path) {
  if (scan.trials < 1) throw CLI::ValidationError("--trials must be >= 1");
  const ObjectiveKind kind = objective_from_string(objective);
  for (double a : alphas) {
    if (a < 0.0 || a > 1.0) throw CLI::ValidationError("alpha outside [0,1]");
  }
  for (double b : betas) {
    if (b < 0.0 || b > 1.0) throw CLI::ValidationError("beta outside [0,1]");
  }

  std::string csv = "alpha,beta,max_ratio,bound\n";
  bool violation = false;
  for (double a : alphas) {
    for (double b : betas) {
      ScanConfig cell = scan;
      cell.seed = derive_seed(scan.seed,
                              static_cast<std::uint64_t>(a * 1e6) * 1000003 +
                                  static_cast<std::uint64_t>(b * 1e6));
      const ScanReport report = distortion_scan(cell, {a, b}, kind);
      const ScanRow& worst =
          report.rows[static_cast<std::size_t>(report.worst_trial)];
      const BoundInfo bound = envelope_bound({a, b}, kind);
      csv += csv_num(a) + "," + csv_num(b) + "," +
             (worst.ratio.infinite ? "inf" : csv_num(worst.ratio.value)) + "," +
             (bound.known ? csv_num(bound.bound) : "n/a") + "\n";
      std::printf("alpha=%s beta=%s max_ratio=%s bound=%s\n", num(a).c_str(),
                  num(b).c_str(), ratio_str(worst.ratio).c_str(),
                  bound.known ? num(bound.bound, "%.12g").c_str() : "n/a");
      if (bound.known &&
          worst.ratio.exceeds(bound.bound + kEnvelopeEpsilon)) {
        violation = true;
      }
    }
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError(out_path + ": cannot open file for writing");
    out << csv;
    std::printf("csv: %s\n", out_path.c_str());
  }
  return violation ? 1 : 0;
}

// ----------------------------------------------------------- families ----

int cmd_families(const std::string& objective, double theta,
                 const ConfigFlags& flags) {
  const ObjectiveKind kind = objective_from_string(objective);
  const FamilySpec spec = build_family(kind, theta);
  const QuantileConfig cfg =
      flags.given() ? flags.resolve() : spec.preset;
  const FamilyReplay replay = replay_family(spec, cfg);

  std::printf("family %s theta=%s mechanism alpha=%s beta=%s target=%s\n",
              to_string(kind), num(theta).c_str(), num(cfg.alpha).c_str(),
              num(cfg.beta).c_str(), num(spec.target).c_str());
  std::printf("%-9s %-15s %-15s %-12s %-12s %-10s %s\n", "instance",
              "mech_placement", "opt_placement", "mech_cost", "opt_cost",
              "ratio", "note");
  for (const FamilyReplayRow& row : replay.rows) {
    const bool is_max = row.instance_name == replay.max_instance;
    std::printf("%-9s %-15s %-15s %-12s %-12s %-10s %s\n",
                row.instance_name.c_str(),
                placement_str(row.mechanism_placement).c_str(),
                placement_str(row.optimal_placement).c_str(),
                num(row.mechanism_cost).c_str(), num(row.optimal_cost).c_str(),
                ratio_str(row.ratio).c_str(),
                is_max ? "family max" : "not extremal for this mechanism");
  }
  std::printf("family max ratio = %s (%s), target %s\n",
              num(replay.max_ratio, "%.6f").c_str(), replay.max_instance.c_str(),
              num(spec.target).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategyproof distributed two-facility location toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a quantile mechanism with trace");
  std::string run_instance, run_objective;
  ConfigFlags run_flags;
  run->add_option("--instance", run_instance, "instance file")->required();
  add_config_flags(run, run_flags);
  run->add_option("--objective", run_objective, "aoa|mom|moa|aom");

  // opt
  auto* opt = app.add_subcommand("opt", "exact optimal placement");
  std::string opt_instance, opt_objective;
  opt->add_option("--instance", opt_instance, "instance file")->required();
  opt->add_option("--objective", opt_objective, "aoa|mom|moa|aom")->required();

  // audit
  auto* audit = app.add_subcommand(
      "audit", "strategyproofness and distortion envelope checks");
  ConfigFlags audit_flags;
  std::string audit_objective, audit_generator, audit_out;
  ScanConfig audit_scan;
  bool audit_sp = false;
  double audit_epsilon = kStrategyproofEpsilon;
  int audit_misreports = 32;
  audit->add_flag("--sp", audit_sp, "deviation search instead of a ratio scan");
  add_config_flags(audit, audit_flags);
  audit->add_option("--objective", audit_objective, "aoa|mom|moa|aom");
  audit->add_option("--trials", audit_scan.trials, "instances to generate");
  audit->add_option("--seed", audit_scan.seed, "rng seed (default 0)");
  audit->add_option("--generator", audit_generator,
                    "uniform-random|clustered|family|hill-climb");
  audit->add_option("--theta", audit_scan.theta,
                    "theta for the family generator");
  audit->add_option("--epsilon", audit_epsilon, "strategyproofness tolerance");
  audit->add_option("--misreports", audit_misreports,
                    "random misreports per agent in sp mode");
  audit->add_option("--out", audit_out, "CSV output path");
  std::string audit_instance;
  audit->add_option("--instance", audit_instance,
                    "fixed start instance for hill-climb restarts");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "distortion over an (alpha,beta) grid");
  std::vector<double> sweep_alphas, sweep_betas;
  std::string sweep_objective, sweep_out;
  ScanConfig sweep_scan;
  sweep->add_option("--alphas", sweep_alphas, "alpha grid values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--betas", sweep_betas, "beta grid values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--objective", sweep_objective, "aoa|mom|moa|aom")
      ->required();
  sweep->add_option("--trials", sweep_scan.trials, "trials per cell");
  sweep->add_option("--seed", sweep_scan.seed, "rng seed (default 0)");
  sweep->add_option("--out", sweep_out, "CSV output path");

  // families
  auto* families = app.add_subcommand(
      "families", "replay the lower-bound instance families");
  std::string families_objective;
  double families_theta = 1e-3;
  ConfigFlags families_flags;
  families->add_option("--objective", families_objective, "aoa|mom|moa|aom")
      ->required();
  families->add_option("--theta", families_theta,
                       "instance parameter in (0, 0.01]");
  add_config_flags(families, families_flags);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_instance, run_flags, run_objective);
    if (opt->parsed()) return cmd_opt(opt_instance, opt_objective);
    if (audit->parsed()) {
      return cmd_audit(audit_sp, audit_flags, audit_objective, audit_scan,
                       audit_generator, audit_epsilon, audit_misreports,
                       audit_out, audit_instance);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_alphas, sweep_betas, sweep_objective, sweep_scan,
                       sweep_out);
    }
    if (families->parsed()) {
      return cmd_families(families_objective, families_theta, families_flags);
    }
    std::fprintf(stderr, "no subcommand given\n");
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
