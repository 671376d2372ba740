#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mechlab/audit.hpp"
#include "mechlab/families.hpp"
#include "mechlab/instance_io.hpp"
#include "mechlab/mechanism.hpp"
#include "mechlab/model.hpp"
#include "mechlab/oracle.hpp"

namespace py = pybind11;
using namespace mechlab;

namespace {

Instance make_instance(const std::vector<double>& candidates,
                       const std::vector<std::tuple<int, int, double>>& agents) {
  std::vector<Agent> parsed;
  parsed.reserve(agents.size());
  for (const auto& [id, group, location] : agents) {
    parsed.push_back({id, group, location});
  }
  return Instance::make(candidates, std::move(parsed));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "strategyproof distributed two-facility location on a line";

  py::enum_<ObjectiveKind>(m, "Objective")
      .value("AOA", ObjectiveKind::AoA)
      .value("MOM", ObjectiveKind::MoM)
      .value("MOA", ObjectiveKind::MoA)
      .value("AOM", ObjectiveKind::AoM);
  m.def("objective_from_string", &objective_from_string, py::arg("name"));

  py::class_<Agent>(m, "Agent")
      .def(py::init<int, int, double>(), py::arg("id"), py::arg("group"),
           py::arg("location"))
      .def_readonly("id", &Agent::id)
      .def_readonly("group", &Agent::group)
      .def_readonly("location", &Agent::location);

  py::class_<CandidateSlot>(m, "CandidateSlot")
      .def_readonly("id", &CandidateSlot::id)
      .def_readonly("value", &CandidateSlot::value);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("candidates"), py::arg("agents"),
           "agents: list of (id, group, location) tuples")
      .def_property_readonly("agents",
                             [](const Instance& inst) { return inst.agents; })
      .def_property_readonly(
          "candidates",
          [](const Instance& inst) { return inst.candidates.slots; })
      .def_property_readonly("n", &Instance::agent_count)
      .def_property_readonly("k", &Instance::group_count)
      .def_property_readonly(
          "m", [](const Instance& inst) { return inst.candidates.size(); })
      .def("__repr__", &debug_string)
      .def("to_json", &instance_to_json)
      .def("save", &save_instance, py::arg("path"));

  m.def("parse_instance", &parse_instance, py::arg("json_text"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("validate_instance", [](const Instance& inst) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Violation& v : validate_instance(inst).violations) {
      out.emplace_back(v.code, v.message);
    }
    return out;
  });

  py::class_<Placement>(m, "Placement")
      .def_readonly("slot_a", &Placement::slot_a)
      .def_readonly("slot_b", &Placement::slot_b)
      .def_readonly("value_a", &Placement::value_a)
      .def_readonly("value_b", &Placement::value_b)
      .def("__repr__", [](const Placement& p) {
        return "Placement(slots=(" + std::to_string(p.slot_a) + "," +
               std::to_string(p.slot_b) + "), values=(" +
               std::to_string(p.value_a) + "," + std::to_string(p.value_b) +
               "))";
      });
  m.def(
      "make_placement",
      [](const Instance& inst, int slot_a, int slot_b) {
        return make_placement(inst.candidates, slot_a, slot_b);
      },
      py::arg("instance"), py::arg("slot_a"), py::arg("slot_b"));

  m.def("individual_cost", &individual_cost, py::arg("x"), py::arg("placement"));
  m.def("eval_objective", &eval_objective, py::arg("objective"),
        py::arg("instance"), py::arg("placement"));

  py::class_<QuantileConfig>(m, "QuantileConfig")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
      .def_readonly("alpha", &QuantileConfig::alpha)
      .def_readonly("beta", &QuantileConfig::beta);
  m.def("preset", py::overload_cast<const std::string&>(&preset_config),
        py::arg("name"));
  m.attr("CRITICAL_QUANTILE") = kCriticalQuantile;

  py::class_<GroupRepresentatives>(m, "GroupRepresentatives")
      .def_readonly("group", &GroupRepresentatives::group)
      .def_readonly("quantile_agent", &GroupRepresentatives::quantile_agent)
      .def_readonly("y1", &GroupRepresentatives::y1)
      .def_readonly("y2", &GroupRepresentatives::y2);

  py::class_<MechanismTrace>(m, "MechanismTrace")
      .def_readonly("reps", &MechanismTrace::reps)
      .def_readonly("z_before", &MechanismTrace::z_before)
      .def_readonly("z_after", &MechanismTrace::z_after)
      .def_readonly("w1_value", &MechanismTrace::w1_value)
      .def_readonly("w2_value", &MechanismTrace::w2_value)
      .def_readonly("w1_slot", &MechanismTrace::w1_slot)
      .def_readonly("w2_slot", &MechanismTrace::w2_slot)
      .def_readonly("witness_group", &MechanismTrace::witness_group);

  py::class_<MechanismResult>(m, "MechanismResult")
      .def_readonly("placement", &MechanismResult::placement)
      .def_readonly("trace", &MechanismResult::trace);

  m.def("run_quantile", &run_quantile, py::arg("instance"), py::arg("config"));
  m.def("step1_representatives", &step1_representatives, py::arg("instance"),
        py::arg("alpha"));

  py::class_<OptimalResult>(m, "OptimalResult")
      .def_readonly("placement", &OptimalResult::placement)
      .def_readonly("cost", &OptimalResult::cost)
      .def_readonly("ties", &OptimalResult::ties);
  m.def("optimal_placement", &optimal_placement, py::arg("instance"),
        py::arg("objective"));

  py::class_<Ratio>(m, "Ratio")
      .def_readonly("value", &Ratio::value)
      .def_readonly("infinite", &Ratio::infinite);
  m.def("distortion_of", &distortion_of, py::arg("mech_cost"),
        py::arg("opt_cost"));

  py::class_<DeviationFinding>(m, "DeviationFinding")
      .def_readonly("instance", &DeviationFinding::instance)
      .def_readonly("agent_id", &DeviationFinding::agent_id)
      .def_readonly("true_location", &DeviationFinding::true_location)
      .def_readonly("misreport", &DeviationFinding::misreport)
      .def_readonly("honest_cost", &DeviationFinding::honest_cost)
      .def_readonly("deviated_cost", &DeviationFinding::deviated_cost)
      .def_readonly("gain", &DeviationFinding::gain);

  m.def("deviation_set", &deviation_set, py::arg("instance"), py::arg("agent_id"));
  m.def("check_strategyproof", &check_strategyproof, py::arg("instance"),
        py::arg("config"), py::arg("epsilon") = kStrategyproofEpsilon,
        py::arg("random_misreports") = 0, py::arg("seed") = 0);
  m.def("check_locality", &check_locality, py::arg("instance"),
        py::arg("config"), py::arg("mutations"), py::arg("seed"));
  m.def("check_witness_and_adjacency",
        [](const Instance& inst, const QuantileConfig& cfg) {
          const StructuralCheck check = check_witness_and_adjacency(inst, cfg);
          return py::make_tuple(check.pass, check.detail);
        },
        py::arg("instance"), py::arg("config"));

  m.def("parametric_bound",
        [](double q) { return parametric_bound(q).bound; }, py::arg("q"));

  py::class_<ScanConfig>(m, "ScanConfig")
      .def(py::init([](int trials, std::uint64_t seed, const std::string& gen,
                       double theta) {
             ScanConfig scan;
             scan.trials = trials;
             scan.seed = seed;
             scan.generator = generator_from_string(gen);
             scan.theta = theta;
             return scan;
           }),
           py::arg("trials") = 1000, py::arg("seed") = 0,
           py::arg("generator") = "uniform-random", py::arg("theta") = 1e-3)
      .def_readonly("trials", &ScanConfig::trials)
      .def_readonly("seed", &ScanConfig::seed);

  m.def("distortion_scan",
        [](const ScanConfig& scan, const QuantileConfig& cfg,
           ObjectiveKind kind) {
          const ScanReport report = distortion_scan(scan, cfg, kind);
          py::dict out;
          const ScanRow& worst =
              report.rows[static_cast<std::size_t>(report.worst_trial)];
          out["max_ratio"] = worst.ratio.infinite
                                 ? std::numeric_limits<double>::infinity()
                                 : worst.ratio.value;
          out["worst_trial"] = report.worst_trial;
          out["worst_instance"] = report.worst.instance;
          out["histogram"] = report.histogram.bins;
          return out;
        },
        py::arg("scan"), py::arg("config"), py::arg("objective"));

  py::class_<FamilyReplayRow>(m, "FamilyReplayRow")
      .def_readonly("instance_name", &FamilyReplayRow::instance_name)
      .def_readonly("mechanism_placement", &FamilyReplayRow::mechanism_placement)
      .def_readonly("optimal_placement", &FamilyReplayRow::optimal_placement)
      .def_readonly("mechanism_cost", &FamilyReplayRow::mechanism_cost)
      .def_readonly("optimal_cost", &FamilyReplayRow::optimal_cost)
      .def_readonly("ratio", &FamilyReplayRow::ratio);

  py::class_<FamilyReplay>(m, "FamilyReplay")
      .def_readonly("rows", &FamilyReplay::rows)
      .def_readonly("max_ratio", &FamilyReplay::max_ratio)
      .def_readonly("max_instance", &FamilyReplay::max_instance)
      .def_readonly("target", &FamilyReplay::target);

  m.def("replay_family",
        [](ObjectiveKind kind, double theta, const QuantileConfig* cfg) {
          const FamilySpec spec = build_family(kind, theta);
          return replay_family(spec, cfg ? *cfg : spec.preset);
        },
        py::arg("objective"), py::arg("theta") = 1e-3,
        py::arg("config") = nullptr);

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<WitnessError>(m, "WitnessError");
}
