#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcl/analytics.hpp"
#include "dcl/fit.hpp"
#include "dcl/protocol.hpp"
#include "dcl/spectral.hpp"
#include "dcl/sweep.hpp"
#include "dcl/walk.hpp"

namespace py = pybind11;
using namespace dcl;

namespace {

ProtocolConfig make_protocol_config(int L, int T, double p, const std::string& channel,
                                    const std::string& schedule, int t_period,
                                    double p_u, const std::string& prescramble,
                                    double k, int multiple, const std::string& encoding,
                                    int x0, double code_rate, std::uint64_t seed,
                                    int n_samples) {
  ProtocolConfig cfg;
  cfg.L = L;
  cfg.T = T;
  cfg.p = p;
  cfg.t_period = t_period;
  cfg.p_u = p_u;
  cfg.prescramble_k = k;
  cfg.prescramble_multiple = multiple;
  cfg.x0 = x0;
  cfg.code_rate = code_rate;
  cfg.seed = seed;
  cfg.n_samples = n_samples;
  if (channel == "erasure")
    cfg.channel = ChannelKind::kErasure;
  else if (channel == "cnot_ancilla")
    cfg.channel = ChannelKind::kCnotAncilla;
  else
    throw ConfigError("unknown channel: " + channel);
  if (schedule == "random")
    cfg.schedule = ScheduleKind::kRandom;
  else if (schedule == "periodic")
    cfg.schedule = ScheduleKind::kPeriodic;
  else
    throw ConfigError("unknown schedule: " + schedule);
  if (prescramble == "none")
    cfg.prescramble = PrescrambleKind::kNone;
  else if (prescramble == "log")
    cfg.prescramble = PrescrambleKind::kLog;
  else if (prescramble == "linear")
    cfg.prescramble = PrescrambleKind::kLinear;
  else
    throw ConfigError("unknown prescramble kind: " + prescramble);
  if (encoding == "single_pair")
    cfg.encoding = EncodingKind::kSinglePair;
  else if (encoding == "finite_rate")
    cfg.encoding = EncodingKind::kFiniteRate;
  else
    throw ConfigError("unknown encoding: " + encoding);
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_dcl, m) {
  m.doc() = "stabilizer-circuit and domain-wall engines for boundary-dissipated "
            "qudit chains";

  py::register_exception<ConfigError>(m, "DclConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "DclIoError", PyExc_IOError);
  py::register_exception<NumericsError>(m, "DclNumericsError", PyExc_RuntimeError);

  // Stabilizer engine.
  py::class_<StabilizerState>(m, "StabilizerState")
      .def(py::init<std::uint32_t, std::uint32_t>(), py::arg("n_qubits"),
           py::arg("n_system"))
      .def_property_readonly("n_qubits", &StabilizerState::n_qubits)
      .def_property_readonly("n_generators", &StabilizerState::n_generators)
      .def_property_readonly("is_pure", &StabilizerState::is_pure)
      .def("erase_qubit", &StabilizerState::erase_qubit, py::arg("site"))
      .def("dephase_qubit", &StabilizerState::dephase_qubit, py::arg("site"))
      .def("entropy", &StabilizerState::entropy, py::arg("region"))
      .def("mutual_information", &StabilizerState::mutual_information,
           py::arg("a"), py::arg("r"))
      .def("verify", &StabilizerState::verify);

  m.def("run_clifford", [](int L, int T, double p, std::uint64_t seed, int samples,
                           const std::string& channel, const std::string& schedule,
                           int t_period, double p_u, const std::string& prescramble,
                           double k, int multiple, const std::string& encoding,
                           int x0, double code_rate, int threads,
                           const std::vector<int>& checkpoints) {
          const ProtocolConfig cfg = make_protocol_config(
              L, T, p, channel, schedule, t_period, p_u, prescramble, k, multiple,
              encoding, x0, code_rate, seed, samples);
          std::vector<int> cps = checkpoints.empty() ? std::vector<int>{T}
                                                     : checkpoints;
          const auto recs = run_protocol(cfg, cps, threads);
          py::list out;
          for (const auto& r : recs) {
            py::dict d;
            d["sample"] = r.sample;
            d["checkpoints"] = r.checkpoints;
            out.append(d);
          }
          return out;
        },
        py::arg("L"), py::arg("T"), py::arg("p"), py::arg("seed") = 1,
        py::arg("samples") = 100, py::arg("channel") = "erasure",
        py::arg("schedule") = "random", py::arg("t_period") = 1,
        py::arg("p_u") = 1.0, py::arg("prescramble") = "none", py::arg("k") = 1.0,
        py::arg("multiple") = 1, py::arg("encoding") = "single_pair",
        py::arg("x0") = 1, py::arg("code_rate") = 0.5, py::arg("threads") = 0,
        py::arg("checkpoints") = std::vector<int>{},
        "Run stabilizer-circuit trajectories; returns records of (t, I) pairs.");

  // Domain-wall engine.
  m.def("annealed_mi", &annealed_mi, py::arg("P"), py::arg("q"));
  m.def("annealed_mi_curve",
        [](double q, int L, int T, int t_scr, const std::vector<double>& p_grid,
           const std::string& noise, int realizations, std::uint64_t seed,
           int threads) {
          AnnealedConfig cfg;
          cfg.q = q;
          cfg.L = L;
          cfg.T = T;
          cfg.prescramble_depth = t_scr;
          cfg.realizations = realizations;
          cfg.seed = seed;
          if (noise == "deterministic")
            cfg.noise = WalkNoise::kDeterministic;
          else if (noise == "random_times")
            cfg.noise = WalkNoise::kRandomTimes;
          else
            throw ConfigError("unknown noise mode: " + noise);
          return annealed_mi_curve(cfg, p_grid, threads);
        },
        py::arg("q"), py::arg("L"), py::arg("T"), py::arg("t_scr") = 0,
        py::arg("p_grid") = std::vector<double>{}, py::arg("noise") = "deterministic",
        py::arg("realizations") = 1, py::arg("seed") = 1, py::arg("threads") = 0,
        "Annealed I(p) records; L = -1 runs the semi-infinite lattice.");
  m.def("finite_rate_mi",
        [](double q, int L, int T, int t_scr, double code_rate, double p) {
          AnnealedConfig cfg;
          cfg.q = q;
          cfg.L = L;
          cfg.T = T;
          cfg.prescramble_depth = t_scr;
          cfg.finite_rate = true;
          cfg.code_rate = code_rate;
          return finite_rate_mi_point(cfg, p);
        },
        py::arg("q"), py::arg("L"), py::arg("T"), py::arg("t_scr"),
        py::arg("code_rate"), py::arg("p"));
  m.def("survival_probability",
        [](double q, int L, int T, int t_scr, double p, int x0) {
          AnnealedConfig cfg;
          cfg.q = q;
          cfg.L = L;
          cfg.T = T;
          cfg.prescramble_depth = t_scr;
          cfg.x0 = x0;
          return survival_probability(run_walk(cfg, p), x0);
        },
        py::arg("q"), py::arg("L"), py::arg("T"), py::arg("t_scr"), py::arg("p"),
        py::arg("x0") = 1);

  // Closed forms.
  m.def("critical_p", &critical_p, py::arg("q"));
  m.def("branch_point_w1", &branch_point_w1, py::arg("q"));
  m.def("laplace_za", &laplace_za, py::arg("w"), py::arg("p"));
  m.def("laplace_zf", &laplace_zf, py::arg("w"), py::arg("p"), py::arg("q"));
  m.def("free_energy", &free_energy, py::arg("p"), py::arg("q"));
  m.def("excursion_length", &excursion_length, py::arg("p"), py::arg("q"));
  m.def("thermalization_time", &thermalization_time, py::arg("p"), py::arg("q"),
        py::arg("L"));
  m.def("finite_rate_thresholds",
        [](double q, double C, double L, double T) {
          const auto th = finite_rate_thresholds(q, C, L, T);
          return std::make_pair(th.p_th1, th.p_th2);
        },
        py::arg("q"), py::arg("C"), py::arg("L"), py::arg("T"));
  m.def("dp_kink_pc", [](double q) { return dp_kink_pc(q).pc; }, py::arg("q"));

  // Fitting.
  m.def("fit_collapse",
        [](const std::vector<std::tuple<double, double, double, double, int>>& data,
           const std::string& model, std::pair<double, double> pc_range,
           std::pair<double, double> e1_range, std::pair<double, double> e2_range,
           int bootstrap) {
          std::vector<FitPoint> pts;
          for (const auto& [size, p, y, err, series] : data)
            pts.push_back({size, p, y, err, series});
          CollapseSpec spec;
          spec.kind = model == "step" ? CollapseKind::kStep : CollapseKind::kPowerLaw;
          spec.pc = {pc_range.first, pc_range.second, false, 0};
          spec.e1 = {e1_range.first, e1_range.second, false, 0};
          spec.e2 = {e2_range.first, e2_range.second,
                     spec.kind == CollapseKind::kStep, 0};
          spec.bootstrap = bootstrap;
          const auto fit = fit_collapse(pts, spec);
          py::dict d;
          d["pc"] = fit.model.pc;
          d["e1"] = fit.model.e1;
          d["e2"] = fit.model.e2;
          d["quality"] = fit.quality;
          d["pc_err"] = fit.pc_err;
          d["e1_err"] = fit.e1_err;
          d["e2_err"] = fit.e2_err;
          return d;
        },
        py::arg("data"), py::arg("model") = "power",
        py::arg("pc_range") = std::make_pair(0.0, 1.0),
        py::arg("e1_range") = std::make_pair(0.1, 1.0),
        py::arg("e2_range") = std::make_pair(0.0, 1.0), py::arg("bootstrap") = 0,
        "data: list of (size, p, y, err, series) tuples.");
  m.def("crossing_point",
        [](const std::vector<std::tuple<double, double, double, double, int>>& data) {
          std::vector<FitPoint> pts;
          for (const auto& [size, p, y, err, series] : data)
            pts.push_back({size, p, y, err, series});
          const auto est = crossing_point(pts);
          return std::make_pair(est.median, est.spread);
        },
        py::arg("data"));

  m.attr("__version__") = kVersion;
}
