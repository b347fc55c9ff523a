#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wallsim/commands.hpp"
#include "wallsim/config.hpp"
#include "wallsim/density.hpp"
#include "wallsim/error.hpp"
#include "wallsim/lerch.hpp"
#include "wallsim/montecarlo.hpp"
#include "wallsim/signal.hpp"
#include "wallsim/turning.hpp"

namespace py = pybind11;
using namespace wallsim;

namespace {

py::array_t<double> to_array(std::vector<double> v) {
  auto* heap = new std::vector<double>(std::move(v));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
  return py::array_t<double>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
}

}  // namespace

PYBIND11_MODULE(_wallsim, m) {
  m.doc() = "Two-wall reflection simulator: image sums, turning points, power densities.";

  // Message starts with the error kind, e.g. "invalid-args: ...".
  py::register_exception<Error>(m, "WallsimError", PyExc_ValueError);

  py::class_<WallConfig>(m, "WallConfig")
      .def(py::init([](double a, double b, double kappa) { return WallConfig{a, b, kappa}; }),
           py::arg("a") = 0.5, py::arg("b") = 0.5, py::arg("kappa") = 0.5)
      .def_readwrite("a", &WallConfig::a)
      .def_readwrite("b", &WallConfig::b)
      .def_readwrite("kappa", &WallConfig::kappa)
      .def_property_readonly("separation", &WallConfig::separation)
      .def("__repr__", [](const WallConfig& c) {
        return "WallConfig(a=" + format_double(c.a) + ", b=" + format_double(c.b) +
               ", kappa=" + format_double(c.kappa) + ")";
      });

  py::class_<TxLocation>(m, "TxLocation")
      .def(py::init([](double x, double y) { return TxLocation{x, y}; }), py::arg("x"),
           py::arg("y") = 0.0)
      .def_readwrite("x", &TxLocation::x)
      .def_readwrite("y", &TxLocation::y)
      .def_property_readonly("range", &TxLocation::range)
      .def_property_readonly("angle", &TxLocation::angle);

  py::class_<PropagationParams>(m, "PropagationParams")
      .def(py::init([](double k, double beta, double eps) { return PropagationParams{k, beta, eps}; }),
           py::arg("k") = 10.0, py::arg("beta") = 4.0, py::arg("eps_series") = 1e-12)
      .def_readwrite("k", &PropagationParams::k)
      .def_readwrite("beta", &PropagationParams::beta)
      .def_readwrite("eps_series", &PropagationParams::eps_series)
      .def_property_readonly("wavelength", &PropagationParams::wavelength);

  m.def("lerch_phi",
        [](Complex zeta, double s, double gamma, double eps) {
          return lerch_phi({zeta, s, gamma}, eps);
        },
        py::arg("zeta"), py::arg("s"), py::arg("gamma"), py::arg("eps") = kLerchDefaultEps);
  m.def("truncation_bound",
        [](Complex zeta, double s, double gamma, double eps) {
          return truncation_bound({zeta, s, gamma}, eps);
        },
        py::arg("zeta"), py::arg("s"), py::arg("gamma"), py::arg("eps") = kLerchDefaultEps);

  m.def("image_distance",
        [](const std::string& side, int m_, const WallConfig& cfg, const TxLocation& tx) {
          if (side != "right" && side != "left") throw Error(ErrorKind::InvalidArgs, "side must be right or left");
          return image_distance(side == "right" ? Side::Right : Side::Left, m_, cfg, tx);
        },
        py::arg("side"), py::arg("m"), py::arg("cfg"), py::arg("tx"));

  m.def("reflected_signal",
        [](const WallConfig& cfg, const TxLocation& tx, const PropagationParams& p) {
          return reflected_signal_sum(cfg, tx, p).amplitude;
        },
        py::arg("cfg"), py::arg("tx"), py::arg("params"));
  m.def("total_power",
        [](const WallConfig& cfg, const TxLocation& tx, const PropagationParams& p) {
          return total_signal(cfg, tx, p).power;
        },
        py::arg("cfg"), py::arg("tx"), py::arg("params"));
  m.def("lerch_closed_form", &signal_lerch_closed_form, py::arg("cfg"), py::arg("tx"),
        py::arg("params"));
  m.def("surface_bound_power", &surface_bound_power, py::arg("cfg"), py::arg("tx"),
        py::arg("params"));

  auto make_slice = [](const std::string& axis, double fixed, double lo, double hi, int points) {
    if (axis != "x" && axis != "y") throw Error(ErrorKind::InvalidArgs, "axis must be x or y");
    return Slice{axis == "x" ? Axis::X : Axis::Y, fixed, lo, hi, points};
  };

  m.def("power_profile",
        [make_slice](const WallConfig& cfg, const PropagationParams& p, const std::string& axis,
                     double fixed, double lo, double hi, int points, bool include_los) {
          const auto prof = power_profile(cfg, p, make_slice(axis, fixed, lo, hi, points), include_los);
          std::vector<double> u, power;
          for (const auto& pt : prof) {
            u.push_back(pt.coordinate);
            power.push_back(pt.power);
          }
          return py::make_tuple(to_array(std::move(u)), to_array(std::move(power)));
        },
        py::arg("cfg"), py::arg("params"), py::arg("axis") = "x", py::arg("fixed") = 0.0,
        py::arg("lo") = 0.05, py::arg("hi") = 0.45, py::arg("points") = 1000,
        py::arg("include_los") = false,
        "Returns (coordinate, power) arrays along a straight slice.");

  m.def("turning_points",
        [make_slice](const WallConfig& cfg, const PropagationParams& p, const std::string& axis,
                     double fixed, double lo, double hi, bool include_los) {
          const SliceAnalysis a = analyse_slice(cfg, p, make_slice(axis, fixed, lo, hi, 2), include_los);
          py::list points;
          for (const auto& tp : a.scan.points) {
            points.append(py::dict(py::arg("t") = tp.t, py::arg("value") = tp.value,
                                   py::arg("second_deriv") = tp.second_deriv,
                                   py::arg("kind") = tp.kind == TurningKind::Minimum ? "minimum" : "maximum"));
          }
          std::vector<double> singular;
          for (const auto& sv : a.singular_values) singular.push_back(sv.value);
          return py::make_tuple(points, singular);
        },
        py::arg("cfg"), py::arg("params"), py::arg("axis"), py::arg("fixed"), py::arg("lo"),
        py::arg("hi"), py::arg("include_los") = false,
        "Returns (points, singular_values) for the power along a slice.");

  m.def("sample_power",
        [](const WallConfig& cfg, const PropagationParams& p, const std::string& model,
           const TxLocation& base, std::optional<std::pair<double, double>> x_interval,
           std::optional<std::pair<double, double>> y_interval, std::uint64_t n, std::uint64_t seed,
           unsigned threads) {
          SampleSpec spec;
          spec.base = base;
          if (x_interval) spec.x_interval = Interval{x_interval->first, x_interval->second};
          if (y_interval) spec.y_interval = Interval{y_interval->first, y_interval->second};
          spec.n_samples = n;
          spec.seed = seed;
          std::vector<double> out;
          {
            py::gil_scoped_release release;
            if (model == "location") {
              spec.model = SampleModel::Location;
              out = sample_location_power(cfg, p, spec, threads);
            } else if (model == "phase") {
              spec.model = SampleModel::Phase;
              out = sample_phase_power(cfg, p, spec, threads);
            } else {
              throw Error(ErrorKind::InvalidArgs, "model must be location or phase");
            }
          }
          return to_array(std::move(out));
        },
        py::arg("cfg"), py::arg("params"), py::arg("model"), py::arg("base"),
        py::arg("x_interval") = py::none(), py::arg("y_interval") = py::none(),
        py::arg("n") = 100000, py::arg("seed") = 1, py::arg("threads") = 0);

  m.def("histogram",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int bins) {
          const Histogram h = build_histogram({samples.data(), static_cast<std::size_t>(samples.size())}, bins);
          std::vector<double> counts(h.counts.begin(), h.counts.end());
          return py::make_tuple(to_array(h.edges), to_array(std::move(counts)), to_array(h.density));
        },
        py::arg("samples"), py::arg("bins"), "Returns (edges, counts, density).");

  m.def("match_histogram_peaks",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int bins,
           const std::vector<double>& predicted) {
          const Histogram h = build_histogram({samples.data(), static_cast<std::size_t>(samples.size())}, bins);
          const PeakReport r = match_peaks(detect_peaks(h), predicted, h);
          std::vector<double> centers;
          for (const auto& pk : r.detected) centers.push_back(pk.center);
          py::list matches;
          for (const auto& mt : r.matches) {
            matches.append(py::make_tuple(r.detected[mt.detected].center, r.predicted[mt.predicted]));
          }
          return py::dict(py::arg("detected") = centers, py::arg("matches") = matches,
                          py::arg("unmatched_detected") = r.unmatched_detected.size(),
                          py::arg("unmatched_predicted") = r.unmatched_predicted.size());
        },
        py::arg("samples"), py::arg("bins"), py::arg("predicted"));

  m.def("asymptotic_density",
        [](double t_prev, double t_next, double t, double value, double second_deriv, double v) {
          TurningPoint tp{t, value, second_deriv, TurningKind::Minimum, false};
          return asymptotic_density(t_prev, t_next, tp, v);
        },
        py::arg("t_prev"), py::arg("t_next"), py::arg("t"), py::arg("value"),
        py::arg("second_deriv"), py::arg("v"));

  m.def("ks_distance_uniform", &ks_distance_uniform, py::arg("u"));

  m.def("run_experiment",
        [](const std::string& config_json) {
          const ExperimentConfig config = parse_config(config_json);
          CommandResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(config);
          }
          py::dict files;
          for (const auto& f : r.files) files[py::str(f.path)] = py::bytes(f.content);
          return files;
        },
        py::arg("config_json"),
        "Runs one experiment document and returns {path: bytes} without writing files.");
  m.def("default_config", [](const std::string& kind) {
    ExperimentConfig c;
    c.kind = experiment_kind_from_string(kind);
    return serialize(c);
  }, py::arg("kind") = "power-profile");
}
