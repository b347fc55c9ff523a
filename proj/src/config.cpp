#include "wallsim/config.hpp"

#include <json.hpp>

#include "wallsim/error.hpp"

namespace wallsim {

using nlohmann::json;

namespace {

const char* axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

Axis axis_from(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  throw Error(ErrorKind::Config, "axis must be \"x\" or \"y\"");
}

const char* model_name(SampleModel m) { return m == SampleModel::Location ? "location" : "phase"; }

SampleModel model_from(const std::string& s) {
  if (s == "location") return SampleModel::Location;
  if (s == "phase") return SampleModel::Phase;
  throw Error(ErrorKind::Config, "model must be \"location\" or \"phase\"");
}

json interval_json(const std::optional<Interval>& iv) {
  if (!iv) return nullptr;
  return json::array({iv->lo, iv->hi});
}

std::optional<Interval> interval_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Config, "interval must be [lo, hi] or null");
  return Interval{j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void read(const json& obj, const char* key, T& into) {
  if (obj.contains(key)) into = obj.at(key).get<T>();
}

// Rethrows a module error as a configuration error.
template <typename Fn>
void config_check(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PowerProfile: return "power-profile";
    case ExperimentKind::TurningPoints: return "turning-points";
    case ExperimentKind::SampleDensity: return "sample-density";
    case ExperimentKind::ValidateLerch: return "validate-lerch";
    case ExperimentKind::SurfaceBound: return "surface-bound";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::PowerProfile, ExperimentKind::TurningPoints,
                 ExperimentKind::SampleDensity, ExperimentKind::ValidateLerch,
                 ExperimentKind::SurfaceBound}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::Config, "unknown experiment kind \"" + name + "\"");
}

void validate(const ExperimentConfig& c) {
  config_check([&] { validate(c.geometry); });
  config_check([&] { validate(c.propagation); });
  switch (c.kind) {
    case ExperimentKind::PowerProfile:
    case ExperimentKind::TurningPoints:
    case ExperimentKind::SurfaceBound: {
      const Slice& s = c.slice;
      if (s.points < 2) throw Error(ErrorKind::Config, "slice.points must be >= 2");
      if (!(s.lo < s.hi)) throw Error(ErrorKind::Config, "slice needs lo < hi");
      const bool x_ok = s.axis == Axis::X ? (s.lo > -c.geometry.b && s.hi < c.geometry.a)
                                          : (s.fixed > -c.geometry.b && s.fixed < c.geometry.a);
      if (!x_ok) throw Error(ErrorKind::Config, "slice leaves the region between the walls");
      if (c.kind == ExperimentKind::SurfaceBound || c.include_los) {
        // The line-of-sight term needs r > r_min everywhere on the slice.
        const bool crosses = std::abs(s.fixed) <= kMinRange && s.lo <= 0.0 && s.hi >= 0.0;
        if (crosses) throw Error(ErrorKind::Config, "slice passes through the receiver");
      }
      break;
    }
    case ExperimentKind::SampleDensity: {
      config_check([&] { validate(c.sample, c.geometry); });
      if (c.bins < 1) throw Error(ErrorKind::Config, "bins must be >= 1");
      if (c.sample.model == SampleModel::Phase && c.sample.x_interval) {
        config_check([&] {
          validate(SampleSpec{SampleModel::Location, c.sample.base, c.sample.x_interval,
                              std::nullopt, 1, 0},
                   c.geometry);
        });
      }
      break;
    }
    case ExperimentKind::ValidateLerch: {
      const ComparisonSpec& v = c.comparison;
      const double d = c.geometry.separation();
      if (std::abs(c.geometry.a - c.geometry.b) > 1e-12 * d) {
        throw Error(ErrorKind::Config, "validate-lerch needs symmetric walls (a = b)");
      }
      if (v.points < 1) throw Error(ErrorKind::Config, "comparison.points must be >= 1");
      if (!(v.x_lo < v.x_hi) || !(v.x_lo >= 0.0) || !(v.x_hi <= 0.5 * d)) {
        throw Error(ErrorKind::Config, "comparison interval must lie inside [0, d/2]");
      }
      if (v.k_values.empty()) throw Error(ErrorKind::Config, "comparison.k_values is empty");
      for (double k : v.k_values) {
        if (!(k > 0.0) || !std::isfinite(k)) {
          throw Error(ErrorKind::Config, "comparison k values must be finite and > 0");
        }
      }
      break;
    }
  }
  if (c.output.out.empty()) throw Error(ErrorKind::Config, "output path is empty");
}

std::string serialize(const ExperimentConfig& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["geometry"] = {{"a", c.geometry.a}, {"b", c.geometry.b}, {"kappa", c.geometry.kappa}};
  j["propagation"] = {{"k", c.propagation.k},
                      {"beta", c.propagation.beta},
                      {"eps_series", c.propagation.eps_series}};
  j["slice"] = {{"axis", axis_name(c.slice.axis)},
                {"fixed", c.slice.fixed},
                {"lo", c.slice.lo},
                {"hi", c.slice.hi},
                {"points", c.slice.points},
                {"include_los", c.include_los}};
  j["sample"] = {{"model", model_name(c.sample.model)},
                 {"x", c.sample.base.x},
                 {"y", c.sample.base.y},
                 {"x_interval", interval_json(c.sample.x_interval)},
                 {"y_interval", interval_json(c.sample.y_interval)},
                 {"samples", c.sample.n_samples},
                 {"bins", c.bins}};
  j["comparison"] = {{"x_lo", c.comparison.x_lo},
                     {"x_hi", c.comparison.x_hi},
                     {"points", c.comparison.points},
                     {"k_values", c.comparison.k_values}};
  j["output"] = {{"out", c.output.out},
                 {"peaks", c.output.peaks},
                 {"dump_samples", c.output.dump_samples}};
  j["seed"] = c.sample.seed;
  return j.dump(2) + "\n";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    if (j.contains("kind")) c.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("geometry")) {
      const auto& g = j.at("geometry");
      read(g, "a", c.geometry.a);
      read(g, "b", c.geometry.b);
      read(g, "kappa", c.geometry.kappa);
    }
    if (j.contains("propagation")) {
      const auto& p = j.at("propagation");
      read(p, "k", c.propagation.k);
      read(p, "beta", c.propagation.beta);
      read(p, "eps_series", c.propagation.eps_series);
    }
    if (j.contains("slice")) {
      const auto& s = j.at("slice");
      if (s.contains("axis")) c.slice.axis = axis_from(s.at("axis").get<std::string>());
      read(s, "fixed", c.slice.fixed);
      read(s, "lo", c.slice.lo);
      read(s, "hi", c.slice.hi);
      read(s, "points", c.slice.points);
      read(s, "include_los", c.include_los);
    }
    if (j.contains("sample")) {
      const auto& s = j.at("sample");
      if (s.contains("model")) c.sample.model = model_from(s.at("model").get<std::string>());
      read(s, "x", c.sample.base.x);
      read(s, "y", c.sample.base.y);
      if (s.contains("x_interval")) c.sample.x_interval = interval_from(s.at("x_interval"));
      if (s.contains("y_interval")) c.sample.y_interval = interval_from(s.at("y_interval"));
      read(s, "samples", c.sample.n_samples);
      read(s, "bins", c.bins);
    }
    if (j.contains("comparison")) {
      const auto& v = j.at("comparison");
      read(v, "x_lo", c.comparison.x_lo);
      read(v, "x_hi", c.comparison.x_hi);
      read(v, "points", c.comparison.points);
      read(v, "k_values", c.comparison.k_values);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      read(o, "out", c.output.out);
      read(o, "peaks", c.output.peaks);
      read(o, "dump_samples", c.output.dump_samples);
    }
    read(j, "seed", c.sample.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  return c;
}

}  // namespace wallsim
