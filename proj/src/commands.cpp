#include "wallsim/commands.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wallsim/error.hpp"

namespace wallsim {

using nlohmann::json;

namespace {

const char* kind_name(TurningKind k) { return k == TurningKind::Minimum ? "minimum" : "maximum"; }

json turning_json(const TurningPoint& tp) {
  return {{"t", tp.t},
          {"value", tp.value},
          {"second_deriv", tp.second_deriv},
          {"kind", kind_name(tp.kind)},
          {"degenerate", tp.degenerate}};
}

json singular_json(const SingularValue& sv) {
  return {{"value", sv.value}, {"multiplicity", sv.multiplicity}, {"locations", sv.locations}};
}

std::string samples_csv(const std::vector<double>& samples) {
  std::string out = "power\n";
  for (double s : samples) {
    out += format_double(s);
    out += '\n';
  }
  return out;
}

std::string samples_binary(const std::vector<double>& samples) {
  std::string out;
  out.reserve(samples.size() * 8);
  for (double s : samples) {
    const auto bits = std::bit_cast<std::uint64_t>(s);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SliceAnalysis analyse_slice(const WallConfig& cfg, const PropagationParams& params,
                            const Slice& slice, bool include_los) {
  const ScalarFunction f = [&cfg, &params, slice, include_los](double u) {
    return slice_power(cfg, params, slice, u, include_los);
  };
  SliceAnalysis out;
  out.scan = find_turning_points(f, slice.lo, slice.hi, TurningOptions::for_wave_number(params.k));
  out.singular_values = predict_singularities(out.scan.points);
  return out;
}

std::optional<Slice> prediction_slice(const SampleSpec& spec) {
  if (spec.x_interval && !spec.y_interval && spec.x_interval->hi > spec.x_interval->lo) {
    return Slice{Axis::X, spec.base.y, spec.x_interval->lo, spec.x_interval->hi, 2};
  }
  if (spec.y_interval && !spec.x_interval && spec.y_interval->hi > spec.y_interval->lo) {
    return Slice{Axis::Y, spec.base.x, spec.y_interval->lo, spec.y_interval->hi, 2};
  }
  return std::nullopt;
}

DensityRun run_sample_density(const ExperimentConfig& config, unsigned threads) {
  DensityRun run;
  const SampleSpec& spec = config.sample;
  run.samples = spec.model == SampleModel::Location
                    ? sample_location_power(config.geometry, config.propagation, spec, threads)
                    : sample_phase_power(config.geometry, config.propagation, spec, threads);
  run.histogram = build_histogram(run.samples, config.bins);
  if (const auto slice = prediction_slice(spec)) {
    run.predicted = analyse_slice(config.geometry, config.propagation, *slice).singular_values;
  }
  std::vector<double> predicted;
  for (const auto& sv : run.predicted) predicted.push_back(sv.value);
  run.report = match_peaks(detect_peaks(run.histogram), predicted, run.histogram);
  return run;
}

CommandResult cmd_power_profile(const ExperimentConfig& config) {
  const auto profile = power_profile(config.geometry, config.propagation, config.slice,
                                     config.include_los);
  std::string csv = "coordinate,power\n";
  for (const auto& p : profile) {
    csv += format_double(p.coordinate) + "," + format_double(p.power) + "\n";
  }
  return {{{config.output.out, std::move(csv)}},
          "power-profile: " + std::to_string(profile.size()) + " rows"};
}

CommandResult cmd_turning_points(const ExperimentConfig& config) {
  const SliceAnalysis a =
      analyse_slice(config.geometry, config.propagation, config.slice, config.include_los);
  json j;
  j["axis"] = config.slice.axis == Axis::X ? "x" : "y";
  j["fixed"] = config.slice.fixed;
  j["interval"] = {config.slice.lo, config.slice.hi};
  j["points"] = json::array();
  for (const auto& tp : a.scan.points) j["points"].push_back(turning_json(tp));
  j["singular_values"] = json::array();
  for (const auto& sv : a.singular_values) j["singular_values"].push_back(singular_json(sv));
  j["excluded_endpoints"] = json::array();
  for (const auto& tp : a.scan.endpoints) j["excluded_endpoints"].push_back(turning_json(tp));
  j["resolution_warning"] = a.scan.resolution_warning;
  std::ostringstream summary;
  summary << "turning-points: " << a.scan.points.size() << " points, "
          << a.singular_values.size() << " singular values";
  return {{{config.output.out, j.dump(2) + "\n"}}, summary.str()};
}

CommandResult cmd_sample_density(const ExperimentConfig& config, unsigned threads) {
  const DensityRun run = run_sample_density(config, threads);
  const Histogram& h = run.histogram;
  std::string csv = "bin_left,bin_right,count,density\n";
  for (std::size_t i = 0; i < h.bins(); ++i) {
    csv += format_double(h.edges[i]) + "," + format_double(h.edges[i + 1]) + "," +
           std::to_string(h.counts[i]) + "," + format_double(h.density[i]) + "\n";
  }

  const PeakReport& r = run.report;
  json j;
  j["model"] = config.sample.model == SampleModel::Location ? "location" : "phase";
  j["samples"] = h.sample_count;
  j["bins"] = h.bins();
  j["bin_width"] = h.width(0);
  j["detected"] = json::array();
  for (const auto& p : r.detected) {
    j["detected"].push_back({{"center", p.center}, {"height", p.height}, {"bin", p.bin}});
  }
  j["predicted"] = r.predicted;
  j["matches"] = json::array();
  for (const auto& m : r.matches) {
    j["matches"].push_back({{"detected", m.detected},
                            {"predicted", m.predicted},
                            {"center", r.detected[m.detected].center},
                            {"value", r.predicted[m.predicted]},
                            {"distance", m.distance}});
  }
  j["unmatched_detected"] = r.unmatched_detected;
  j["unmatched_predicted"] = r.unmatched_predicted;

  CommandResult out;
  out.files.push_back({config.output.out, std::move(csv)});
  const std::string peaks =
      config.output.peaks.empty() ? config.output.out + ".peaks.json" : config.output.peaks;
  out.files.push_back({peaks, j.dump(2) + "\n"});
  if (!config.output.dump_samples.empty()) {
    const std::string& path = config.output.dump_samples;
    out.files.push_back({path, ends_with(path, ".csv") ? samples_csv(run.samples)
                                                       : samples_binary(run.samples)});
  }
  std::ostringstream summary;
  summary << "sample-density: " << r.detected.size() << " peaks, " << r.matches.size()
          << " matched, " << r.unmatched_predicted.size() << " predicted unmatched";
  out.summary = summary.str();
  return out;
}

CommandResult cmd_validate_lerch(const ExperimentConfig& config) {
  const ComparisonSpec& v = config.comparison;
  json per_k = json::array();
  double worst = 0.0;
  for (double k : v.k_values) {
    PropagationParams params = config.propagation;
    params.k = k;
    double worst_k = 0.0;
    double worst_x = v.x_lo;
    for (int i = 0; i < v.points; ++i) {
      const double x = v.x_lo + (v.x_hi - v.x_lo) * static_cast<double>(i + 1) /
                                    static_cast<double>(v.points + 1);
      const TxLocation tx{x, 0.0};
      const Complex direct = reflected_signal_sum(config.geometry, tx, params).amplitude;
      const Complex closed = signal_lerch_closed_form(config.geometry, tx, params);
      const double dev = std::abs(closed - direct) / (1.0 + std::abs(direct));
      if (dev > worst_k) {
        worst_k = dev;
        worst_x = x;
      }
    }
    per_k.push_back({{"k", k}, {"max_relative_deviation", worst_k}, {"worst_x", worst_x}});
    worst = std::max(worst, worst_k);
  }
  json j;
  j["kappa"] = config.geometry.kappa;
  j["beta"] = config.propagation.beta;
  j["eps_series"] = config.propagation.eps_series;
  j["points"] = v.points;
  j["interval"] = {v.x_lo, v.x_hi};
  j["per_k"] = per_k;
  j["max_relative_deviation"] = worst;
  return {{{config.output.out, j.dump(2) + "\n"}},
          "validate-lerch: max relative deviation " + format_double(worst)};
}

CommandResult cmd_surface_bound(const ExperimentConfig& config) {
  const Slice& s = config.slice;
  std::string csv = "coordinate,power,bound\n";
  for (int i = 0; i < s.points; ++i) {
    const double u = s.coordinate(i);
    const TxLocation tx = s.at(u);
    const double power = total_signal(config.geometry, tx, config.propagation).power;
    const double bound = surface_bound_power(config.geometry, tx, config.propagation);
    csv += format_double(u) + "," + format_double(power) + "," + format_double(bound) + "\n";
  }
  return {{{config.output.out, std::move(csv)}},
          "surface-bound: " + std::to_string(s.points) + " rows"};
}

CommandResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  validate(config);
  switch (config.kind) {
    case ExperimentKind::PowerProfile: return cmd_power_profile(config);
    case ExperimentKind::TurningPoints: return cmd_turning_points(config);
    case ExperimentKind::SampleDensity: return cmd_sample_density(config, threads);
    case ExperimentKind::ValidateLerch: return cmd_validate_lerch(config);
    case ExperimentKind::SurfaceBound: return cmd_surface_bound(config);
  }
  throw Error(ErrorKind::Config, "unknown experiment kind");
}

void write_artifacts(const CommandResult& result) {
  for (const auto& file : result.files) {
    std::ofstream os(file.path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::Config, "cannot open " + file.path + " for writing");
    os.write(file.content.data(), static_cast<std::streamsize>(file.content.size()));
    if (!os) throw Error(ErrorKind::Config, "failed writing " + file.path);
  }
}

}  // namespace wallsim
