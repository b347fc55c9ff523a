#pragma once

#include <string>
#include <vector>

#include "wallsim/density.hpp"
#include "wallsim/geometry.hpp"
#include "wallsim/montecarlo.hpp"
#include "wallsim/signal.hpp"

namespace wallsim {

enum class ExperimentKind { PowerProfile, TurningPoints, SampleDensity, ValidateLerch, SurfaceBound };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Grid for comparing the Lerch closed form with the direct image sum.
struct ComparisonSpec {
  double x_lo = 0.05;
  double x_hi = 0.45;
  int points = 200;
  std::vector<double> k_values{10.0, 100.0};
  bool operator==(const ComparisonSpec&) const = default;
};

struct OutputSpec {
  std::string out;           // main CSV / JSON file
  std::string peaks;         // sample-density peak report; empty = out + ".peaks.json"
  std::string dump_samples;  // optional raw samples (.csv text, anything else binary f64 LE)
  bool operator==(const OutputSpec&) const = default;
};

/// Everything one CLI run needs. Serialises to a single JSON document.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PowerProfile;
  WallConfig geometry;
  PropagationParams propagation;
  Slice slice{Axis::X, 0.0, 0.05, 0.45, 1000};
  bool include_los = false;
  SampleSpec sample{SampleModel::Location, {0.25, 0.0}, Interval{0.15, 0.35}, std::nullopt,
                    100'000, 1};
  int bins = 200;
  ComparisonSpec comparison;
  OutputSpec output;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Checks every module-level invariant the selected experiment relies on.
/// Throws Error(Config) describing the first violation.
void validate(const ExperimentConfig& config);

std::string serialize(const ExperimentConfig& config);
/// Missing fields keep their defaults. Throws Error(Config) on malformed input.
ExperimentConfig parse_config(const std::string& text);

}  // namespace wallsim
