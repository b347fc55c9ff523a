#pragma once

#include <string>
#include <vector>

#include "wallsim/config.hpp"
#include "wallsim/density.hpp"
#include "wallsim/turning.hpp"

namespace wallsim {

/// A file a command wants written, kept in memory so callers can inspect it.
struct Artifact {
  std::string path;
  std::string content;
};

struct CommandResult {
  std::vector<Artifact> files;
  std::string summary;  // one line for the terminal
};

/// Turning points of the power along a slice and the singular values they
/// predict. Steps follow the wave number of `params`.
struct SliceAnalysis {
  TurningScan scan;
  std::vector<SingularValue> singular_values;
};

SliceAnalysis analyse_slice(const WallConfig& cfg, const PropagationParams& params,
                            const Slice& slice, bool include_los = false);

/// Histogram, peak report and raw samples of one sample-density run.
struct DensityRun {
  std::vector<double> samples;
  Histogram histogram;
  PeakReport report;
  std::vector<SingularValue> predicted;
};

/// The 1-D location slice whose singular values a sample spec is compared
/// against, if it has exactly one sampled axis.
std::optional<Slice> prediction_slice(const SampleSpec& spec);

DensityRun run_sample_density(const ExperimentConfig& config, unsigned threads = 0);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double v);

CommandResult cmd_power_profile(const ExperimentConfig& config);
CommandResult cmd_turning_points(const ExperimentConfig& config);
CommandResult cmd_sample_density(const ExperimentConfig& config, unsigned threads = 0);
CommandResult cmd_validate_lerch(const ExperimentConfig& config);
CommandResult cmd_surface_bound(const ExperimentConfig& config);

/// Validates the config, then dispatches on config.kind.
CommandResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Throws Error(Config) when a file cannot be written.
void write_artifacts(const CommandResult& result);

}  // namespace wallsim
