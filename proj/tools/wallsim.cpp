// wallsim: data files for two-wall reflection experiments.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wallsim/commands.hpp"
#include "wallsim/config.hpp"
#include "wallsim/error.hpp"

namespace {

using namespace wallsim;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Flag values; unset flags leave the config untouched.
struct Overrides {
  std::string config_path;
  std::optional<double> a, b, kappa, k, beta, eps;
  std::optional<std::uint64_t> samples, seed;
  std::optional<int> bins, points;
  std::optional<std::string> out, peaks, dump_samples, axis, model;
  std::optional<double> fixed, lo, hi, x, y;
  std::vector<double> x_interval, y_interval, k_values;
  bool no_x_interval = false;
  bool no_y_interval = false;
  bool include_los = false;
  bool print_config = false;
  unsigned threads = 0;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment document")->check(CLI::ExistingFile);
  cmd->add_option("--a", o.a, "distance to the right wall");
  cmd->add_option("--b", o.b, "distance to the left wall");
  cmd->add_option("--kappa", o.kappa, "power reflection coefficient");
  cmd->add_option("--k", o.k, "wave number");
  cmd->add_option("--beta", o.beta, "path-loss exponent");
  cmd->add_option("--eps", o.eps, "series truncation tolerance");
  cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
  cmd->add_option("--bins", o.bins, "histogram bins");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--out", o.out, "main output file");
  cmd->add_option("--peaks", o.peaks, "peak report path (sample-density)");
  cmd->add_option("--dump-samples", o.dump_samples, "raw samples; .csv for text, else f64 LE");
  cmd->add_option("--axis", o.axis, "slice axis (x or y)");
  cmd->add_option("--fixed", o.fixed, "the other coordinate of the slice");
  cmd->add_option("--lo", o.lo, "slice start");
  cmd->add_option("--hi", o.hi, "slice end");
  cmd->add_option("--points", o.points, "slice or comparison grid points");
  cmd->add_flag("--include-los", o.include_los, "add the direct path to slice power");
  cmd->add_option("--model", o.model, "sampling model (location or phase)");
  cmd->add_option("--x", o.x, "base transmitter x");
  cmd->add_option("--y", o.y, "base transmitter y");
  cmd->add_option("--x-interval", o.x_interval, "sample x uniformly on LO HI")->expected(2);
  cmd->add_option("--y-interval", o.y_interval, "sample y uniformly on LO HI")->expected(2);
  cmd->add_flag("--no-x-interval", o.no_x_interval, "keep x fixed");
  cmd->add_flag("--no-y-interval", o.no_y_interval, "keep y fixed");
  cmd->add_option("--k-values", o.k_values, "wave numbers for validate-lerch");
  cmd->add_option("--threads", o.threads, "sampling threads (0 = hardware)");
  cmd->add_flag("--print-config", o.print_config, "print the resolved config and exit");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Config, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ExperimentConfig resolve(ExperimentKind kind, const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : parse_config(read_file(o.config_path));
  c.kind = kind;
  if (o.a) c.geometry.a = *o.a;
  if (o.b) c.geometry.b = *o.b;
  if (o.kappa) c.geometry.kappa = *o.kappa;
  if (o.k) c.propagation.k = *o.k;
  if (o.beta) c.propagation.beta = *o.beta;
  if (o.eps) c.propagation.eps_series = *o.eps;
  if (o.samples) c.sample.n_samples = *o.samples;
  if (o.seed) c.sample.seed = *o.seed;
  if (o.bins) c.bins = *o.bins;
  if (o.out) c.output.out = *o.out;
  if (o.peaks) c.output.peaks = *o.peaks;
  if (o.dump_samples) c.output.dump_samples = *o.dump_samples;
  if (o.axis) {
    if (*o.axis == "x") c.slice.axis = Axis::X;
    else if (*o.axis == "y") c.slice.axis = Axis::Y;
    else throw Error(ErrorKind::Config, "--axis must be x or y");
  }
  if (o.fixed) c.slice.fixed = *o.fixed;
  if (o.lo) c.slice.lo = *o.lo;
  if (o.hi) c.slice.hi = *o.hi;
  if (o.points) {
    c.slice.points = *o.points;
    c.comparison.points = *o.points;
  }
  if (o.lo && kind == ExperimentKind::ValidateLerch) c.comparison.x_lo = *o.lo;
  if (o.hi && kind == ExperimentKind::ValidateLerch) c.comparison.x_hi = *o.hi;
  if (o.include_los) c.include_los = true;
  if (o.model) {
    if (*o.model == "location") c.sample.model = SampleModel::Location;
    else if (*o.model == "phase") c.sample.model = SampleModel::Phase;
    else throw Error(ErrorKind::Config, "--model must be location or phase");
  }
  if (o.x) c.sample.base.x = *o.x;
  if (o.y) c.sample.base.y = *o.y;
  if (!o.x_interval.empty()) c.sample.x_interval = Interval{o.x_interval[0], o.x_interval[1]};
  if (!o.y_interval.empty()) c.sample.y_interval = Interval{o.y_interval[0], o.y_interval[1]};
  if (o.no_x_interval) c.sample.x_interval.reset();
  if (o.no_y_interval) c.sample.y_interval.reset();
  if (!o.k_values.empty()) c.comparison.k_values = o.k_values;
  if (c.output.out.empty() && !o.print_config) {
    throw Error(ErrorKind::Config, "no output path (--out or output.out)");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-wall reflection simulator"};
  app.require_subcommand(1);

  Overrides overrides;
  std::optional<ExperimentKind> chosen;
  for (auto kind : {ExperimentKind::PowerProfile, ExperimentKind::TurningPoints,
                    ExperimentKind::SampleDensity, ExperimentKind::ValidateLerch,
                    ExperimentKind::SurfaceBound}) {
    CLI::App* cmd = app.add_subcommand(to_string(kind));
    add_flags(cmd, overrides);
    cmd->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const ExperimentConfig config = resolve(*chosen, overrides);
    if (overrides.print_config) {
      std::cout << serialize(config);
      return 0;
    }
    const CommandResult result = run_experiment(config, overrides.threads);
    write_artifacts(result);
    std::cerr << result.summary << '\n';
  } catch (const Error& e) {
    std::cerr << "wallsim: " << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kExitConfig : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "wallsim: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
