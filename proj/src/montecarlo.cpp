#include "wallsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wallsim/error.hpp"
#include "wallsim/parallel.hpp"

namespace wallsim {
namespace {

void check_interval(const std::optional<Interval>& iv, double lower, double upper, const char* axis) {
  if (!iv) return;
  if (!(iv->lo <= iv->hi) || !std::isfinite(iv->lo) || !std::isfinite(iv->hi)) {
    throw Error(ErrorKind::InvalidArgs, std::string(axis) + " interval must satisfy lo <= hi");
  }
  if (!(iv->lo > lower && iv->hi < upper)) {
    throw Error(ErrorKind::IntervalOutOfWalls,
                std::string(axis) + " interval must lie strictly between the walls");
  }
}

double draw(ChunkRng& rng, const std::optional<Interval>& iv, double fixed) {
  if (!iv) return fixed;
  return iv->lo + (iv->hi - iv->lo) * rng.uniform();
}

// Fills out[i] = eval(rng) chunk by chunk.
template <typename Eval>
std::vector<double> run_chunks(const SampleSpec& spec, unsigned threads, Eval&& eval) {
  std::vector<double> out(spec.n_samples);
  const std::uint64_t chunks = (spec.n_samples + kSampleChunk - 1) / kSampleChunk;
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    ChunkRng rng(spec.seed, c);
    const std::uint64_t end = std::min<std::uint64_t>(spec.n_samples, (c + 1) * kSampleChunk);
    for (std::uint64_t i = c * kSampleChunk; i < end; ++i) out[i] = eval(rng);
  });
  return out;
}

}  // namespace

// mt19937_64 and seed_seq are fully specified by the standard, so the
// stream is the same on every conforming library.
ChunkRng::ChunkRng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  engine_.seed(seq);
}

double ChunkRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void validate(const SampleSpec& spec, const WallConfig& cfg) {
  validate(cfg);
  if (spec.n_samples == 0) throw Error(ErrorKind::InvalidArgs, "n_samples must be >= 1");
  if (spec.model == SampleModel::Location && spec.x_interval) {
    check_interval(spec.x_interval, -cfg.b, cfg.a, "x");
  } else if (!(spec.base.x > -cfg.b && spec.base.x < cfg.a)) {
    throw Error(ErrorKind::IntervalOutOfWalls, "transmitter x must lie strictly between the walls");
  }
  if (spec.model == SampleModel::Location) {
    check_interval(spec.y_interval, -INFINITY, INFINITY, "y");
  }
  if (!std::isfinite(spec.base.y)) throw Error(ErrorKind::InvalidArgs, "transmitter y must be finite");
}

std::vector<double> sample_location_power(const WallConfig& cfg, const PropagationParams& params,
                                          const SampleSpec& spec, unsigned threads) {
  if (spec.model != SampleModel::Location) {
    throw Error(ErrorKind::InvalidArgs, "sample_location_power needs the location model");
  }
  validate(spec, cfg);
  validate(params);
  return run_chunks(spec, threads, [&](ChunkRng& rng) {
    const double x = draw(rng, spec.x_interval, spec.base.x);
    const double y = draw(rng, spec.y_interval, spec.base.y);
    return reflected_signal_sum(cfg, {x, y}, params).power;
  });
}

std::vector<double> sample_phase_power(const WallConfig& cfg, const PropagationParams& params,
                                       const SampleSpec& spec, unsigned threads) {
  if (spec.model != SampleModel::Phase) {
    throw Error(ErrorKind::InvalidArgs, "sample_phase_power needs the phase model");
  }
  validate(spec, cfg);
  validate(params);
  double right = 0.0;
  double left = 0.0;
  for_each_image(cfg, spec.base, params, [&](const ImageTerm& t) {
    right += t.coefficient * t.right_attenuation;
    left += t.coefficient * t.left_attenuation;
  });
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return run_chunks(spec, threads, [&](ChunkRng& rng) {
    const double u = two_pi * rng.uniform();
    const double v = two_pi * rng.uniform();
    return std::norm(std::polar(right, u) + std::polar(left, v));
  });
}

double ks_distance_uniform(std::vector<double> u) {
  if (u.empty()) throw Error(ErrorKind::InvalidArgs, "KS distance needs samples");
  std::sort(u.begin(), u.end());
  const auto n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = std::clamp(u[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

double phase_wrap_statistics(const WallConfig& cfg, const PropagationParams& params,
                             const SampleSpec& spec, int m, unsigned threads) {
  if (m < 1) throw Error(ErrorKind::InvalidArgs, "image index must be >= 1");
  validate(spec, cfg);
  validate(params);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto phases = run_chunks(spec, threads, [&](ChunkRng& rng) {
    const double x = draw(rng, spec.x_interval, spec.base.x);
    const double y = draw(rng, spec.y_interval, spec.base.y);
    const double wrapped = std::fmod(params.k * image_distance(Side::Right, m, cfg, {x, y}), two_pi);
    return wrapped / two_pi;
  });
  return ks_distance_uniform(std::move(phases));
}

}  // namespace wallsim
