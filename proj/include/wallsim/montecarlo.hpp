#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wallsim/geometry.hpp"
#include "wallsim/signal.hpp"

namespace wallsim {

enum class SampleModel { Location, Phase };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

/// Location model: coordinates with an interval are drawn uniformly from it,
/// the others stay at `base`. Phase model: the transmitter sits at `base`
/// and one uniform phase pair is drawn per sample.
struct SampleSpec {
  SampleModel model = SampleModel::Location;
  TxLocation base;
  std::optional<Interval> x_interval;
  std::optional<Interval> y_interval;
  std::uint64_t n_samples = 100'000;
  std::uint64_t seed = 1;

  bool operator==(const SampleSpec&) const = default;
};

/// Samples per independently seeded chunk.
inline constexpr std::uint64_t kSampleChunk = 4096;

/// Uniform [0, 1) stream for one chunk (mt19937_64, 53-bit mantissa). The stream is a pure function of
/// (seed, chunk) so the output never depends on how chunks map to threads.
class ChunkRng {
 public:
  ChunkRng(std::uint64_t seed, std::uint64_t chunk);
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Throws Error(IntervalOutOfWalls) unless every sampled coordinate stays
/// strictly between the walls, Error(InvalidArgs) for n_samples == 0.
void validate(const SampleSpec& spec, const WallConfig& cfg);

/// Reflections-only power at uniformly perturbed transmitter positions.
std::vector<double> sample_location_power(const WallConfig& cfg, const PropagationParams& params,
                                          const SampleSpec& spec, unsigned threads = 0);

/// |A e^{jU} + B e^{jV}|^2 with A, B the right/left image sums at spec.base
/// and U, V independent uniform on [0, 2pi).
std::vector<double> sample_phase_power(const WallConfig& cfg, const PropagationParams& params,
                                       const SampleSpec& spec, unsigned threads = 0);

/// Kolmogorov-Smirnov distance between the sample and Uniform[0, 1).
double ks_distance_uniform(std::vector<double> u);

/// KS distance of (k R_m mod 2pi) / 2pi from uniform, R_m the right image-m
/// distance of each location-model draw.
double phase_wrap_statistics(const WallConfig& cfg, const PropagationParams& params,
                             const SampleSpec& spec, int m, unsigned threads = 0);

}  // namespace wallsim
