#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wallsim/turning.hpp"

namespace wallsim {

/// A strictly monotonic restriction g of some function to (lo, hi).
struct MonotonePiece {
  ScalarFunction g;
  double lo = 0.0;
  double hi = 0.0;
  double deriv_step = 0.0;  // 0 selects 1e-5 * (hi - lo)
};

inline constexpr double kDerivFloor = 1e-12;
inline constexpr double kInverseTol = 1e-12;

/// f_U(g^{-1}(v)) / |g'(g^{-1}(v))|. The inverse is found by bisection.
/// Throws Error(OutOfRange) when v is outside the open image of the piece and
/// Error(NearSingular) when |g'| <= kDerivFloor at the preimage.
double pushforward_density_monotone(const MonotonePiece& piece, const ScalarFunction& source_density,
                                    double v);

/// Sum of the monotone formula over every piece of `partition` whose image
/// contains v.
double pushforward_density(const MonotonicPartition& partition, const ScalarFunction& f,
                           const ScalarFunction& source_density, double v,
                           double deriv_step = 0.0);

/// Leading-order law near a minimum for U uniform on (t_prev, t_next):
/// F(v) ~ (2/(t_next - t_prev)) (2/P''(t))^{1/2} (v - P(t))^{1/2}.
double asymptotic_distribution(double t_prev, double t_next, const TurningPoint& tp, double v);

/// Derivative of the above: (1/(t_next - t_prev)) (2/P''(t))^{1/2} (v - P(t))^{-1/2}.
double asymptotic_density(double t_prev, double t_next, const TurningPoint& tp, double v);

struct Histogram {
  std::vector<double> edges;           // B + 1 strictly increasing
  std::vector<std::uint64_t> counts;   // B
  std::vector<double> density;         // counts / (sample_count * width)
  std::uint64_t sample_count = 0;

  std::size_t bins() const noexcept { return counts.size(); }
  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  /// Index of the bin holding v, or nullopt outside [edges.front(), edges.back()].
  std::optional<std::size_t> locate(double v) const;
};

/// Equal-width bins over [min, max] of the samples, or over `range` when
/// given (samples outside it are rejected). The top edge belongs to the last
/// bin. Throws Error(DegenerateRange) when the range has zero width.
Histogram build_histogram(std::span<const double> samples, int bins,
                          std::optional<std::pair<double, double>> range = std::nullopt);

/// Bin-wise sum of histograms with identical edges.
Histogram merge_histograms(const Histogram& lhs, const Histogram& rhs);

struct Peak {
  double center = 0.0;
  double height = 0.0;
  std::size_t bin = 0;
};

/// A bin is a peak when it is a strict local maximum over +/- `neighborhood`
/// bins, its count is at least prominence_factor times the local baseline
/// (median count over +/- baseline_window bins, core excluded), and it
/// clears that baseline by min_significance Poisson standard deviations.
struct PeakOptions {
  double prominence_factor = 1.5;
  int neighborhood = 2;
  int baseline_window = 10;
  double min_significance = 4.0;
};

std::vector<Peak> detect_peaks(const Histogram& h, const PeakOptions& options = {});

struct PeakMatch {
  std::size_t detected = 0;   // index into PeakReport::detected
  std::size_t predicted = 0;  // index into PeakReport::predicted
  double distance = 0.0;
};

struct PeakReport {
  std::vector<Peak> detected;
  std::vector<double> predicted;
  std::vector<PeakMatch> matches;
  std::vector<std::size_t> unmatched_detected;
  std::vector<std::size_t> unmatched_predicted;
};

/// Greedy nearest-first matching; a pair qualifies when it is at most one
/// bin width apart. Each detected and predicted entry is used at most once.
PeakReport match_peaks(const std::vector<Peak>& detected, const std::vector<double>& predicted,
                       const Histogram& h);

/// Density of U uniform on (lo, hi).
ScalarFunction uniform_density(double lo, double hi);

}  // namespace wallsim
