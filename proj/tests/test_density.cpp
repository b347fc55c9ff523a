#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "wallsim/density.hpp"

using namespace wallsim;

namespace {

constexpr double kPi = std::numbers::pi;

Histogram from_counts(const std::vector<std::uint64_t>& counts) {
  std::vector<double> samples;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::uint64_t c = 0; c < counts[i]; ++c) samples.push_back(static_cast<double>(i) + 0.5);
  }
  return build_histogram(samples, static_cast<int>(counts.size()),
                         std::pair{0.0, static_cast<double>(counts.size())});
}

}  // namespace

TEST(Density, MonotonePushforwardOfExp) {
  // V = e^U, U ~ U(0,1): f_V(v) = 1/v on (1, e).
  const MonotonePiece piece{[](double u) { return std::exp(u); }, 0.0, 1.0, 1e-6};
  const auto fu = uniform_density(0.0, 1.0);
  for (double v : {1.1, 1.5, 2.0, 2.6}) {
    EXPECT_NEAR(pushforward_density_monotone(piece, fu, v), 1.0 / v, 1e-8) << v;
  }
  EXPECT_WALLSIM_ERROR(pushforward_density_monotone(piece, fu, 0.9), OutOfRange);
  EXPECT_WALLSIM_ERROR(pushforward_density_monotone(piece, fu, 3.0), OutOfRange);
}

TEST(Density, DecreasingPiece) {
  const MonotonePiece piece{[](double u) { return 1.0 - u * u; }, 0.0, 1.0, 1e-7};
  const auto fu = uniform_density(0.0, 1.0);
  // U = sqrt(1 - v), |g'| = 2 sqrt(1 - v).
  EXPECT_NEAR(pushforward_density_monotone(piece, fu, 0.36), 1.0 / (2.0 * 0.8), 1e-8);
}

TEST(Density, NearSingularPreimage) {
  // g'(0) = 0 for t^3.
  const MonotonePiece piece{[](double u) { return u * u * u; }, -1.0, 1.0, 1e-7};
  EXPECT_WALLSIM_ERROR(pushforward_density_monotone(piece, uniform_density(-1.0, 1.0), 0.0), NearSingular);
}

TEST(Density, ArcsineLaw) {
  // V = sin U, U ~ U(0, pi): f_V(v) = 2 / (pi sqrt(1 - v^2)).
  const ScalarFunction h = [](double u) { return std::sin(u); };
  const MonotonicPartition part{{0.0, kPi / 2.0, kPi}, {1, -1}};
  const auto fu = uniform_density(0.0, kPi);
  for (double v : {0.05, 0.3, 0.7, 0.95}) {
    EXPECT_NEAR(pushforward_density(part, h, fu, v, 1e-7), 2.0 / (kPi * std::sqrt(1.0 - v * v)), 1e-6) << v;
  }
  EXPECT_EQ(pushforward_density(part, h, fu, 1.5), 0.0);
}

TEST(Density, AsymptoticIsExactForQuadratic) {
  // P(r) = r^2, U ~ U(-1, 1): both branches give 1 / (2 sqrt v).
  const TurningPoint tp{0.0, 0.0, 2.0, TurningKind::Minimum, false};
  const ScalarFunction p = [](double r) { return r * r; };
  const MonotonicPartition part{{-1.0, 0.0, 1.0}, {-1, 1}};
  const auto fu = uniform_density(-1.0, 1.0);
  for (double v = 0.01; v < 1.0; v += 0.0731) {
    const double exact = 1.0 / (2.0 * std::sqrt(v));
    EXPECT_NEAR(asymptotic_density(-1.0, 1.0, tp, v), exact, 4e-16 * exact);
    EXPECT_NEAR(asymptotic_distribution(-1.0, 1.0, tp, v), std::sqrt(v), 4e-16);
    EXPECT_NEAR(pushforward_density(part, p, fu, v, 1e-6), exact, 1e-8 * exact);
  }
}

TEST(Density, AsymptoticPreconditions) {
  const TurningPoint mn{0.0, 1.0, 2.0, TurningKind::Minimum, false};
  const TurningPoint mx{0.0, 1.0, -2.0, TurningKind::Maximum, false};
  EXPECT_WALLSIM_ERROR(asymptotic_density(-1.0, 1.0, mn, 1.0), InvalidArgs);
  EXPECT_WALLSIM_ERROR(asymptotic_density(1.0, -1.0, mn, 2.0), InvalidArgs);
  EXPECT_WALLSIM_ERROR(asymptotic_density(-1.0, 1.0, mx, 2.0), InvalidArgs);
  EXPECT_WALLSIM_ERROR(asymptotic_distribution(-1.0, 1.0, mn, 0.5), InvalidArgs);
}

TEST(Density, HistogramBinning) {
  const std::vector<double> s{0.0, 0.1, 0.25, 0.5, 0.75, 0.99, 1.0};
  const Histogram h = build_histogram(s, 4);
  ASSERT_EQ(h.bins(), 4u);
  EXPECT_EQ(h.edges, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  // Left-closed bins; the top edge goes to the last bin.
  EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{2, 1, 1, 3}));
  EXPECT_EQ(h.sample_count, 7u);
  double mass = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) mass += h.density[i] * h.width(i);
  EXPECT_NEAR(mass, 1.0, 1e-15);
  EXPECT_EQ(h.locate(1.0), 3u);
  EXPECT_EQ(h.locate(0.25), 1u);
  EXPECT_FALSE(h.locate(1.01).has_value());
}

TEST(Density, HistogramErrors) {
  const std::vector<double> same{2.0, 2.0, 2.0};
  EXPECT_WALLSIM_ERROR(build_histogram(same, 10), DegenerateRange);
  const std::vector<double> one{1.0};
  EXPECT_WALLSIM_ERROR(build_histogram(one, 1), DegenerateRange);
  const std::vector<double> s{0.1, 0.5};
  EXPECT_WALLSIM_ERROR(build_histogram(s, 0), InvalidArgs);
  EXPECT_WALLSIM_ERROR(build_histogram(std::vector<double>{}, 4), InvalidArgs);
  EXPECT_WALLSIM_ERROR(build_histogram(s, 4, std::pair{0.2, 1.0}), OutOfRange);
}

TEST(Density, MergeAddsCounts) {
  const std::vector<double> a{0.1, 0.2, 0.9};
  const std::vector<double> b{0.6, 0.7};
  const auto range = std::pair{0.0, 1.0};
  const Histogram m = merge_histograms(build_histogram(a, 2, range), build_histogram(b, 2, range));
  EXPECT_EQ(m.counts, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(m.sample_count, 5u);
  EXPECT_NEAR(m.density[1], 3.0 / (5.0 * 0.5), 1e-15);
  EXPECT_WALLSIM_ERROR(merge_histograms(build_histogram(a, 2, range), build_histogram(a, 3, range)), InvalidArgs);
}

TEST(Density, FlatHistogramHasNoPeaks) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(200'000);
  for (auto& v : s) v = u(rng);
  EXPECT_TRUE(detect_peaks(build_histogram(s, 200)).empty());
}

TEST(Density, SpikesOnBackground) {
  std::vector<std::uint64_t> counts(100, 400);
  counts[20] = 1200;  // strong, isolated
  counts[60] = 900;
  counts[61] = 700;   // shoulder, not a strict maximum
  counts[80] = 440;   // within noise of the baseline
  const auto peaks = detect_peaks(from_counts(counts));
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].bin, 20u);
  EXPECT_EQ(peaks[1].bin, 60u);
  EXPECT_DOUBLE_EQ(peaks[0].center, 20.5);
}

TEST(Density, GreedyMatching) {
  std::vector<std::uint64_t> counts(10, 1);
  const Histogram h = from_counts(counts);  // unit-width bins
  const std::vector<Peak> det{{2.5, 1.0, 2}, {5.5, 1.0, 5}, {8.5, 1.0, 8}};
  // 5.6 is closest to 5.5; 4.9 then has no partner left within one bin.
  const std::vector<double> pred{5.6, 4.9, 2.0, 9.7};
  const PeakReport r = match_peaks(det, pred, h);
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0].detected, 1u);
  EXPECT_EQ(r.matches[0].predicted, 0u);
  EXPECT_EQ(r.matches[1].detected, 0u);
  EXPECT_EQ(r.matches[1].predicted, 2u);
  EXPECT_NEAR(r.matches[1].distance, 0.5, 1e-15);
  EXPECT_EQ(r.unmatched_detected, (std::vector<std::size_t>{2}));
  EXPECT_EQ(r.unmatched_predicted, (std::vector<std::size_t>{1, 3}));
}

TEST(Density, UniformDensity) {
  const auto f = uniform_density(1.0, 3.0);
  EXPECT_EQ(f(2.0), 0.5);
  EXPECT_EQ(f(3.5), 0.0);
  EXPECT_WALLSIM_ERROR(uniform_density(1.0, 1.0), InvalidArgs);
}
