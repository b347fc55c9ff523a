#include <cmath>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "wallsim/signal.hpp"

using namespace wallsim;

namespace {

// Reflected amplitude and total power from a 30-digit sum over 400+ images.
struct Reference {
  WallConfig cfg;
  PropagationParams params;
  TxLocation tx;
  Complex reflected;
  double total_power;
};

const Reference kReferences[] = {
    {{0.5, 0.5, 0.5}, {10.0, 4.0, 1e-13}, {0.2, 0.0},
     {-0.220797257585675534, -0.982369111402030387}, 585.944719253577326},
    {{0.5, 0.5, 0.5}, {10.0, 4.0, 1e-13}, {0.1, 0.3},
     {0.583462102558072605, 0.728766615478664484}, 88.9033137757695294},
    {{0.3, 0.7, 0.5}, {7.3, 3.0, 1e-13}, {-0.2, 0.15},
     {-0.433108386208071992, 0.0705423880285187727}, 67.0276191365185375},
    {{0.5, 0.5, 0.9}, {100.0, 4.0, 1e-13}, {0.25, 0.0},
     {-1.81408487853882943, 0.7570639611903389}, 199.11765705935838},
};

}  // namespace

TEST(Signal, Attenuation) {
  EXPECT_DOUBLE_EQ(attenuation(2.0, 4.0), 0.25);
  EXPECT_DOUBLE_EQ(attenuation(4.0, 1.0), 0.5);
  EXPECT_WALLSIM_ERROR(attenuation(0.0, 4.0), InvalidArgs);
  EXPECT_WALLSIM_ERROR(attenuation(-1.0, 4.0), InvalidArgs);
}

TEST(Signal, LineOfSight) {
  const Complex v = los_signal(0.5, {10.0, 4.0});
  EXPECT_NEAR(std::abs(v), 4.0, 1e-14);
  EXPECT_NEAR(std::arg(v), std::remainder(5.0, 2.0 * std::numbers::pi), 1e-14);
}

TEST(Signal, OneWallHasPhaseFlip) {
  const PropagationParams p{10.0, 2.0};
  const TxLocation tx{0.1, 0.2};
  const double r = tx.range();
  const double r1 = std::hypot(0.9, 0.2);
  const Complex expected = std::polar(1.0 / r, 10.0 * r) - std::polar(1.0 / r1, 10.0 * r1);
  EXPECT_NEAR(std::abs(one_wall_signal(0.5, tx, p, 1.0).amplitude - expected), 0.0, 1e-13);
}

TEST(Signal, MatchesHighPrecisionImageSum) {
  for (const auto& ref : kReferences) {
    const SignalValue refl = reflected_signal_sum(ref.cfg, ref.tx, ref.params);
    EXPECT_LT(std::abs(refl.amplitude - ref.reflected), 1e-12) << ref.tx.x << "," << ref.tx.y;
    EXPECT_NEAR(refl.power, std::norm(ref.reflected), 1e-11);
    const SignalValue total = total_signal(ref.cfg, ref.tx, ref.params);
    EXPECT_NEAR(total.power, ref.total_power, 1e-10 * ref.total_power);
  }
}

TEST(Signal, ImageCountGrowsWithKappa) {
  const TxLocation tx{0.2, 0.0};
  const PropagationParams p{10.0, 4.0, 1e-12};
  const int few = reflected_signal_sum({0.5, 0.5, 0.1}, tx, p).images;
  const int many = reflected_signal_sum({0.5, 0.5, 0.9}, tx, p).images;
  EXPECT_GT(few, 0);
  EXPECT_GT(many, few);
}

TEST(Signal, SeriesStopsOnCertifiedTail) {
  const WallConfig cfg{0.5, 0.5, 0.5};
  const TxLocation tx{0.2, 0.1};
  const PropagationParams p{10.0, 4.0, 1e-9};
  const auto terms = image_series(cfg, tx, p);
  ASSERT_FALSE(terms.empty());
  const double q = std::sqrt(cfg.kappa);
  const auto& last = terms.back();
  EXPECT_LT(std::abs(last.coefficient) * (last.right_attenuation + last.left_attenuation) / (1 - q), 1e-9);
  if (terms.size() > 1) {
    const auto& prev = terms[terms.size() - 2];
    EXPECT_GE(std::abs(prev.coefficient) * (prev.right_attenuation + prev.left_attenuation) / (1 - q), 1e-9);
  }
  // Coefficients alternate in sign and decay geometrically.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    EXPECT_EQ(terms[i].m, static_cast<int>(i + 1));
    EXPECT_NEAR(terms[i].coefficient, std::pow(-q, static_cast<double>(i + 1)), 1e-15);
  }
}

TEST(Signal, NoReflectionsWhenKappaIsZero) {
  const WallConfig cfg{0.5, 0.5, 0.0};
  const TxLocation tx{0.2, 0.1};
  const PropagationParams p{10.0, 4.0};
  EXPECT_EQ(reflected_signal_sum(cfg, tx, p).amplitude, Complex(0.0, 0.0));
  EXPECT_NEAR(total_signal(cfg, tx, p).power, std::pow(tx.range(), -4.0), 1e-10);
  EXPECT_NEAR(surface_bound_power(cfg, tx, p), std::pow(tx.range(), -4.0), 1e-10);
}

TEST(Signal, ClosedFormEqualsImageSum) {
  const WallConfig cfg{0.5, 0.5, 0.5};
  for (double k : {3.0, 10.0, 100.0}) {
    for (double beta : {2.0, 3.0, 4.0}) {
      const PropagationParams p{k, beta, 1e-13};
      for (double x : {-0.4, -0.1, 0.05, 0.2, 0.45}) {
        const Complex direct = reflected_signal_sum(cfg, {x, 0.0}, p).amplitude;
        const Complex closed = signal_lerch_closed_form(cfg, {x, 0.0}, p);
        EXPECT_LT(std::abs(closed - direct) / (1.0 + std::abs(direct)), 1e-11)
            << "k=" << k << " beta=" << beta << " x=" << x;
      }
    }
  }
}

TEST(Signal, ClosedFormStaticField) {
  // k = 0: every phase is 1, so the series is real.
  const WallConfig cfg{0.5, 0.5, 0.5};
  const double q = std::sqrt(0.5);
  double expected = 0.0;
  for (int m = 1; m < 200; ++m) {
    expected += std::pow(-q, m) * (std::pow(m - 0.2, -2.0) + std::pow(m + 0.2, -2.0));
  }
  const Complex closed = signal_lerch_closed_form(cfg, {0.2, 0.0}, {0.0, 4.0, 1e-14});
  EXPECT_NEAR(closed.real(), expected, 1e-13);
  EXPECT_NEAR(closed.imag(), 0.0, 1e-13);
}

TEST(Signal, ClosedFormNearUnitKappa) {
  const WallConfig cfg{0.5, 0.5, 0.999};
  const PropagationParams p{10.0, 4.0, 1e-12};
  const Complex direct = reflected_signal_sum(cfg, {0.2, 0.0}, p).amplitude;
  const Complex closed = signal_lerch_closed_form(cfg, {0.2, 0.0}, p);
  EXPECT_LT(std::abs(closed - direct) / (1.0 + std::abs(direct)), 1e-8);
}

TEST(Signal, ClosedFormPreconditions) {
  const PropagationParams p{10.0, 4.0};
  EXPECT_WALLSIM_ERROR(signal_lerch_closed_form({0.3, 0.7, 0.5}, {0.1, 0.0}, p), InvalidArgs);
  EXPECT_WALLSIM_ERROR(signal_lerch_closed_form({0.5, 0.5, 0.5}, {0.1, 0.1}, p), InvalidArgs);
  EXPECT_WALLSIM_ERROR(signal_lerch_closed_form({0.5, 0.5, 0.5}, {0.0, 0.0}, p), InvalidArgs);
}

TEST(Signal, SurfaceBoundDominatesPower) {
  const WallConfig cfg{0.4, 0.6, 0.7};
  const PropagationParams p{37.0, 3.0};
  for (double x = -0.55; x < 0.4; x += 0.013) {
    for (double y : {-0.3, 0.0, 0.21}) {
      if (std::hypot(x, y) < 1e-3) continue;
      const TxLocation tx{x, y};
      const double bound = surface_bound_power(cfg, tx, p);
      EXPECT_GE(bound - total_signal(cfg, tx, p).power, -1e-12 * bound);
    }
  }
}

TEST(Signal, RejectsBadInputs) {
  EXPECT_WALLSIM_ERROR(reflected_signal_sum({0.5, 0.5, 1.0}, {0.1, 0.0}, {}), InvalidArgs);
  EXPECT_WALLSIM_ERROR(reflected_signal_sum({}, {0.6, 0.0}, {}), InvalidArgs);
  EXPECT_WALLSIM_ERROR(reflected_signal_sum({}, {0.1, 0.0}, {-1.0, 4.0}), InvalidArgs);
  EXPECT_WALLSIM_ERROR(reflected_signal_sum({}, {0.1, 0.0}, {10.0, 0.0}), InvalidArgs);
  EXPECT_WALLSIM_ERROR(reflected_signal_sum({}, {0.1, 0.0}, {10.0, 4.0, 0.0}), InvalidArgs);
  EXPECT_WALLSIM_ERROR(total_signal({}, {0.0, 0.0}, {}), InvalidArgs);
}

TEST(Signal, SliceGrid) {
  const Slice s{Axis::Y, 0.1, -0.5, 0.5, 11};
  EXPECT_DOUBLE_EQ(s.coordinate(0), -0.5);
  EXPECT_DOUBLE_EQ(s.coordinate(10), 0.5);
  EXPECT_NEAR(s.coordinate(3), -0.2, 1e-15);
  EXPECT_EQ(s.at(0.3), (TxLocation{0.1, 0.3}));
}

TEST(Signal, ProfileIndependentOfThreads) {
  const WallConfig cfg;
  const PropagationParams p{100.0, 4.0};
  const Slice s{Axis::X, 0.0, 0.05, 0.45, 1000};
  const auto one = power_profile(cfg, p, s, false, 1);
  const auto four = power_profile(cfg, p, s, false, 4);
  ASSERT_EQ(one.size(), 1000u);
  ASSERT_EQ(four.size(), 1000u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].coordinate, four[i].coordinate);
    EXPECT_EQ(one[i].power, four[i].power);
  }
  EXPECT_EQ(one[17].power, slice_power(cfg, p, s, one[17].coordinate));
  EXPECT_EQ(one[17].power, reflected_signal_sum(cfg, s.at(one[17].coordinate), p).power);
}

TEST(Signal, ProfileRejectsSliceThroughReceiverWithLos) {
  const Slice s{Axis::X, 0.0, -0.2, 0.2, 11};
  EXPECT_WALLSIM_ERROR(power_profile(WallConfig{}, {}, s, true), InvalidArgs);
  EXPECT_NO_THROW(power_profile(WallConfig{}, {}, s, false));
}
