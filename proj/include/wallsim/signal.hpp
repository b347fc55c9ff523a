#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wallsim/error.hpp"
#include "wallsim/geometry.hpp"
#include "wallsim/lerch.hpp"

namespace wallsim {

/// Wave number k, attenuation exponent beta (alpha(r) = r^(-beta/2)) and the
/// absolute truncation tolerance for image series.
struct PropagationParams {
  double k = 10.0;
  double beta = 4.0;
  double eps_series = 1e-12;

  double wavelength() const noexcept { return 2.0 * std::numbers::pi / k; }
  bool operator==(const PropagationParams&) const = default;
};

void validate(const PropagationParams& params);

/// Distances at or below this are rejected; alpha is singular at r = 0.
inline constexpr double kMinRange = 1e-9;
inline constexpr int kMaxImages = 1'000'000;

struct SignalValue {
  Complex amplitude;
  double power = 0.0;  // |amplitude|^2
  int images = 0;      // image pairs summed (0 when no series was involved)

  static SignalValue of(Complex amplitude, int images = 0) {
    return {amplitude, std::norm(amplitude), images};
  }
};

double attenuation(double r, double beta);

/// alpha(r) e^{jkr}.
Complex los_signal(double r, const PropagationParams& params);

/// Line of sight plus the single wall reflection, which carries a pi phase
/// flip: alpha(r)e^{jkr} - sqrt(kappa) alpha(r1) e^{jk r1}. Here kappa may be 1.
SignalValue one_wall_signal(double a, const TxLocation& tx, const PropagationParams& params,
                            double kappa);

/// One image pair of the two-wall series. coefficient = (-sqrt(kappa))^m.
struct ImageTerm {
  int m = 0;
  double coefficient = 0.0;
  double right_distance = 0.0;
  double left_distance = 0.0;
  double right_attenuation = 0.0;
  double left_attenuation = 0.0;
};

/// Visits image pairs m = 1, 2, ... and stops after the first m whose
/// certified tail bound sqrt(kappa)^m (alpha(r_m) + alpha(l_m)) / (1 - sqrt(kappa))
/// drops below params.eps_series. Returns the number of pairs visited.
template <typename Visit>
int for_each_image(const WallConfig& cfg, const TxLocation& tx, const PropagationParams& params,
                   Visit&& visit) {
  validate(cfg);
  validate(params);
  validate_between_walls(cfg, tx);
  const double q = std::sqrt(cfg.kappa);
  const double y2 = tx.y * tx.y;
  const double half_beta = 0.5 * params.beta;
  auto alpha_sq = [&](double r2) {
    if (!(r2 > kMinRange * kMinRange)) throw Error(ErrorKind::InvalidArgs, "image distance below r_min");
    return params.beta == 4.0 ? 1.0 / r2 : std::pow(r2, -0.5 * half_beta);
  };
  double coefficient = 1.0;
  for (int m = 1; m <= kMaxImages; ++m) {
    coefficient *= -q;
    ImageTerm term;
    term.m = m;
    term.coefficient = coefficient;
    const double hr = detail::image_horizontal(Side::Right, m, cfg.a, cfg.b, tx.x);
    const double hl = detail::image_horizontal(Side::Left, m, cfg.a, cfg.b, tx.x);
    const double r2 = hr * hr + y2;
    const double l2 = hl * hl + y2;
    term.right_distance = std::sqrt(r2);
    term.left_distance = std::sqrt(l2);
    term.right_attenuation = alpha_sq(r2);
    term.left_attenuation = alpha_sq(l2);
    visit(static_cast<const ImageTerm&>(term));
    const double tail =
        std::abs(coefficient) * (term.right_attenuation + term.left_attenuation) / (1.0 - q);
    if (tail < params.eps_series) return m;
  }
  throw Error(ErrorKind::NoConvergence, "image series exceeded the image budget");
}

std::vector<ImageTerm> image_series(const WallConfig& cfg, const TxLocation& tx,
                                    const PropagationParams& params);

/// Reflections only: sum_m (-sqrt(kappa))^m [alpha(r_m) e^{jk r_m} + alpha(l_m) e^{jk l_m}].
SignalValue reflected_signal_sum(const WallConfig& cfg, const TxLocation& tx,
                                 const PropagationParams& params);

/// Line of sight plus reflections.
SignalValue total_signal(const WallConfig& cfg, const TxLocation& tx,
                         const PropagationParams& params);

/// Reflections-only signal for a = b and y = 0 through two Lerch tails:
/// e^{-jkr} d^{-beta/2} T(zeta, beta/2, -r/d) + e^{jkr} d^{-beta/2} T(zeta, beta/2, r/d)
/// with zeta = -sqrt(kappa) e^{jkd}, r = |x| and T the n >= 1 part of Phi.
Complex signal_lerch_closed_form(const WallConfig& cfg, const TxLocation& tx,
                                 const PropagationParams& params);

/// Power when every path is brought to a common phase:
/// [alpha(r) + sum_m sqrt(kappa)^m (alpha(r_m) + alpha(l_m))]^2.
double surface_bound_power(const WallConfig& cfg, const TxLocation& tx,
                           const PropagationParams& params);

enum class Axis { X, Y };

/// Straight line through the room: the `axis` coordinate runs over
/// [lo, hi] in `points` uniform steps, the other coordinate is `fixed`.
struct Slice {
  Axis axis = Axis::X;
  double fixed = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;

  TxLocation at(double coordinate) const noexcept {
    return axis == Axis::X ? TxLocation{coordinate, fixed} : TxLocation{fixed, coordinate};
  }
  double coordinate(int i) const noexcept;
  bool operator==(const Slice&) const = default;
};

struct ProfilePoint {
  double coordinate = 0.0;
  double power = 0.0;
};

std::vector<ProfilePoint> power_profile(const WallConfig& cfg, const PropagationParams& params,
                                        const Slice& slice, bool include_los = false,
                                        unsigned threads = 1);

/// Power along a slice as a plain function of the moving coordinate.
double slice_power(const WallConfig& cfg, const PropagationParams& params, const Slice& slice,
                   double coordinate, bool include_los = false);

}  // namespace wallsim
