#pragma once

namespace wallsim {

/// Two parallel vertical walls at x = a (right) and x = -b (left), receiver
/// at the origin. kappa is the fraction of power kept per bounce.
struct WallConfig {
  double a = 0.5;
  double b = 0.5;
  double kappa = 0.5;

  double separation() const noexcept { return a + b; }
  bool operator==(const WallConfig&) const = default;
};

/// Transmitter position in Cartesian coordinates.
struct TxLocation {
  double x = 0.0;
  double y = 0.0;

  double range() const noexcept;  // r = sqrt(x^2 + y^2)
  double angle() const noexcept;  // theta = atan2(y, x)
  bool operator==(const TxLocation&) const = default;
};

enum class Side { Right, Left };

/// Throws Error(InvalidArgs) unless a, b >= 0, a + b > 0 and 0 <= kappa < 1.
void validate(const WallConfig& cfg);

/// Throws Error(InvalidArgs) unless -b < x < a.
void validate_between_walls(const WallConfig& cfg, const TxLocation& tx);

/// Path length via image number m >= 1 on the given side.
///
/// Odd m = 2n+1 is the path whose ray crosses the room an even number of
/// times (2n): right sqrt((2nd + 2a - x)^2 + y^2), left sqrt((2nd + 2b + x)^2 + y^2).
/// Even m = 2n+2 crosses an odd number of times: right
/// sqrt((2(n+1)d - x)^2 + y^2), left sqrt((2(n+1)d + x)^2 + y^2).
/// With a = b both collapse to m*d -/+ x.
double image_distance(Side side, int m, const WallConfig& cfg, const TxLocation& tx);

/// a = b = d/2 specialisation: sqrt((m d -/+ x)^2 + y^2).
double image_distance_symmetric(Side side, int m, double d, const TxLocation& tx);

/// Path length via the mirror image in a single wall at x = a.
double single_wall_image_distance(double a, const TxLocation& tx);

namespace detail {

// Horizontal leg of image m, without validation. Shared by image_distance
// and the series loops in the signal module.
inline double image_horizontal(Side side, int m, double a, double b, double x) noexcept {
  const double d = a + b;
  if (m % 2 == 1) {
    const double n = static_cast<double>((m - 1) / 2);
    return side == Side::Right ? 2.0 * n * d + 2.0 * a - x : 2.0 * n * d + 2.0 * b + x;
  }
  const double n1 = static_cast<double>(m / 2);
  return side == Side::Right ? 2.0 * n1 * d - x : 2.0 * n1 * d + x;
}

}  // namespace detail

}  // namespace wallsim
