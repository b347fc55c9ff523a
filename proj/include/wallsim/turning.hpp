#pragma once

#include <functional>
#include <vector>

namespace wallsim {

using ScalarFunction = std::function<double(double)>;

enum class TurningKind { Minimum, Maximum };

struct TurningPoint {
  double t = 0.0;
  double value = 0.0;
  double second_deriv = 0.0;
  TurningKind kind = TurningKind::Minimum;
  // |P''| fell under the curvature floor; kind then comes from the third
  // difference.
  bool degenerate = false;
};

/// Step sizes for the derivative scan. The defaults tie every step to a
/// wavelength: grid = lambda/50, derivative step = grid/10, second
/// derivative step = lambda/200.
struct TurningOptions {
  double grid_step = 0.0;
  double deriv_step = 0.0;
  double second_step = 0.0;
  double location_tol = 1e-10;
  double deriv_rel_tol = 1e-8;       // deriv_tol = deriv_rel_tol * max|f|
  double curvature_rel_floor = 1e-6;  // curvature_floor = curvature_rel_floor * max|f|

  static TurningOptions for_wavelength(double wavelength);
  static TurningOptions for_wave_number(double k);
};

struct TurningScan {
  std::vector<TurningPoint> points;     // interior points, sorted by t
  std::vector<TurningPoint> endpoints;  // within one grid step of lo/hi; excluded
  bool resolution_warning = false;      // two sign changes inside one grid cell
  double max_abs_value = 0.0;           // max |f| over the scan grid
  double deriv_tol = 0.0;
};

/// Central-difference derivative (f(t+h) - f(t-h)) / 2h.
double central_derivative(const ScalarFunction& f, double t, double h);

/// Scans the derivative on a grid for sign changes and refines each by
/// bisection. f must be defined on [lo - 2 * second_step, hi + 2 * second_step].
/// Throws Error(InvalidInterval) when lo >= hi.
TurningScan find_turning_points(const ScalarFunction& f, double lo, double hi,
                                const TurningOptions& options);

struct SingularValue {
  double value = 0.0;
  int multiplicity = 0;
  std::vector<double> locations;
};

/// Groups turning points whose power values agree to collapse_rel_tol; each
/// group is one predicted singularity of the pushforward density.
std::vector<SingularValue> predict_singularities(const std::vector<TurningPoint>& points,
                                                 double collapse_rel_tol = 1e-6);

struct MonotonicPartition {
  std::vector<double> breakpoints;  // lo = c0 < c1 < ... < c_l = hi
  std::vector<int> directions;      // +1 increasing, -1 decreasing, one per interval

  std::size_t intervals() const noexcept { return directions.size(); }
};

/// Breakpoints are the interval ends plus the turning locations. Each piece
/// is checked for strict monotonicity on `check_samples` interior points;
/// a failure throws Error(Inconsistency).
MonotonicPartition monotonic_partition(const ScalarFunction& f, double lo, double hi,
                                       const std::vector<TurningPoint>& points,
                                       const TurningOptions& options, int check_samples = 1000);

}  // namespace wallsim
