#include "wallsim/turning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wallsim/error.hpp"

namespace wallsim {
namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Scanner {
  const ScalarFunction& f;
  TurningOptions opt;
  double deriv_tol = 0.0;
  double curvature_floor = 0.0;

  double deriv(double t) const { return central_derivative(f, t, opt.deriv_step); }

  // Bisection on the numerical derivative. Keeps going past location_tol
  // until |D| is under deriv_tol or the bracket cannot shrink further.
  double refine(double a, double b, double da, double db) const {
    const int sa = sign_of(da);
    for (int iter = 0; iter < 400; ++iter) {
      if (b - a <= opt.location_tol && std::min(std::abs(da), std::abs(db)) <= deriv_tol) break;
      const double mid = a + 0.5 * (b - a);
      if (!(mid > a && mid < b)) break;
      const double dm = deriv(mid);
      if (dm == 0.0) return mid;
      if (sign_of(dm) == sa) {
        a = mid;
        da = dm;
      } else {
        b = mid;
        db = dm;
      }
    }
    return std::abs(da) <= std::abs(db) ? a : b;
  }

  TurningPoint classify(double t) const {
    const double h = opt.second_step;
    const double f0 = f(t);
    const double fp = f(t + h);
    const double fm = f(t - h);
    TurningPoint tp;
    tp.t = t;
    tp.value = f0;
    tp.second_deriv = (fp - 2.0 * f0 + fm) / (h * h);
    if (std::abs(tp.second_deriv) > curvature_floor) {
      tp.kind = tp.second_deriv > 0.0 ? TurningKind::Minimum : TurningKind::Maximum;
    } else {
      tp.degenerate = true;
      const double f2p = f(t + 2.0 * h);
      const double f2m = f(t - 2.0 * h);
      const double third = (f2p - 2.0 * fp + 2.0 * fm - f2m) / (2.0 * h * h * h);
      // A flat symmetric extremum (t^4) has no usable third difference;
      // fall back on the wider even spread.
      const double test = std::abs(third) * h > curvature_floor ? third : f2p + f2m - 2.0 * f0;
      tp.kind = test > 0.0 ? TurningKind::Minimum : TurningKind::Maximum;
    }
    return tp;
  }
};

void dedupe(std::vector<TurningPoint>& pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.t < r.t; });
  std::vector<TurningPoint> out;
  for (const auto& p : pts) {
    if (!out.empty() && p.t - out.back().t <= tol) continue;
    out.push_back(p);
  }
  pts = std::move(out);
}

}  // namespace

TurningOptions TurningOptions::for_wavelength(double wavelength) {
  if (!(wavelength > 0.0)) throw Error(ErrorKind::InvalidArgs, "wavelength must be > 0");
  TurningOptions o;
  o.grid_step = wavelength / 50.0;
  o.deriv_step = o.grid_step / 10.0;
  o.second_step = wavelength / 200.0;
  return o;
}

TurningOptions TurningOptions::for_wave_number(double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgs, "wave number must be > 0");
  return for_wavelength(2.0 * std::numbers::pi / k);
}

double central_derivative(const ScalarFunction& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

TurningScan find_turning_points(const ScalarFunction& f, double lo, double hi,
                                const TurningOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidInterval, "turning point scan needs lo < hi");
  }
  TurningOptions opt = options;
  if (!(opt.grid_step > 0.0 && opt.deriv_step > 0.0 && opt.second_step > 0.0)) {
    throw Error(ErrorKind::InvalidArgs, "turning point steps must be > 0");
  }
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / opt.grid_step)));
  const double step = (hi - lo) / static_cast<double>(cells);

  std::vector<double> grid(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    grid[i] = i == cells ? hi : lo + step * static_cast<double>(i);
  }

  TurningScan scan;
  for (double t : grid) scan.max_abs_value = std::max(scan.max_abs_value, std::abs(f(t)));
  Scanner sc{f, opt};
  sc.deriv_tol = opt.deriv_rel_tol * scan.max_abs_value;
  sc.curvature_floor = opt.curvature_rel_floor * scan.max_abs_value;
  scan.deriv_tol = sc.deriv_tol;

  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) d[i] = sc.deriv(grid[i]);

  std::vector<TurningPoint> found;
  // Stationary at an end of the window: nothing to bracket, but still report.
  if (std::abs(d.front()) <= sc.deriv_tol) found.push_back(sc.classify(lo));
  if (std::abs(d.back()) <= sc.deriv_tol) found.push_back(sc.classify(hi));

  std::ptrdiff_t prev = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int s = sign_of(d[i]);
    if (s == 0) continue;
    if (prev >= 0) {
      const auto p = static_cast<std::size_t>(prev);
      if (sign_of(d[p]) != s) {
        found.push_back(sc.classify(sc.refine(grid[p], grid[i], d[p], d[i])));
      } else if (i == p + 1) {
        // Same sign at both ends of a cell; an even number of changes may hide inside.
        const double mid = 0.5 * (grid[p] + grid[i]);
        const double dm = sc.deriv(mid);
        if (sign_of(dm) == -s) {
          scan.resolution_warning = true;
          found.push_back(sc.classify(sc.refine(grid[p], mid, d[p], dm)));
          found.push_back(sc.classify(sc.refine(mid, grid[i], dm, d[i])));
        }
      }
    }
    prev = static_cast<std::ptrdiff_t>(i);
  }

  dedupe(found, 2.0 * opt.location_tol);
  for (const auto& tp : found) {
    if (tp.t - lo < step || hi - tp.t < step) {
      scan.endpoints.push_back(tp);
    } else {
      scan.points.push_back(tp);
    }
  }
  return scan;
}

std::vector<SingularValue> predict_singularities(const std::vector<TurningPoint>& points,
                                                 double collapse_rel_tol) {
  std::vector<TurningPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.value < r.value; });
  std::vector<SingularValue> out;
  double anchor = 0.0;
  double sum = 0.0;
  for (const auto& p : sorted) {
    const bool joins = !out.empty() &&
                       std::abs(p.value - anchor) <=
                           collapse_rel_tol * std::max(std::abs(p.value), std::abs(anchor));
    if (!joins) {
      out.push_back({});
      anchor = p.value;
      sum = 0.0;
    }
    auto& sv = out.back();
    sum += p.value;
    ++sv.multiplicity;
    sv.value = sum / sv.multiplicity;
    sv.locations.push_back(p.t);
  }
  for (auto& sv : out) std::sort(sv.locations.begin(), sv.locations.end());
  return out;
}

MonotonicPartition monotonic_partition(const ScalarFunction& f, double lo, double hi,
                                       const std::vector<TurningPoint>& points,
                                       const TurningOptions& options, int check_samples) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidInterval, "partition needs lo < hi");
  MonotonicPartition part;
  part.breakpoints.push_back(lo);
  std::vector<double> inner;
  for (const auto& p : points) {
    if (p.t > lo && p.t < hi) inner.push_back(p.t);
  }
  std::sort(inner.begin(), inner.end());
  for (double t : inner) {
    if (t > part.breakpoints.back()) part.breakpoints.push_back(t);
  }
  part.breakpoints.push_back(hi);

  for (std::size_t i = 0; i + 1 < part.breakpoints.size(); ++i) {
    const double a = part.breakpoints[i];
    const double b = part.breakpoints[i + 1];
    const double h = std::min(options.deriv_step, 0.25 * (b - a));
    int dir = sign_of(central_derivative(f, 0.5 * (a + b), h));
    if (dir == 0) dir = sign_of(f(b) - f(a));
    if (dir == 0) throw Error(ErrorKind::Inconsistency, "flat piece in monotonic partition");
    part.directions.push_back(dir);

    double last = 0.0;
    for (int j = 0; j < check_samples; ++j) {
      const double u = a + (b - a) * static_cast<double>(j + 1) / static_cast<double>(check_samples + 1);
      const double v = f(u);
      if (j > 0 && !(dir > 0 ? v > last : v < last)) {
        throw Error(ErrorKind::Inconsistency,
                    "piece is not strictly monotonic; scan grid too coarse?");
      }
      last = v;
    }
  }
  return part;
}

}  // namespace wallsim
