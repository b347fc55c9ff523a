#include "wallsim/density.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "wallsim/error.hpp"

namespace wallsim {
namespace {

struct Image {
  double low;
  double high;
  bool increasing;
};

Image image_of(const MonotonePiece& piece) {
  const double ga = piece.g(piece.lo);
  const double gb = piece.g(piece.hi);
  return {std::min(ga, gb), std::max(ga, gb), gb > ga};
}

double inverse(const MonotonePiece& piece, bool increasing, double v) {
  double a = piece.lo;
  double b = piece.hi;
  while (b - a > kInverseTol) {
    const double mid = a + 0.5 * (b - a);
    if (!(mid > a && mid < b)) break;
    const double gm = piece.g(mid);
    if ((gm < v) == increasing) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return a + 0.5 * (b - a);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

double pushforward_density_monotone(const MonotonePiece& piece, const ScalarFunction& source_density,
                                    double v) {
  if (!(piece.lo < piece.hi)) throw Error(ErrorKind::InvalidInterval, "piece needs lo < hi");
  const Image img = image_of(piece);
  if (!(v > img.low && v < img.high)) {
    throw Error(ErrorKind::OutOfRange, "value outside the image of the monotone piece");
  }
  const double u = inverse(piece, img.increasing, v);
  double h = piece.deriv_step > 0.0 ? piece.deriv_step : 1e-5 * (piece.hi - piece.lo);
  // Keep the stencil inside the piece.
  h = std::min({h, u - piece.lo, piece.hi - u});
  double slope = 0.0;
  if (h > 0.0) {
    slope = central_derivative(piece.g, u, h);
  }
  if (!(std::abs(slope) > kDerivFloor)) {
    throw Error(ErrorKind::NearSingular, "derivative vanishes at the preimage");
  }
  return source_density(u) / std::abs(slope);
}

double pushforward_density(const MonotonicPartition& partition, const ScalarFunction& f,
                           const ScalarFunction& source_density, double v, double deriv_step) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < partition.breakpoints.size(); ++i) {
    const MonotonePiece piece{f, partition.breakpoints[i], partition.breakpoints[i + 1], deriv_step};
    const Image img = image_of(piece);
    if (v > img.low && v < img.high) total += pushforward_density_monotone(piece, source_density, v);
  }
  return total;
}

double asymptotic_distribution(double t_prev, double t_next, const TurningPoint& tp, double v) {
  if (!(t_next > t_prev)) throw Error(ErrorKind::InvalidArgs, "need t_prev < t_next");
  if (!(tp.second_deriv > 0.0)) throw Error(ErrorKind::InvalidArgs, "need a minimum with P'' > 0");
  if (!(v > tp.value)) throw Error(ErrorKind::InvalidArgs, "need v > P(t)");
  return 2.0 / (t_next - t_prev) * std::sqrt(2.0 / tp.second_deriv) * std::sqrt(v - tp.value);
}

double asymptotic_density(double t_prev, double t_next, const TurningPoint& tp, double v) {
  if (!(t_next > t_prev)) throw Error(ErrorKind::InvalidArgs, "need t_prev < t_next");
  if (!(tp.second_deriv > 0.0)) throw Error(ErrorKind::InvalidArgs, "need a minimum with P'' > 0");
  if (!(v > tp.value)) throw Error(ErrorKind::InvalidArgs, "need v > P(t)");
  return 1.0 / (t_next - t_prev) * std::sqrt(2.0 / tp.second_deriv) / std::sqrt(v - tp.value);
}

std::optional<std::size_t> Histogram::locate(double v) const {
  if (counts.empty() || !(v >= edges.front() && v <= edges.back())) return std::nullopt;
  const double lo = edges.front();
  const double span = edges.back() - lo;
  const auto b = counts.size();
  auto idx = static_cast<std::size_t>(
      std::clamp(std::floor((v - lo) / span * static_cast<double>(b)), 0.0, static_cast<double>(b - 1)));
  while (idx > 0 && v < edges[idx]) --idx;
  while (idx + 1 < b && v >= edges[idx + 1]) ++idx;
  return idx;
}

Histogram build_histogram(std::span<const double> samples, int bins,
                          std::optional<std::pair<double, double>> range) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgs, "histogram needs at least one sample");
  if (bins < 1) throw Error(ErrorKind::InvalidArgs, "histogram needs at least one bin");
  double lo = 0.0;
  double hi = 0.0;
  if (range) {
    std::tie(lo, hi) = *range;
  } else {
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    lo = *mn;
    hi = *mx;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidArgs, "histogram range must be finite");
  }
  if (!(hi > lo)) throw Error(ErrorKind::DegenerateRange, "histogram range has zero width");

  Histogram h;
  const auto b = static_cast<std::size_t>(bins);
  h.edges.resize(b + 1);
  for (std::size_t i = 0; i <= b; ++i) {
    h.edges[i] = i == b ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(b);
  }
  h.counts.assign(b, 0);
  for (double s : samples) {
    const auto idx = h.locate(s);
    if (!idx) throw Error(ErrorKind::OutOfRange, "sample outside the histogram range");
    ++h.counts[*idx];
  }
  h.sample_count = samples.size();
  h.density.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    h.density[i] = static_cast<double>(h.counts[i]) /
                   (static_cast<double>(h.sample_count) * h.width(i));
  }
  return h;
}

Histogram merge_histograms(const Histogram& lhs, const Histogram& rhs) {
  if (lhs.edges != rhs.edges) throw Error(ErrorKind::InvalidArgs, "histogram edges differ");
  Histogram out = lhs;
  out.sample_count += rhs.sample_count;
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    out.counts[i] += rhs.counts[i];
    out.density[i] = static_cast<double>(out.counts[i]) /
                     (static_cast<double>(out.sample_count) * out.width(i));
  }
  return out;
}

std::vector<Peak> detect_peaks(const Histogram& h, const PeakOptions& options) {
  std::vector<Peak> peaks;
  const auto b = static_cast<std::ptrdiff_t>(h.bins());
  const std::ptrdiff_t core = options.neighborhood;
  const std::ptrdiff_t window = options.baseline_window;
  for (std::ptrdiff_t i = 0; i < b; ++i) {
    const double here = h.density[static_cast<std::size_t>(i)];
    bool local_max = here > 0.0;
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - core);
         local_max && j <= std::min(b - 1, i + core); ++j) {
      if (j != i && !(here > h.density[static_cast<std::size_t>(j)])) local_max = false;
    }
    if (!local_max) continue;

    std::vector<double> dens;
    std::vector<double> counts;
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - window);
         j <= std::min(b - 1, i + window); ++j) {
      if (std::abs(j - i) <= core) continue;
      dens.push_back(h.density[static_cast<std::size_t>(j)]);
      counts.push_back(static_cast<double>(h.counts[static_cast<std::size_t>(j)]));
    }
    if (dens.empty()) {
      for (std::ptrdiff_t j = 0; j < b; ++j) {
        if (j == i) continue;
        dens.push_back(h.density[static_cast<std::size_t>(j)]);
        counts.push_back(static_cast<double>(h.counts[static_cast<std::size_t>(j)]));
      }
    }
    const double base_density = median_of(dens);
    const double base_count = median_of(counts);
    const double count = static_cast<double>(h.counts[static_cast<std::size_t>(i)]);
    if (!(here >= options.prominence_factor * base_density)) continue;
    if (count - base_count < options.min_significance * std::sqrt(std::max(base_count, 1.0))) continue;
    const auto bin = static_cast<std::size_t>(i);
    peaks.push_back({h.center(bin), here, bin});
  }
  return peaks;
}

PeakReport match_peaks(const std::vector<Peak>& detected, const std::vector<double>& predicted,
                       const Histogram& h) {
  PeakReport report;
  report.detected = detected;
  report.predicted = predicted;
  struct Candidate {
    double distance;
    std::size_t det;
    std::size_t pred;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < detected.size(); ++i) {
    const double cutoff = detected[i].bin < h.bins() ? h.width(detected[i].bin)
                                                     : (h.edges.back() - h.edges.front()) /
                                                           static_cast<double>(h.bins());
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      const double dist = std::abs(detected[i].center - predicted[j]);
      if (dist <= cutoff) candidates.push_back({dist, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& l, const auto& r) {
    return std::tie(l.distance, l.det, l.pred) < std::tie(r.distance, r.det, r.pred);
  });
  std::vector<bool> det_used(detected.size(), false);
  std::vector<bool> pred_used(predicted.size(), false);
  for (const auto& c : candidates) {
    if (det_used[c.det] || pred_used[c.pred]) continue;
    det_used[c.det] = true;
    pred_used[c.pred] = true;
    report.matches.push_back({c.det, c.pred, c.distance});
  }
  std::sort(report.matches.begin(), report.matches.end(),
            [](const auto& l, const auto& r) { return l.predicted < r.predicted; });
  for (std::size_t i = 0; i < detected.size(); ++i) {
    if (!det_used[i]) report.unmatched_detected.push_back(i);
  }
  for (std::size_t j = 0; j < predicted.size(); ++j) {
    if (!pred_used[j]) report.unmatched_predicted.push_back(j);
  }
  return report;
}

ScalarFunction uniform_density(double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgs, "uniform density needs lo < hi");
  return [lo, hi](double u) { return u >= lo && u <= hi ? 1.0 / (hi - lo) : 0.0; };
}

}  // namespace wallsim
