#include "wallsim/signal.hpp"

#include <cmath>

#include "wallsim/parallel.hpp"
#include "wallsim/summation.hpp"

namespace wallsim {
namespace {

Complex phasor(double k, double r) { return std::polar(1.0, k * r); }

void check_slice(const WallConfig& cfg, const Slice& slice) {
  if (slice.points < 2) throw Error(ErrorKind::InvalidArgs, "slice needs at least 2 points");
  if (!(slice.lo <= slice.hi) || !std::isfinite(slice.lo) || !std::isfinite(slice.hi)) {
    throw Error(ErrorKind::InvalidArgs, "slice interval must satisfy lo <= hi");
  }
  if (slice.axis == Axis::X) {
    if (!(slice.lo > -cfg.b && slice.hi < cfg.a)) {
      throw Error(ErrorKind::InvalidArgs, "x slice must lie strictly between the walls");
    }
  } else if (!(slice.fixed > -cfg.b && slice.fixed < cfg.a)) {
    throw Error(ErrorKind::InvalidArgs, "y slice must be fixed strictly between the walls");
  }
}

}  // namespace

void validate(const PropagationParams& params) {
  if (!(params.k > 0.0) || !std::isfinite(params.k)) {
    throw Error(ErrorKind::InvalidArgs, "wave number k must be > 0");
  }
  if (!(params.beta > 0.0) || !std::isfinite(params.beta)) {
    throw Error(ErrorKind::InvalidArgs, "attenuation exponent beta must be > 0");
  }
  if (!(params.eps_series > 0.0)) throw Error(ErrorKind::InvalidArgs, "eps_series must be > 0");
}

double attenuation(double r, double beta) {
  if (!(r > kMinRange)) throw Error(ErrorKind::InvalidArgs, "distance must exceed r_min");
  return std::pow(r, -0.5 * beta);
}

Complex los_signal(double r, const PropagationParams& params) {
  return attenuation(r, params.beta) * phasor(params.k, r);
}

SignalValue one_wall_signal(double a, const TxLocation& tx, const PropagationParams& params,
                            double kappa) {
  validate(params);
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw Error(ErrorKind::InvalidArgs, "kappa must lie in [0, 1]");
  const double r = tx.range();
  const double r1 = single_wall_image_distance(a, tx);
  const Complex s = los_signal(r, params) - std::sqrt(kappa) * los_signal(r1, params);
  return SignalValue::of(s, 1);
}

std::vector<ImageTerm> image_series(const WallConfig& cfg, const TxLocation& tx,
                                    const PropagationParams& params) {
  std::vector<ImageTerm> terms;
  for_each_image(cfg, tx, params, [&](const ImageTerm& t) { terms.push_back(t); });
  return terms;
}

SignalValue reflected_signal_sum(const WallConfig& cfg, const TxLocation& tx,
                                 const PropagationParams& params) {
  CompensatedSum<Complex> acc;
  const int m = for_each_image(cfg, tx, params, [&](const ImageTerm& t) {
    acc.add(t.coefficient * (t.right_attenuation * phasor(params.k, t.right_distance) +
                             t.left_attenuation * phasor(params.k, t.left_distance)));
  });
  return SignalValue::of(acc.value(), m);
}

SignalValue total_signal(const WallConfig& cfg, const TxLocation& tx,
                         const PropagationParams& params) {
  const SignalValue reflected = reflected_signal_sum(cfg, tx, params);
  return SignalValue::of(los_signal(tx.range(), params) + reflected.amplitude, reflected.images);
}

Complex signal_lerch_closed_form(const WallConfig& cfg, const TxLocation& tx,
                                 const PropagationParams& params) {
  validate(cfg);
  // k = 0 is allowed here: the closed form stays finite for a static field.
  validate(PropagationParams{params.k == 0.0 ? 1.0 : params.k, params.beta, params.eps_series});
  const double d = cfg.separation();
  if (std::abs(cfg.a - cfg.b) > 1e-12 * d) {
    throw Error(ErrorKind::InvalidArgs, "closed form needs symmetric walls (a = b)");
  }
  if (tx.y != 0.0) throw Error(ErrorKind::InvalidArgs, "closed form needs y = 0");
  const double r = std::abs(tx.x);
  if (!(r > 0.0 && r < 0.5 * d)) {
    throw Error(ErrorKind::InvalidArgs, "closed form needs 0 < |x| < d/2");
  }
  const double s = 0.5 * params.beta;
  const double scale = std::pow(d, -s);
  // Each tail is multiplied by d^{-s}; split the budget between the two.
  const double eps = 0.5 * params.eps_series / scale;
  const Complex zeta = -std::sqrt(cfg.kappa) * phasor(params.k, d);
  const Complex toward = lerch_tail({zeta, s, -r / d}, eps);
  const Complex away = lerch_tail({zeta, s, r / d}, eps);
  return scale * (phasor(-params.k, r) * toward + phasor(params.k, r) * away);
}

double surface_bound_power(const WallConfig& cfg, const TxLocation& tx,
                           const PropagationParams& params) {
  CompensatedSum<double> acc;
  acc.add(attenuation(tx.range(), params.beta));
  for_each_image(cfg, tx, params, [&](const ImageTerm& t) {
    acc.add(std::abs(t.coefficient) * (t.right_attenuation + t.left_attenuation));
  });
  const double amplitude = acc.value();
  return amplitude * amplitude;
}

double Slice::coordinate(int i) const noexcept {
  if (i <= 0) return lo;
  if (i >= points - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double slice_power(const WallConfig& cfg, const PropagationParams& params, const Slice& slice,
                   double coordinate, bool include_los) {
  const TxLocation tx = slice.at(coordinate);
  return include_los ? total_signal(cfg, tx, params).power
                     : reflected_signal_sum(cfg, tx, params).power;
}

std::vector<ProfilePoint> power_profile(const WallConfig& cfg, const PropagationParams& params,
                                        const Slice& slice, bool include_los, unsigned threads) {
  validate(cfg);
  validate(params);
  check_slice(cfg, slice);
  std::vector<ProfilePoint> out(static_cast<std::size_t>(slice.points));
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (out.size() + kChunk - 1) / kChunk;
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(out.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double u = slice.coordinate(static_cast<int>(i));
      out[i] = {u, slice_power(cfg, params, slice, u, include_los)};
    }
  });
  return out;
}

}  // namespace wallsim
