#include "wallsim/lerch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wallsim/error.hpp"
#include "wallsim/summation.hpp"

namespace wallsim {
namespace {

bool is_non_positive_integer(double g) { return g <= 0.0 && std::floor(g) == g; }

void check_common(const LerchArgs& args, double eps) {
  if (!(std::abs(args.zeta) < 1.0)) {
    throw Error(ErrorKind::InvalidArgs, "lerch: |zeta| must be < 1");
  }
  if (!(args.s >= 0.0) || !std::isfinite(args.s)) {
    throw Error(ErrorKind::InvalidArgs, "lerch: s must be finite and >= 0");
  }
  if (!std::isfinite(args.gamma)) {
    throw Error(ErrorKind::InvalidArgs, "lerch: gamma must be finite");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::InvalidArgs, "lerch: eps must be > 0");
  }
}

// (n + gamma)^(-s) on the principal branch.
Complex inverse_power(double base, double s) {
  if (base > 0.0) return {std::pow(base, -s), 0.0};
  // Log(base) = ln|base| + i*pi for base < 0.
  const double mag = std::pow(-base, -s);
  const double phase = -s * std::numbers::pi;
  return std::polar(mag, phase);
}

// zeta^n accumulated by repeated multiplication drifts for large n; polar
// form keeps the modulus exact to rounding.
Complex power_of(std::int64_t n, double modulus, double arg) {
  if (n == 0) return {1.0, 0.0};
  return std::polar(std::pow(modulus, static_cast<double>(n)), arg * static_cast<double>(n));
}

Complex sum_range(const LerchArgs& args, std::int64_t first, std::int64_t last) {
  const double modulus = std::abs(args.zeta);
  const double arg = std::arg(args.zeta);
  CompensatedSum<Complex> acc;
  for (std::int64_t n = first; n <= last; ++n) {
    const Complex zn = power_of(n, modulus, arg);
    acc.add(zn * inverse_power(static_cast<double>(n) + args.gamma, args.s));
  }
  return acc.value();
}

}  // namespace

std::int64_t truncation_bound(const LerchArgs& args, double eps) {
  if (!(std::abs(args.zeta) < 1.0)) {
    throw Error(ErrorKind::InvalidArgs, "truncation_bound: |zeta| must be < 1");
  }
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgs, "truncation_bound: eps must be > 0");
  const double z = std::abs(args.zeta);
  if (z == 0.0) return 0;

  // The bound is only claimed once N + 1 + gamma >= 1.
  std::int64_t n = 0;
  if (args.gamma < 0.0) n = static_cast<std::int64_t>(std::ceil(-args.gamma));

  // Work in logs: (N+1) log z - s log(N+1+gamma) - log(1-z) <= log eps.
  const double log_z = std::log(z);
  const double log_tail = std::log1p(-z);
  const double log_eps = std::log(eps);
  auto log_bound = [&](std::int64_t k) {
    const double next = static_cast<double>(k + 1);
    return next * log_z - args.s * std::log(next + args.gamma) - log_tail;
  };

  // The bound is decreasing in N; jump close with the s = 0 estimate, then
  // walk. For s > 0 the true N is no larger than the s = 0 one.
  if (log_bound(n) <= log_eps) return n;
  const double geometric = std::ceil((log_eps + log_tail) / log_z) - 1.0;
  if (geometric > static_cast<double>(kLerchMaxTerms)) {
    // s > 0 could still bring it under the cap; check the cap itself.
    if (log_bound(kLerchMaxTerms) > log_eps) {
      std::ostringstream msg;
      msg << "truncation_bound: more than " << kLerchMaxTerms << " terms needed";
      throw Error(ErrorKind::Overflow, msg.str());
    }
  }
  std::int64_t lo = n;  // log_bound(lo) > log_eps
  std::int64_t hi = std::min<std::int64_t>(
      std::max<std::int64_t>(n + 1, static_cast<std::int64_t>(geometric) + 1), kLerchMaxTerms);
  if (log_bound(hi) > log_eps) {
    std::ostringstream msg;
    msg << "truncation_bound: more than " << kLerchMaxTerms << " terms needed";
    throw Error(ErrorKind::Overflow, msg.str());
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (log_bound(mid) <= log_eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Complex lerch_phi(const LerchArgs& args, double eps) {
  check_common(args, eps);
  if (is_non_positive_integer(args.gamma)) {
    throw Error(ErrorKind::InvalidArgs, "lerch_phi: gamma must not be 0, -1, -2, ...");
  }
  std::int64_t n_max = 0;
  try {
    n_max = truncation_bound(args, eps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    throw Error(ErrorKind::NoConvergence, "lerch_phi: term budget exhausted");
  }
  return sum_range(args, 0, n_max);
}

Complex lerch_tail(const LerchArgs& args, double eps) {
  check_common(args, eps);
  if (!(args.gamma > -1.0)) {
    throw Error(ErrorKind::InvalidArgs, "lerch_tail: gamma must be > -1");
  }
  if (args.zeta == Complex{0.0, 0.0}) return {0.0, 0.0};
  std::int64_t n_max = 0;
  try {
    n_max = truncation_bound(args, eps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    throw Error(ErrorKind::NoConvergence, "lerch_tail: term budget exhausted");
  }
  return sum_range(args, 1, std::max<std::int64_t>(n_max, 1));
}

}  // namespace wallsim
