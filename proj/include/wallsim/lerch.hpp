#pragma once

#include <complex>
#include <cstdint>

namespace wallsim {

using Complex = std::complex<double>;

/// Arguments of Phi(zeta, s, gamma) = sum_{n>=0} zeta^n / (n + gamma)^s.
///
/// Valid when |zeta| < 1, s >= 0 and gamma is not 0, -1, -2, ...
/// For s >= 0 the series converges geometrically under |zeta| < 1, so no
/// restriction on Re(s) beyond non-negativity is imposed.
struct LerchArgs {
  Complex zeta;
  double s = 0.0;
  double gamma = 1.0;
};

inline constexpr double kLerchDefaultEps = 1e-12;
inline constexpr std::int64_t kLerchMaxTerms = 10'000'000;

/// Smallest N for which the tail sum_{n>N} |zeta|^n / (n+gamma)^s is bounded by
/// |zeta|^(N+1) / ((N+1+gamma)^s (1-|zeta|)) <= eps, with N+1+gamma >= 1.
/// Throws Error(Overflow) when N would exceed kLerchMaxTerms.
std::int64_t truncation_bound(const LerchArgs& args, double eps = kLerchDefaultEps);

/// Full series. Terms with n + gamma < 0 use the principal branch,
/// (n+gamma)^s = exp(s * Log(n+gamma)).
Complex lerch_phi(const LerchArgs& args, double eps = kLerchDefaultEps);

/// The series without its n = 0 term: sum_{n>=1} zeta^n / (n+gamma)^s.
/// Requires gamma > -1 so every base is positive.
Complex lerch_tail(const LerchArgs& args, double eps = kLerchDefaultEps);

}  // namespace wallsim
