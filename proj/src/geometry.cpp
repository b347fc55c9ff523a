#include "wallsim/geometry.hpp"

#include <cmath>

#include "wallsim/error.hpp"

namespace wallsim {

double TxLocation::range() const noexcept { return std::hypot(x, y); }

double TxLocation::angle() const noexcept { return std::atan2(y, x); }

void validate(const WallConfig& cfg) {
  if (!(cfg.a >= 0.0) || !(cfg.b >= 0.0) || !std::isfinite(cfg.a) || !std::isfinite(cfg.b)) {
    throw Error(ErrorKind::InvalidArgs, "wall distances a, b must be finite and >= 0");
  }
  if (!(cfg.a + cfg.b > 0.0)) throw Error(ErrorKind::InvalidArgs, "wall separation must be > 0");
  if (!(cfg.kappa >= 0.0 && cfg.kappa < 1.0)) {
    throw Error(ErrorKind::InvalidArgs, "kappa must lie in [0, 1)");
  }
}

void validate_between_walls(const WallConfig& cfg, const TxLocation& tx) {
  if (!(tx.x > -cfg.b && tx.x < cfg.a) || !std::isfinite(tx.y)) {
    throw Error(ErrorKind::InvalidArgs, "transmitter must satisfy -b < x < a");
  }
}

double image_distance(Side side, int m, const WallConfig& cfg, const TxLocation& tx) {
  if (m < 1) throw Error(ErrorKind::InvalidArgs, "image index must be >= 1");
  validate_between_walls(cfg, tx);
  return std::hypot(detail::image_horizontal(side, m, cfg.a, cfg.b, tx.x), tx.y);
}

double image_distance_symmetric(Side side, int m, double d, const TxLocation& tx) {
  if (m < 1) throw Error(ErrorKind::InvalidArgs, "image index must be >= 1");
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgs, "wall separation must be > 0");
  const double md = static_cast<double>(m) * d;
  return std::hypot(side == Side::Right ? md - tx.x : md + tx.x, tx.y);
}

double single_wall_image_distance(double a, const TxLocation& tx) {
  if (!(tx.x <= a)) throw Error(ErrorKind::InvalidArgs, "transmitter must satisfy x <= a");
  return std::hypot(2.0 * a - tx.x, tx.y);
}

}  // namespace wallsim
