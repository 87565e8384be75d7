#include "dynrigid/billiard.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "dynrigid/errors.hpp"

namespace dynrigid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double s) {
  double r = s - std::floor(s);
  if (r >= 1.0) r -= 1.0;
  return r;
}

}  // namespace

double chord_length_psi(const Boundary& curve, double psi, double psi2) {
  return (curve.point(psi2) - curve.point(psi)).norm();
}

double chord_length(const BoundaryTables& tables, double s, double s2) {
  const double gap = wrap_unit(s2 - s);
  if (gap == 0.0) throw Error(ErrorKind::DegenerateChord, "chord endpoints coincide");
  const Boundary& c = tables.curve;
  return chord_length_psi(c, c.psi_of_s(s), c.psi_of_s(s2));
}

double next_collision_psi(const Boundary& curve, double psi, double phi) {
  const Vec2 p0 = curve.point(psi);
  const Vec2 t0 = Boundary::tangent(psi);
  // angle of the chord p0 -> gamma(b) seen from T(psi); increases from 0 to pi
  auto f = [&](double b) {
    const Vec2 c = curve.point(b) - p0;
    const double ang = std::atan2(cross(t0, c), t0.dot(c));
    const double dang = cross(c, curve.velocity(b)) / c.squaredNorm();
    return std::make_pair(ang - phi, dang);
  };
  const double lo = psi + 1e-12;
  const double hi = psi + kTwoPi - 1e-12;
  std::uintmax_t iters = 200;
  const double b = boost::math::tools::newton_raphson_iterate(f, psi + 2.0 * phi, lo, hi, 50, iters);
  const double resid = std::abs(f(b).first);
  if (!std::isfinite(b) || resid > 1e-11) {
    std::ostringstream os;
    os << "no chord root from psi=" << psi << " at phi=" << phi << " (residual " << resid
       << ", " << iters << " iterations)";
    throw Error(ErrorKind::RootBracketFailure, os.str());
  }
  return b;
}

PhasePoint forward_map(const BoundaryTables& tables, PhasePoint p) {
  if (!(std::abs(p.y) < 1.0 - kTangencyGuard)) {
    throw Error(ErrorKind::DegenerateAngle, "|y| too close to 1 for the forward map");
  }
  const Boundary& c = tables.curve;
  const double psi = c.psi_of_s(wrap_unit(p.s));
  const double phi = std::acos(p.y);
  const double psi2 = next_collision_psi(c, psi, phi);
  const Vec2 d = (c.point(psi2) - c.point(psi)).normalized();
  return {wrap_unit(c.s_of_psi(psi2)), d.dot(Boundary::tangent(psi2))};
}

double symmetrized_successor(const BoundaryTables& tables, double s, double phi, bool allow_zero) {
  if (phi == 0.0) {
    if (allow_zero) return s;
    throw Error(ErrorKind::DegenerateAngle, "phi = 0 has no second intersection");
  }
  if (!(std::abs(phi) < kPi)) throw Error(ErrorKind::InvalidArgument, "phi must lie in (-pi, pi)");
  const Boundary& c = tables.curve;
  const double base = std::floor(s);
  const double psi = c.psi_of_s(s - base);
  const double start = c.s_of_psi(psi);
  if (phi > 0.0) return s + c.s_of_psi(next_collision_psi(c, psi, phi)) - start;
  // backward branch: follow the reversed line, then unwrap one turn
  const double s2 = c.s_of_psi(next_collision_psi(c, psi, phi + kPi)) - start;
  return s + s2 - 1.0;
}

double successor_remainder(const BoundaryTables& tables, double s, double phi) {
  return symmetrized_successor(tables, s, phi) - 2.0 * s + symmetrized_successor(tables, s, -phi);
}

}  // namespace dynrigid
