#include "dynrigid/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "dynrigid/billiard.hpp"
#include "dynrigid/errors.hpp"

namespace dynrigid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ChordDerivs {
  double L, La, Lb, Laa, Lab, Lbb;
};

ChordDerivs chord_derivs(const Boundary& c, double a, double b) {
  const Vec2 diff = c.point(b) - c.point(a);
  const double L = diff.norm();
  if (!(L > 0.0)) throw Error(ErrorKind::DegenerateChord, "zero chord in orbit functional");
  const Vec2 u = diff / L;
  const Vec2 va = c.velocity(a), vb = c.velocity(b);
  const Vec2 aa = c.acceleration(a), ab = c.acceleration(b);
  const double ua = u.dot(va), ub = u.dot(vb);
  ChordDerivs d;
  d.L = L;
  d.La = -ua;
  d.Lb = ub;
  d.Laa = -u.dot(aa) + (va.squaredNorm() - ua * ua) / L;
  d.Lbb = u.dot(ab) + (vb.squaredNorm() - ub * ub) / L;
  d.Lab = -(va.dot(vb) - ua * ub) / L;
  return d;
}

// Vertices psi_0..psi_k of the half orbit (even: psi_k = pi appended).
std::vector<double> half_orbit(int q, const std::vector<double>& free_psi) {
  std::vector<double> v;
  v.reserve(free_psi.size() + 2);
  v.push_back(0.0);
  v.insert(v.end(), free_psi.begin(), free_psi.end());
  if (q % 2 == 0) v.push_back(kPi);
  return v;
}

bool ordered(int q, const std::vector<double>& free_psi) {
  double prev = 0.0;
  for (double p : free_psi) {
    if (!(p > prev)) return false;
    prev = p;
  }
  (void)q;
  return prev < kPi;
}

struct Objective {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

Objective evaluate(const Boundary& c, int q, const std::vector<double>& free_psi) {
  const int m = static_cast<int>(free_psi.size());
  const std::vector<double> v = half_orbit(q, free_psi);
  Objective o;
  o.grad = Eigen::VectorXd::Zero(m);
  o.hess = Eigen::MatrixXd::Zero(m, m);
  // variable index of vertex i, or -1 if fixed
  auto var = [&](std::size_t i) -> int {
    if (i == 0) return -1;
    if (q % 2 == 0 && i == v.size() - 1) return -1;
    return static_cast<int>(i) - 1;
  };
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const ChordDerivs d = chord_derivs(c, v[i], v[i + 1]);
    o.value += 2.0 * d.L;
    const int a = var(i), b = var(i + 1);
    if (a >= 0) {
      o.grad[a] += 2.0 * d.La;
      o.hess(a, a) += 2.0 * d.Laa;
    }
    if (b >= 0) {
      o.grad[b] += 2.0 * d.Lb;
      o.hess(b, b) += 2.0 * d.Lbb;
    }
    if (a >= 0 && b >= 0) {
      o.hess(a, b) += 2.0 * d.Lab;
      o.hess(b, a) += 2.0 * d.Lab;
    }
  }
  if (q % 2 == 1) {
    const double pk = v.back();
    const ChordDerivs d = chord_derivs(c, pk, kTwoPi - pk);
    o.value += d.L;
    const int a = var(v.size() - 1);
    o.grad[a] += d.La - d.Lb;
    o.hess(a, a) += d.Laa - 2.0 * d.Lab + d.Lbb;
  }
  return o;
}

double residual_in_s(const Boundary& c, const Eigen::VectorXd& grad, const std::vector<double>& free_psi) {
  double r = 0.0;
  for (std::size_t i = 0; i < free_psi.size(); ++i) {
    r = std::max(r, std::abs(grad[static_cast<Eigen::Index>(i)]) * c.perimeter() / c.rho(free_psi[i]));
  }
  return r;
}

double wrap_unit(double s) { return s - std::floor(s); }

double circular_distance(double a, double b) {
  const double d = wrap_unit(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace

int reduced_dimension(int q) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be >= 2");
  return q % 2 == 0 ? q / 2 - 1 : q / 2;
}

double reduced_length(const Boundary& curve, int q, const std::vector<double>& free_psi) {
  if (static_cast<int>(free_psi.size()) != reduced_dimension(q)) {
    throw Error(ErrorKind::InvalidArgument, "wrong number of free variables");
  }
  const std::vector<double> v = half_orbit(q, free_psi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) total += 2.0 * chord_length_psi(curve, v[i], v[i + 1]);
  if (q % 2 == 1) total += chord_length_psi(curve, v.back(), kTwoPi - v.back());
  return total;
}

std::vector<double> circle_seed(int q) {
  const int m = reduced_dimension(q);
  std::vector<double> s(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = kTwoPi * (i + 1) / q;
  return s;
}

std::vector<double> free_variables(const SymmetricOrbit& orbit) {
  const int m = reduced_dimension(orbit.q);
  return {orbit.psi_points.begin() + 1, orbit.psi_points.begin() + 1 + m};
}

SymmetricOrbit complete_orbit(const BoundaryTables& tables, int q, const std::vector<double>& free_psi) {
  const Boundary& c = tables.curve;
  SymmetricOrbit o;
  o.q = q;
  o.kind = q % 2 == 0 ? OrbitKind::Even : OrbitKind::Odd;
  o.psi_points.assign(static_cast<std::size_t>(q), 0.0);
  o.s_points.assign(static_cast<std::size_t>(q), 0.0);
  const std::vector<double> half = half_orbit(q, free_psi);
  for (std::size_t i = 0; i < half.size(); ++i) {
    o.psi_points[i] = half[i];
    o.s_points[i] = c.s_of_psi(half[i]);
  }
  for (std::size_t i = 1; i < half.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(q) - i;
    if (j < half.size()) continue;
    o.psi_points[j] = kTwoPi - half[i];
    o.s_points[j] = 1.0 - o.s_points[i];
  }
  o.phi_angles.resize(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k) {
    const double a = o.psi_points[static_cast<std::size_t>(k)];
    const double b = o.psi_points[static_cast<std::size_t>((k + 1) % q)];
    const Vec2 d = (c.point(b) - c.point(a)).normalized();
    const Vec2 t = Boundary::tangent(a);
    o.phi_angles[static_cast<std::size_t>(k)] = std::atan2(cross(t, d), t.dot(d));
  }
  o.length = reduced_length(c, q, free_psi);
  return o;
}

SymmetricOrbit find_symmetric_orbit(const BoundaryTables& tables, int q,
                                    const std::optional<std::vector<double>>& seed,
                                    const OrbitOptions& opts) {
  const Boundary& c = tables.curve;
  const int m = reduced_dimension(q);
  std::vector<double> x = seed ? *seed : circle_seed(q);
  if (static_cast<int>(x.size()) != m) throw Error(ErrorKind::InvalidArgument, "seed has wrong size");
  if (!ordered(q, x)) throw Error(ErrorKind::OrderingCollapse, "seed is not strictly ordered");

  bool fallback = false;
  int it = 0;
  double res = 0.0;
  Objective obj = evaluate(c, q, x);
  res = residual_in_s(c, obj.grad, x);
  double best = res;
  int stagnant = 0;
  for (; it < opts.max_iterations && m > 0; ++it) {
    if (res < 1e-14 || (res < opts.tolerance && stagnant >= 2)) break;
    Eigen::LLT<Eigen::MatrixXd> llt(-obj.hess);
    Eigen::VectorXd step;
    if (llt.info() == Eigen::Success) {
      step = llt.solve(obj.grad);
    } else {
      // projected gradient ascent, scaled to a fraction of the smallest gap
      fallback = true;
      step = obj.grad / std::max(obj.grad.cwiseAbs().maxCoeff(), 1e-300) * (kPi / (4.0 * q));
    }
    double t = 1.0;
    bool accepted = false;
    std::vector<double> cand(x.size());
    Objective next;
    while (t > 1e-12) {
      for (std::size_t i = 0; i < x.size(); ++i) cand[i] = x[i] + t * step[static_cast<Eigen::Index>(i)];
      if (ordered(q, cand)) {
        next = evaluate(c, q, cand);
        const double nres = residual_in_s(c, next.grad, cand);
        if (next.value >= obj.value - 1e-15 * std::abs(obj.value) || nres < res) {
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (res < opts.tolerance) break;
      std::ostringstream os;
      os << "q=" << q << ": no admissible step from residual " << res;
      throw Error(ErrorKind::OrderingCollapse, os.str());
    }
    x = cand;
    obj = std::move(next);
    res = residual_in_s(c, obj.grad, x);
    if (res < 0.5 * best) {
      best = res;
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }
  if (!(res < opts.tolerance)) {
    std::ostringstream os;
    os << "q=" << q << ": gradient residual " << res << " after " << it << " iterations";
    throw Error(ErrorKind::OptimizerStalled, os.str());
  }
  bool certified = true;
  if (m > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(-obj.hess);
    certified = llt.info() == Eigen::Success;
  }
  if (!certified) {
    throw Error(ErrorKind::OptimizerStalled, "q=" + std::to_string(q) + ": critical point is not a local max");
  }
  SymmetricOrbit o = complete_orbit(tables, q, x);
  o.grad_residual = res;
  o.hessian_certified = certified;
  o.iterations = it;
  o.used_fallback = fallback;
  return o;
}

OrbitCertificate verify_orbit(const BoundaryTables& tables, const SymmetricOrbit& orbit) {
  const Boundary& c = tables.curve;
  const int q = orbit.q;
  OrbitCertificate cert;
  cert.ordered = orbit.s_points.size() == static_cast<std::size_t>(q) && orbit.s_points[0] == 0.0;
  for (int k = 1; k < q && cert.ordered; ++k) {
    cert.ordered = orbit.s_points[static_cast<std::size_t>(k)] > orbit.s_points[static_cast<std::size_t>(k - 1)] &&
                   orbit.s_points[static_cast<std::size_t>(k)] < 1.0;
  }
  if (!cert.ordered) return cert;

  std::vector<Vec2> pts(static_cast<std::size_t>(q));
  std::vector<double> psi(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k) {
    psi[static_cast<std::size_t>(k)] = c.psi_of_s(orbit.s_points[static_cast<std::size_t>(k)]);
    pts[static_cast<std::size_t>(k)] = c.point(psi[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k < q; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const Vec2& prev = pts[static_cast<std::size_t>((k + q - 1) % q)];
    const Vec2& next = pts[static_cast<std::size_t>((k + 1) % q)];
    const Vec2 din = (pts[kk] - prev).normalized();
    const Vec2 dout = (next - pts[kk]).normalized();
    const Vec2 t = Boundary::tangent(psi[kk]);
    cert.reflection_residual = std::max(cert.reflection_residual, std::abs(din.dot(t) - dout.dot(t)));
    const double mirror = orbit.s_points[static_cast<std::size_t>((q - k) % q)];
    const double expect = k == 0 ? 0.0 : 1.0 - orbit.s_points[kk];
    cert.symmetry_residual = std::max(cert.symmetry_residual, std::abs(mirror - expect));
  }

  PhasePoint p{0.0, std::cos(orbit.phi_angles[0])};
  for (int k = 1; k <= q; ++k) {
    p = forward_map(tables, p);
    cert.closure_residual = std::max(
        cert.closure_residual, circular_distance(p.s, orbit.s_points[static_cast<std::size_t>(k % q)]));
  }
  cert.passed = cert.reflection_residual < 1e-9 && cert.closure_residual < 1e-9 &&
                cert.symmetry_residual < 1e-10;
  return cert;
}

std::vector<double> length_curve(const std::vector<BoundaryTables>& members, int q) {
  std::vector<double> out;
  out.reserve(members.size());
  std::optional<std::vector<double>> seed;
  for (const auto& t : members) {
    const SymmetricOrbit o = find_symmetric_orbit(t, q, seed);
    out.push_back(o.length);
    seed = free_variables(o);
  }
  return out;
}

}  // namespace dynrigid
