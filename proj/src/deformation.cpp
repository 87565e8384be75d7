#include "dynrigid/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "dynrigid/errors.hpp"
#include "dynrigid/fourier.hpp"

namespace dynrigid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool within(double a, double b, double rel, double abs_floor) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

std::string fmt_gap(double g) {
  std::ostringstream os;
  os << std::scientific << g;
  return os.str();
}

}  // namespace

CosineTable random_direction(unsigned seed, int kmin, int kmax) {
  if (kmin < 2 || kmax < kmin) throw Error(ErrorKind::InvalidArgument, "random direction needs 2 <= kmin <= kmax");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> r;
  double m = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    r.push_back(dist(gen));
    m = std::max(m, std::abs(r.back()));
  }
  CosineTable d;
  for (int k = kmin; k <= kmax; ++k) {
    const double kk = static_cast<double>(k);
    d.emplace_back(k, r[static_cast<std::size_t>(k - kmin)] / m / (kk * kk - 1.0));
  }
  return d;
}

DomainSpec perturbed(const DomainSpec& base, const CosineTable& direction, double amplitude) {
  std::map<int, double> c;
  for (auto [k, h] : base.support_coeffs) c[k] += h;
  for (auto [k, h] : direction) c[k] += amplitude * h;
  DomainSpec out = base;
  out.support_coeffs.assign(c.begin(), c.end());
  return out;
}

void DeformationFamily::validate() const {
  for (auto [k, h] : direction) {
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative mode in deformation direction");
    if (k == 1 && h != 0.0) {
      throw Error(ErrorKind::InvalidArgument, "k = 1 directions are translations and are excluded");
    }
  }
  if (!(tau_max > tau_min)) throw Error(ErrorKind::InvalidArgument, "empty tau range");
  for (double t : tau_grid) {
    if (t < tau_min || t > tau_max) throw Error(ErrorKind::InvalidArgument, "tau grid leaves the tau range");
  }
}

DomainSpec DeformationFamily::member(double tau) const { return perturbed(base, direction, tau); }

BoundaryTables DeformationFamily::member_tables(double tau) const {
  const DomainSpec s = member(tau);
  return build_domain_unscaled(s, s.n_samples);
}

double DeformationFamily::n_of_psi(double psi) const {
  double v = 0.0;
  double at_pi = 0.0;
  for (auto [k, h] : direction) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    v += sign * h * std::cos(k * psi);
    at_pi += sign * h;
  }
  return v - at_pi * std::cos(psi);
}

bool DeformationFamily::is_constant() const {
  return std::all_of(direction.begin(), direction.end(), [](const auto& e) { return e.second == 0.0; });
}

double richardson_derivative(const std::function<double(double)>& f, double tau, const FdOptions& opts) {
  const double h = opts.step;
  const double d1 = (f(tau + h) - f(tau - h)) / (2.0 * h);
  const double d2 = (f(tau + h / 2) - f(tau - h / 2)) / h;
  if (std::abs(d1 - d2) > opts.stability) {
    throw Error(ErrorKind::StepUnstable, "central differences at h and h/2 disagree by " + fmt_gap(d1 - d2));
  }
  return (4.0 * d2 - d1) / 3.0;
}

NormalComponent normal_component(const DeformationFamily& family, double tau, int n_points, const FdOptions& opts) {
  family.validate();
  if (n_points < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  const BoundaryTables center = family.member_tables(tau);
  const double h = opts.step;
  const Boundary plus1 = family.member_tables(tau + h).curve;
  const Boundary minus1 = family.member_tables(tau - h).curve;
  const Boundary plus2 = family.member_tables(tau + h / 2).curve;
  const Boundary minus2 = family.member_tables(tau - h / 2).curve;

  NormalComponent out;
  for (int i = 0; i < n_points; ++i) {
    const double s = static_cast<double>(i) / n_points;
    const double psi = center.curve.psi_of_s(s);
    const Vec2 N = Boundary::normal(psi);
    auto at = [&](const Boundary& b) { return b.point(b.psi_of_s(s)).dot(N); };
    const double d1 = (at(plus1) - at(minus1)) / (2.0 * h);
    const double d2 = (at(plus2) - at(minus2)) / h;
    if (std::abs(d1 - d2) > opts.stability) {
      throw Error(ErrorKind::StepUnstable, "normal component differences at h and h/2 disagree");
    }
    out.s.push_back(s);
    out.analytic.push_back(family.n_of_psi(psi));
    out.geometric.push_back((4.0 * d2 - d1) / 3.0);
    out.max_route_gap = std::max(out.max_route_gap, std::abs(out.analytic.back() - out.geometric.back()));
  }
  return out;
}

DerivativeCheck perimeter_derivative_check(const DeformationFamily& family, double tau, const FdOptions& opts) {
  family.validate();
  const std::size_t n = family.base.n_samples;
  auto perimeter = [&](double t) {
    const Boundary b = family.member_tables(t).curve;
    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) speed[i] = b.velocity(kTwoPi * static_cast<double>(i) / n).norm();
    return fourier::periodic_trapezoid(speed, kTwoPi);
  };
  DerivativeCheck c;
  c.fd_slope = richardson_derivative(perimeter, tau, opts);
  std::vector<double> nv(n);
  for (std::size_t i = 0; i < n; ++i) nv[i] = family.n_of_psi(kTwoPi * static_cast<double>(i) / n);
  c.functional = fourier::periodic_trapezoid(nv, kTwoPi);
  c.passed = within(c.fd_slope, c.functional, c.tolerance, 1e-9);
  return c;
}

DerivativeCheck length_derivative_check(const DeformationFamily& family, int q, double tau, const FdOptions& opts) {
  family.validate();
  const SymmetricOrbit center = find_symmetric_orbit(family.member_tables(tau), q);
  const std::vector<double> seed = free_variables(center);
  auto length = [&](double t) { return find_symmetric_orbit(family.member_tables(t), q, seed).length; };
  DerivativeCheck c;
  c.fd_slope = richardson_derivative(length, tau, opts);
  double v = 0.0;
  for (int k = 0; k < q; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    v += family.n_of_psi(center.psi_points[kk]) * std::sin(center.phi_angles[kk]);
  }
  c.functional = 2.0 * v;
  c.passed = within(c.fd_slope, c.functional, c.tolerance, 1e-9);
  return c;
}

std::vector<IsospectralRow> isospectral_residual(const DeformationFamily& family, const std::vector<int>& q_set,
                                                 const std::vector<double>& tau_grid) {
  family.validate();
  std::vector<IsospectralRow> rows;
  std::map<int, std::vector<double>> seeds;
  for (double tau : tau_grid) {
    const BoundaryTables t = family.member_tables(tau);
    IsospectralRow row;
    row.tau = tau;
    row.q_set = q_set;
    for (int q : q_set) {
      std::optional<std::vector<double>> seed;
      if (auto it = seeds.find(q); it != seeds.end()) seed = it->second;
      const SymmetricOrbit o = find_symmetric_orbit(t, q, seed);
      seeds[q] = free_variables(o);
      double v = 0.0;
      for (int k = 0; k < q; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        v += family.n_of_psi(o.psi_points[kk]) * std::sin(o.phi_angles[kk]);
      }
      row.values.push_back(v);
      row.max_abs = std::max(row.max_abs, std::abs(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> orbit_length_curve(const DeformationFamily& family, int q, const std::vector<double>& tau_grid) {
  family.validate();
  std::vector<BoundaryTables> members;
  members.reserve(tau_grid.size());
  for (double tau : tau_grid) members.push_back(family.member_tables(tau));
  return length_curve(members, q);
}

}  // namespace dynrigid
