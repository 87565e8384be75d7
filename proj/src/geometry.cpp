#include "dynrigid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "dynrigid/errors.hpp"
#include "dynrigid/fourier.hpp"

namespace dynrigid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raw cosine coefficients h_0..h_K of the support function in theta.
std::vector<double> raw_support(const DomainSpec& spec) {
  std::vector<double> h(static_cast<std::size_t>(spec.max_mode()) + 1, 0.0);
  for (auto [k, v] : spec.support_coeffs) h[static_cast<std::size_t>(k)] += v;
  return h;
}

void validate_spec(const DomainSpec& spec) {
  for (auto [k, v] : spec.sine_coeffs) {
    if (v != 0.0) {
      throw Error(ErrorKind::SymmetryViolation,
                  "sine term k=" + std::to_string(k) + " breaks the reflection symmetry");
    }
  }
  std::set<int> seen;
  for (auto [k, v] : spec.support_coeffs) {
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative mode index");
    if (k == 1) {
      throw Error(ErrorKind::InvalidArgument, "k = 1 modes are translations and are not allowed");
    }
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
    if (!seen.insert(k).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate mode k=" + std::to_string(k));
    }
  }
  if (spec.coeff(0) <= 0.0) throw Error(ErrorKind::InvalidArgument, "h_0 must be positive");
  if (spec.smoothness_r < 1) throw Error(ErrorKind::InvalidArgument, "smoothness_r must be >= 1");
}

BoundaryTables build_impl(const DomainSpec& spec, std::size_t n, bool normalize) {
  validate_spec(spec);
  if (n < 512 || !fourier::is_power_of_two(n)) {
    throw Error(ErrorKind::InvalidArgument, "n_samples must be a power of two >= 512");
  }
  const std::vector<double> h = raw_support(spec);
  const std::size_t kmax = h.size() - 1;
  if (8 * kmax > n) {
    throw Error(ErrorKind::ResolutionTooLow,
                "mode " + std::to_string(kmax) + " is not resolved by " + std::to_string(n) + " samples");
  }

  // psi = theta - pi; the k = 1 term translates the marked point to the origin.
  std::vector<double> c(std::max<std::size_t>(kmax, 1) + 1, 0.0);
  double h_at_pi = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[k] = sign * h[k];
    h_at_pi += sign * h[k];
  }
  c[1] = -h_at_pi;
  if (normalize) {
    const double perimeter = kTwoPi * h[0];
    for (double& v : c) v /= perimeter;
  }
  Boundary curve(std::move(c));

  const std::size_t n_check = std::max<std::size_t>(n, 4096);
  double rho_min = curve.rho(0.0);
  for (std::size_t i = 0; i < n_check; ++i) {
    rho_min = std::min(rho_min, curve.rho(kTwoPi * static_cast<double>(i) / static_cast<double>(n_check)));
  }
  if (!(rho_min > 0.0)) {
    throw Error(ErrorKind::NonConvex, "radius of curvature reaches " + std::to_string(rho_min));
  }

  auto trapezoid_perimeter = [&](std::size_t m) {
    std::vector<double> r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = curve.rho(kTwoPi * static_cast<double>(i) / static_cast<double>(m));
    return fourier::periodic_trapezoid(r, kTwoPi);
  };
  if (std::abs(trapezoid_perimeter(n) - trapezoid_perimeter(n / 2)) > 1e-9 * curve.perimeter()) {
    throw Error(ErrorKind::ResolutionTooLow, "perimeter quadrature not converged");
  }

  BoundaryTables t;
  t.curve = curve;
  t.n_samples = n;
  t.smoothness_r = spec.smoothness_r;
  t.normalized = normalize;
  t.perimeter = curve.perimeter();
  t.marked_index = 0;
  t.auxiliary_index = n / 2;
  t.s_grid.resize(n);
  t.psi_of_s.resize(n);
  t.theta_of_s.resize(n);
  t.rho.resize(n);
  t.points.resize(n);
  t.tangents.resize(n);
  t.normals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    const double psi = curve.psi_of_s(s);
    t.s_grid[i] = s;
    t.psi_of_s[i] = psi;
    t.theta_of_s[i] = std::fmod(psi + std::numbers::pi, kTwoPi);
    t.rho[i] = curve.rho(psi);
    t.points[i] = curve.point(psi);
    t.tangents[i] = Boundary::tangent(psi);
    t.normals[i] = Boundary::normal(psi);
  }

  const double scale = std::max(1.0, t.perimeter);
  for (std::size_t i = 1; i < n; ++i) {
    const Vec2& a = t.points[i];
    const Vec2& b = t.points[n - i];
    if (std::abs(a.x() - b.x()) > 1e-10 * scale || std::abs(a.y() + b.y()) > 1e-10 * scale) {
      throw Error(ErrorKind::SymmetryViolation, "tables are not reflection symmetric");
    }
  }
  if (t.points[0].norm() > 1e-12 * scale || t.points[n / 2].x() <= 0.0 ||
      std::abs(t.points[n / 2].y()) > 1e-10 * scale) {
    throw Error(ErrorKind::SymmetryViolation, "marked/auxiliary points are off the symmetry axis");
  }
  return t;
}

}  // namespace

DomainSpec DomainSpec::circle(double h0) {
  DomainSpec s;
  s.support_coeffs = {{0, h0}};
  return s;
}

DomainSpec DomainSpec::single_mode(int k, double amplitude) {
  DomainSpec s;
  s.support_coeffs = {{0, 1.0}};
  if (amplitude != 0.0) s.support_coeffs.emplace_back(k, amplitude);
  return s;
}

double DomainSpec::coeff(int k) const {
  double v = 0.0;
  for (auto [kk, hk] : support_coeffs) {
    if (kk == k) v += hk;
  }
  return v;
}

int DomainSpec::max_mode() const {
  int m = 0;
  for (auto [k, v] : support_coeffs) m = std::max(m, k);
  return m;
}

Boundary::Boundary(std::vector<double> support_cos) : c_(std::move(support_cos)) {
  rho_c_.resize(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const double kk = static_cast<double>(k);
    rho_c_[k] = (1.0 - kk * kk) * c_[k];
  }
  perimeter_ = kTwoPi * rho_c_[0];
}

double Boundary::support(double psi) const { return fourier::eval_cosine_series(c_, psi); }

double Boundary::support_d1(double psi) const {
  double v = 0.0;
  for (std::size_t k = 1; k < c_.size(); ++k) {
    const double kk = static_cast<double>(k);
    v -= kk * c_[k] * std::sin(kk * psi);
  }
  return v;
}

double Boundary::rho(double psi) const { return fourier::eval_cosine_series(rho_c_, psi); }

double Boundary::rho_d1(double psi) const {
  double v = 0.0;
  for (std::size_t k = 2; k < rho_c_.size(); ++k) {
    const double kk = static_cast<double>(k);
    v -= kk * rho_c_[k] * std::sin(kk * psi);
  }
  return v;
}

Vec2 Boundary::normal(double psi) { return {-std::cos(psi), -std::sin(psi)}; }

Vec2 Boundary::tangent(double psi) { return {std::sin(psi), -std::cos(psi)}; }

Vec2 Boundary::point(double psi) const {
  return support(psi) * normal(psi) + support_d1(psi) * tangent(psi);
}

double Boundary::s_of_psi(double psi) const {
  double v = rho_c_[0] * psi;
  for (std::size_t k = 2; k < rho_c_.size(); ++k) {
    const double kk = static_cast<double>(k);
    v += rho_c_[k] * std::sin(kk * psi) / kk;
  }
  return v / perimeter_;
}

double Boundary::psi_of_s(double s) const {
  const double turns = std::floor(s);
  const double frac = s - turns;
  if (frac == 0.0) return kTwoPi * turns;
  auto f = [&](double psi) {
    return std::make_pair(s_of_psi(psi) - frac, rho(psi) / perimeter_);
  };
  std::uintmax_t iters = 100;
  const double psi = boost::math::tools::newton_raphson_iterate(f, kTwoPi * frac, 0.0, kTwoPi, 52, iters);
  return psi + kTwoPi * turns;
}

double BoundaryTables::min_rho() const { return *std::min_element(rho.begin(), rho.end()); }

BoundaryTables build_domain(const DomainSpec& spec, std::size_t n_samples) {
  return build_impl(spec, n_samples, true);
}

BoundaryTables build_domain(const DomainSpec& spec) { return build_impl(spec, spec.n_samples, true); }

BoundaryTables build_domain_unscaled(const DomainSpec& spec, std::size_t n_samples) {
  return build_impl(spec, n_samples, false);
}

double spec_rho(const DomainSpec& spec, double theta) {
  double v = 0.0;
  for (auto [k, hk] : spec.support_coeffs) {
    const double kk = static_cast<double>(k);
    v += (1.0 - kk * kk) * hk * std::cos(kk * theta);
  }
  return v;
}

namespace {

// Sup norms of derivatives 0..order of (gamma - gamma_disk) on an n-point arc-length grid.
std::vector<double> derivative_sups(const Boundary& curve, std::size_t n, int order) {
  const double radius = 1.0 / kTwoPi;
  std::vector<double> dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    const Vec2 g = curve.point(curve.psi_of_s(s));
    dx[i] = g.x() - (radius - radius * std::cos(kTwoPi * s));
    dy[i] = g.y() + radius * std::sin(kTwoPi * s);
  }
  std::vector<double> sups;
  for (int m = 0; m <= order; ++m) {
    const auto ddx = fourier::spectral_derivative(dx, m, 1e-14);
    const auto ddy = fourier::spectral_derivative(dy, m, 1e-14);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::hypot(ddx[i], ddy[i]));
    sups.push_back(sup);
  }
  return sups;
}

}  // namespace

double closeness_to_circle(const BoundaryTables& tables) {
  if (!tables.normalized) {
    throw Error(ErrorKind::NotNormalized, "closeness to a circle is defined on unit-perimeter tables");
  }
  const int order = tables.smoothness_r + 1;
  const auto fine = derivative_sups(tables.curve, tables.n_samples, order);
  const auto coarse = derivative_sups(tables.curve, tables.n_samples / 2, order);
  const double top_fine = fine.back();
  const double top_coarse = coarse.back();
  if (std::abs(top_fine - top_coarse) > 0.1 * std::max(top_fine, top_coarse) &&
      std::max(top_fine, top_coarse) > 1e-9) {
    throw Error(ErrorKind::ResolutionTooLow, "order-" + std::to_string(order) +
                                                 " derivative estimate is grid dependent");
  }
  return *std::max_element(fine.begin(), fine.end());
}

}  // namespace dynrigid
