#include "dynrigid/lazutkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "dynrigid/billiard.hpp"
#include "dynrigid/errors.hpp"
#include "dynrigid/fourier.hpp"

namespace dynrigid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double LazutkinTables::x_at_psi(double psi) const {
  double v = f_[0] * psi;
  for (std::size_t k = 1; k < f_.size(); ++k) {
    const double kk = static_cast<double>(k);
    v += f_[k] * std::sin(kk * psi) / kk;
  }
  return C_L * v;
}

double LazutkinTables::psi_at_x(double x) const {
  const double turns = std::floor(x);
  const double frac = x - turns;
  if (frac == 0.0) return kTwoPi * turns;
  auto f = [&](double psi) {
    return std::make_pair(x_at_psi(psi) - frac, C_L * fourier::eval_cosine_series(f_, psi));
  };
  std::uintmax_t iters = 100;
  const double psi = boost::math::tools::newton_raphson_iterate(f, kTwoPi * frac, 0.0, kTwoPi, 52, iters);
  return psi + kTwoPi * turns;
}

double LazutkinTables::x_at_s(double s) const { return x_at_psi(curve_.psi_of_s(s)); }

double LazutkinTables::s_at_x(double x) const { return curve_.s_of_psi(psi_at_x(x)); }

double LazutkinTables::mu_at_psi(double psi) const {
  return 1.0 / (2.0 * C_L * std::cbrt(curve_.rho(psi)));
}

double LazutkinTables::mu(double x) const { return mu_at_psi(psi_at_x(x)); }

double LazutkinTables::mu_deviation() const {
  double d = 0.0;
  for (double m : mu_of_x) d = std::max(d, std::abs(m - kPi));
  return d;
}

LazutkinTables build_lazutkin(const BoundaryTables& tables) {
  if (!tables.normalized) {
    throw Error(ErrorKind::NotNormalized, "Lazutkin parameter needs unit-perimeter tables");
  }
  const std::size_t n = tables.n_samples;
  const Boundary& c = tables.curve;
  std::vector<double> cube(n);
  for (std::size_t i = 0; i < n; ++i) {
    cube[i] = std::cbrt(c.rho(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
  }
  std::vector<double> f = fourier::cosine_coefficients(cube);
  // the last retained coefficient must sit at roundoff, otherwise the grid is too coarse
  const double tail = std::abs(f[n / 2 - 1]) + std::abs(f[n / 2]);
  if (tail > 1e-13 * std::abs(f[0])) {
    throw Error(ErrorKind::ResolutionTooLow, "rho^(1/3) is not resolved on the grid");
  }
  f.resize(fourier::significant_length(f, 1e-17));

  LazutkinTables lz;
  lz.curve_ = c;
  lz.f_ = std::move(f);
  lz.C_L = 1.0 / (kTwoPi * lz.f_[0]);
  lz.n_samples = n;
  lz.x_of_s.resize(n);
  lz.s_of_x.resize(n);
  lz.mu_of_x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n);
    lz.x_of_s[i] = lz.x_at_psi(tables.psi_of_s[i]);
    const double psi = lz.psi_at_x(u);
    lz.s_of_x[i] = c.s_of_psi(psi);
    lz.mu_of_x[i] = lz.mu_at_psi(psi);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(lz.x_of_s[i] > lz.x_of_s[i - 1])) {
      throw Error(ErrorKind::NonMonotone, "Lazutkin parameter is not increasing");
    }
  }
  return lz;
}

double order1_remainder(const BoundaryTables& tables, const LazutkinTables& lz, double x, double y) {
  if (!(std::abs(y) < kRemainderYMax)) {
    throw Error(ErrorKind::InvalidArgument, "|y| must stay below the remainder domain bound");
  }
  if (y == 0.0) return 0.0;
  const double s = lz.s_at_x(x);
  const double phi = lz.mu(x) * std::abs(y);
  const double plus = lz.x_at_s(symmetrized_successor(tables, s, phi));
  const double minus = lz.x_at_s(symmetrized_successor(tables, s, -phi));
  return plus - 2.0 * x + minus;
}

double PeriodicSeries::operator()(double x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j) v += cos_coeffs[j] * std::cos(kTwoPi * j * x);
  for (std::size_t j = 1; j < sin_coeffs.size(); ++j) v += sin_coeffs[j] * std::sin(kTwoPi * j * x);
  return v;
}

double PeriodicSeries::primitive(double x) const {
  double v = cos_coeffs.empty() ? 0.0 : cos_coeffs[0] * x;
  for (std::size_t j = 1; j < cos_coeffs.size(); ++j) {
    v += cos_coeffs[j] * std::sin(kTwoPi * j * x) / (kTwoPi * j);
  }
  for (std::size_t j = 1; j < sin_coeffs.size(); ++j) {
    v += sin_coeffs[j] * (1.0 - std::cos(kTwoPi * j * x)) / (kTwoPi * j);
  }
  return v;
}

AnsatzSolution ansatz_ode_step(const PeriodicSeries& r0, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "ansatz order must be >= 1");
  AnsatzSolution sol;
  sol.N = N;
  if (N > 1) {
    // double primitive of -2 r0 vanishing at both ends
    const double a0 = r0.cos_coeffs.empty() ? 0.0 : r0.cos_coeffs[0];
    sol.value = [r0, a0](double x) {
      double v = -a0 * x * x + a0 * x;
      for (std::size_t j = 1; j < r0.cos_coeffs.size(); ++j) {
        const double w = kTwoPi * static_cast<double>(j);
        v += 2.0 * r0.cos_coeffs[j] / (w * w) * (std::cos(w * x) - 1.0);
      }
      for (std::size_t j = 1; j < r0.sin_coeffs.size(); ++j) {
        const double w = kTwoPi * static_cast<double>(j);
        v += 2.0 * r0.sin_coeffs[j] / (w * w) * std::sin(w * x);
      }
      return v;
    };
    sol.derivative = [r0, a0](double x) {
      double v = -2.0 * a0 * x + a0;
      for (std::size_t j = 1; j < r0.cos_coeffs.size(); ++j) {
        const double w = kTwoPi * static_cast<double>(j);
        v -= 2.0 * r0.cos_coeffs[j] / w * std::sin(w * x);
      }
      for (std::size_t j = 1; j < r0.sin_coeffs.size(); ++j) {
        const double w = kTwoPi * static_cast<double>(j);
        v += 2.0 * r0.sin_coeffs[j] / w * std::cos(w * x);
      }
      return v;
    };
    return sol;
  }
  auto unnormalized = [r0](double x) { return std::exp(-2.0 * r0.primitive(x)); };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double total = Quad::integrate(unnormalized, 0.0, 1.0, 15, 1e-14);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorKind::NonMonotone, "ansatz derivative does not normalize");
  }
  sol.derivative = [unnormalized, total](double x) { return unnormalized(x) / total; };
  sol.value = [unnormalized, total](double x) {
    if (x == 0.0) return 0.0;
    return Quad::integrate(unnormalized, 0.0, x, 15, 1e-14) / total;
  };
  for (int i = 0; i <= 64; ++i) {
    if (!(sol.derivative(i / 64.0) > 0.0)) throw Error(ErrorKind::NonMonotone, "ansatz solution not increasing");
  }
  return sol;
}

double LazutkinFit::alpha(double x) const {
  double v = 0.0;
  for (std::size_t j = 1; j < alpha_sin.size(); ++j) v += alpha_sin[j] * std::sin(kTwoPi * j * x);
  return v;
}

double LazutkinFit::beta(double x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < beta_cos.size(); ++j) v += beta_cos[j] * std::cos(kTwoPi * j * x);
  return v;
}

double LazutkinFit::alpha_exp_imag(int j) const {
  const int a = std::abs(j);
  if (a == 0 || a >= static_cast<int>(alpha_sin.size())) return 0.0;
  // alpha_sin / (2i) = -i alpha_sin / 2
  return (j > 0 ? -0.5 : 0.5) * alpha_sin[static_cast<std::size_t>(a)];
}

double LazutkinFit::beta_exp(int j) const {
  const int a = std::abs(j);
  if (a >= static_cast<int>(beta_cos.size())) return 0.0;
  return a == 0 ? beta_cos[0] : 0.5 * beta_cos[static_cast<std::size_t>(a)];
}

double LazutkinFit::magnitude() const {
  double v = 0.0;
  for (double a : alpha_sin) v += std::abs(a);
  for (double b : beta_cos) v += std::abs(b);
  return v;
}

std::vector<int> default_fit_range() { return {8, 12, 16, 24, 32, 48, 64}; }

double loglog_slope(const std::vector<int>& q, const std::vector<double>& values) {
  const std::size_t n = q.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(static_cast<double>(q[i]));
    my += std::log(values[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(static_cast<double>(q[i])) - mx;
    sxy += dx * (std::log(values[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

struct Sample {
  int q;
  double t;
  double value;
};

// Joint least squares over (q, t) with basis q^{-2m} * {sin|cos}(2 pi j t).
std::vector<double> joint_fit(const std::vector<Sample>& samples, bool odd, const FitOptions& opts) {
  const int j0 = odd ? 1 : 0;
  std::vector<std::pair<int, int>> cols;  // (level, mode)
  for (int j = j0; j <= opts.modes; ++j) cols.emplace_back(0, j);
  for (int m = 1; m <= opts.correction_levels; ++m) {
    for (int j = j0; j <= opts.correction_modes; ++j) cols.emplace_back(m, j);
  }
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto ncols = static_cast<Eigen::Index>(cols.size());
  if (rows < ncols) throw Error(ErrorKind::FitUnstable, "not enough orbit samples for the fit basis");
  Eigen::MatrixXd A(rows, ncols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Sample& s = samples[static_cast<std::size_t>(r)];
    const double q2 = 1.0 / (static_cast<double>(s.q) * s.q);
    for (Eigen::Index c = 0; c < ncols; ++c) {
      const auto [m, j] = cols[static_cast<std::size_t>(c)];
      const double w = std::pow(q2, m);
      A(r, c) = w * (odd ? std::sin(kTwoPi * j * s.t) : std::cos(kTwoPi * j * s.t));
    }
    b[r] = s.value;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] < 1e-10 * sv[0]) {
    throw Error(ErrorKind::FitUnstable, "fit basis is rank deficient on the sampled orbits");
  }
  const Eigen::VectorXd x = svd.solve(b);
  std::vector<double> out(static_cast<std::size_t>(opts.modes) + 1, 0.0);
  for (Eigen::Index c = 0; c < ncols; ++c) {
    const auto [m, j] = cols[static_cast<std::size_t>(c)];
    if (m == 0) out[static_cast<std::size_t>(j)] = x[c];
  }
  return out;
}

}  // namespace

LazutkinFit fit_alpha_beta(const std::vector<SymmetricOrbit>& orbits, const LazutkinTables& lz,
                           const FitOptions& opts, AnglePath path) {
  if (orbits.size() < 3) throw Error(ErrorKind::FitUnstable, "need orbits for at least three q");
  const Boundary& c = lz.curve();
  std::vector<Sample> a_samples, b_samples;
  std::vector<std::vector<double>> xs, ratio;
  LazutkinFit fit;
  for (const SymmetricOrbit& o : orbits) {
    const int q = o.q;
    fit.q_range.push_back(q);
    std::vector<double> x(static_cast<std::size_t>(q)), r(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) x[static_cast<std::size_t>(k)] = lz.x_at_psi(o.psi_points[static_cast<std::size_t>(k)]);
    for (int k = 0; k < q; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      double phi = o.phi_angles[kk];
      if (path == AnglePath::Positions) {
        const double pa = lz.psi_at_x(x[kk]);
        const double pb = lz.psi_at_x(k + 1 < q ? x[kk + 1] : 1.0);
        const Vec2 d = (c.point(pb) - c.point(pa)).normalized();
        const Vec2 t = Boundary::tangent(pa);
        phi = std::atan2(cross(t, d), t.dot(d));
      }
      r[kk] = q * phi / lz.mu_at_psi(o.psi_points[kk]);
    }
    const double q2 = static_cast<double>(q) * q;
    for (int k = 1; 2 * k < q; ++k) {
      a_samples.push_back({q, static_cast<double>(k) / q, q2 * (x[static_cast<std::size_t>(k)] - static_cast<double>(k) / q)});
    }
    for (int k = 0; 2 * k <= q; ++k) {
      b_samples.push_back({q, static_cast<double>(k) / q, q2 * (r[static_cast<std::size_t>(k)] - 1.0)});
    }
    xs.push_back(std::move(x));
    ratio.push_back(std::move(r));
  }
  fit.alpha_sin = joint_fit(a_samples, true, opts);
  fit.alpha_sin[0] = 0.0;
  fit.beta_cos = joint_fit(b_samples, false, opts);

  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const int q = orbits[i].q;
    const double q2 = static_cast<double>(q) * q;
    double ea = 0.0, eb = 0.0;
    for (int k = 0; k < q; ++k) {
      const double t = static_cast<double>(k) / q;
      ea = std::max(ea, std::abs(xs[i][static_cast<std::size_t>(k)] - t - fit.alpha(t) / q2));
      eb = std::max(eb, std::abs(ratio[i][static_cast<std::size_t>(k)] - 1.0 - fit.beta(t) / q2));
    }
    fit.alpha_residual.push_back(ea);
    fit.beta_residual.push_back(eb);
  }
  const double worst = *std::max_element(fit.alpha_residual.begin(), fit.alpha_residual.end());
  if (worst < opts.floor) {
    fit.at_floor = true;
    fit.residual_order = -std::numeric_limits<double>::infinity();
    fit.beta_residual_order = -std::numeric_limits<double>::infinity();
    return fit;
  }
  std::vector<double> ea = fit.alpha_residual, eb = fit.beta_residual;
  for (double& v : ea) v = std::max(v, 1e-300);
  for (double& v : eb) v = std::max(v, 1e-300);
  fit.residual_order = loglog_slope(fit.q_range, ea);
  fit.beta_residual_order = loglog_slope(fit.q_range, eb);
  if (fit.residual_order > -3.0) {
    throw Error(ErrorKind::FitUnstable,
                "position residual decays like q^" + std::to_string(fit.residual_order));
  }
  return fit;
}

}  // namespace dynrigid
