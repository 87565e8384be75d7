#include "dynrigid/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dynrigid/errors.hpp"
#include "dynrigid/fourier.hpp"

namespace dynrigid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double y) { return y == 0.0 ? 1.0 : std::sin(y) / y; }

}  // namespace

FourierFunction FourierFunction::basis(int j, double amplitude) {
  FourierFunction u;
  u.cos_coeffs = {{j, amplitude}};
  return u;
}

double FourierFunction::operator()(double x) const {
  double v = 0.0;
  for (auto [j, c] : cos_coeffs) v += c * std::cos(kTwoPi * j * x);
  return v;
}

double FourierFunction::mean() const {
  double v = 0.0;
  for (auto [j, c] : cos_coeffs) {
    if (j == 0) v += c;
  }
  return v;
}

int FourierFunction::max_mode() const {
  int m = 0;
  for (auto [j, c] : cos_coeffs) m = std::max(m, j);
  return m;
}

double ell0(const BoundaryTables& tables, const std::function<double(double)>& nu_of_psi) {
  const std::size_t n = tables.n_samples;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = nu_of_psi(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  return fourier::periodic_trapezoid(v, kTwoPi);
}

double ell0_tilde(const BoundaryTables& tables, const LazutkinTables& lz, const FourierFunction& u) {
  return ell0(tables, [&](double psi) { return u(lz.x_at_psi(psi)) / lz.mu_at_psi(psi); });
}

double ell1(const FourierFunction& u) {
  double v = 0.0;
  for (auto [j, c] : u.cos_coeffs) v += c;
  return v;
}

double ellq(const SymmetricOrbit& orbit, const std::function<double(double)>& nu_of_psi) {
  double v = 0.0;
  for (int k = 0; k < orbit.q; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    v += nu_of_psi(orbit.psi_points[kk]) * std::sin(orbit.phi_angles[kk]);
  }
  return v;
}

double ellq_tilde(const SymmetricOrbit& orbit, const LazutkinTables& lz, const FourierFunction& u) {
  double v = 0.0;
  for (int k = 0; k < orbit.q; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double psi = orbit.psi_points[kk];
    v += u(lz.x_at_psi(psi)) * std::sin(orbit.phi_angles[kk]) / lz.mu_at_psi(psi);
  }
  return v;
}

double s_function(const LazutkinTables& lz, int q, double x) { return sinc(lz.mu(x) / q) - 1.0; }

std::vector<double> sigma_table(const LazutkinTables& lz, int q, int pmax) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "sigma_p(q) needs q >= 1");
  const std::size_t n = lz.mu_of_x.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sinc(lz.mu_of_x[i] / q) - 1.0;
  const std::vector<double> a = fourier::cosine_coefficients(s);
  std::vector<double> out(static_cast<std::size_t>(pmax) + 1, 0.0);
  for (int p = 0; p <= pmax && p < static_cast<int>(n / 2); ++p) {
    out[static_cast<std::size_t>(p)] = p == 0 ? a[0] : 0.5 * a[static_cast<std::size_t>(p)];
  }
  return out;
}

double s_q_sigma(const LazutkinTables& lz, int q, int p) {
  p = std::abs(p);
  return sigma_table(lz, q, p)[static_cast<std::size_t>(p)];
}

double sigma_tilde(const LazutkinTables& lz, int j) {
  j = std::abs(j);
  const std::size_t n = lz.mu_of_x.size();
  if (j >= static_cast<int>(n / 2)) return 0.0;
  std::vector<double> m2(n);
  for (std::size_t i = 0; i < n; ++i) m2[i] = lz.mu_of_x[i] * lz.mu_of_x[i];
  const std::vector<double> a = fourier::cosine_coefficients(m2);
  const double c = j == 0 ? a[0] : 0.5 * a[static_cast<std::size_t>(j)];
  return -c / 6.0;
}

double ell_bullet(const LazutkinFit& fit, const LazutkinTables& lz, int j) {
  // -2 pi i j alpha_j with alpha_j = i * alpha_exp_imag(j)
  return sigma_tilde(lz, j) + fit.beta_exp(j) + kTwoPi * j * fit.alpha_exp_imag(j);
}

std::string to_string(Route r) { return r == Route::Direct ? "direct" : "model"; }

Eigen::VectorXd OperatorMatrix::apply(const FourierFunction& u) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Q + 1);
  for (auto [j, c] : u.cos_coeffs) {
    if (j < 0 || j > J) throw Error(ErrorKind::InvalidArgument, "trial mode outside the truncation");
    out += c * entries.col(j);
  }
  return out;
}

OperatorMatrix assemble_direct(const BoundaryTables& tables, const LazutkinTables& lz,
                               const std::vector<SymmetricOrbit>& orbits, int Q, int J) {
  if (Q < 2 || J < 1) throw Error(ErrorKind::InvalidArgument, "need Q >= 2 and J >= 1");
  if (static_cast<int>(orbits.size()) < Q - 1) throw Error(ErrorKind::InvalidArgument, "missing orbits");
  OperatorMatrix m;
  m.Q = Q;
  m.J = J;
  m.route = Route::Direct;
  m.entries = Eigen::MatrixXd::Zero(Q + 1, J + 1);
  for (int j = 0; j <= J; ++j) m.entries(0, j) = ell0_tilde(tables, lz, FourierFunction::basis(j));
  m.entries.row(1).setOnes();
  for (int q = 2; q <= Q; ++q) {
    const SymmetricOrbit& o = orbits[static_cast<std::size_t>(q - 2)];
    if (o.q != q) throw Error(ErrorKind::InvalidArgument, "orbit list out of order");
    std::vector<double> x(static_cast<std::size_t>(q)), w(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      x[kk] = lz.x_at_psi(o.psi_points[kk]);
      w[kk] = std::sin(o.phi_angles[kk]) / lz.mu_at_psi(o.psi_points[kk]);
    }
    for (int j = 0; j <= J; ++j) {
      double v = 0.0;
      for (int k = 0; k < q; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        v += w[kk] * std::cos(kTwoPi * j * x[kk]);
      }
      m.entries(q, j) = v;
    }
  }
  m.metadata["route"] = "direct";
  m.metadata["n_samples"] = std::to_string(tables.n_samples);
  return m;
}

OperatorMatrix assemble_model(const LazutkinFit& fit, const LazutkinTables& lz, int Q, int J, int s_max) {
  if (Q < 2 || J < 1) throw Error(ErrorKind::InvalidArgument, "need Q >= 2 and J >= 1");
  OperatorMatrix m;
  m.Q = Q;
  m.J = J;
  m.route = Route::Model;
  m.entries = Eigen::MatrixXd::Zero(Q + 1, J + 1);
  m.entries(0, 0) = 2.0;
  m.entries.row(1).setOnes();
  std::vector<double> bullet(static_cast<std::size_t>(J) + 1, 0.0);
  for (int j = 1; j <= J; ++j) bullet[static_cast<std::size_t>(j)] = ell_bullet(fit, lz, j);
  const double beta0 = fit.beta_exp(0);
  for (int q = 2; q <= Q; ++q) {
    const double q2 = static_cast<double>(q) * q;
    const std::vector<double> sigma = sigma_table(lz, q, s_max * q + J);
    auto sig = [&](int p) {
      p = std::abs(p);
      return p < static_cast<int>(sigma.size()) ? sigma[static_cast<std::size_t>(p)] : 0.0;
    };
    const double diag = 1.0 + sigma[0] + beta0 / q2;
    for (int j = 0; j <= J; ++j) {
      double v = (j % q == 0) ? diag : 0.0;
      if (j > 0) v += bullet[static_cast<std::size_t>(j)] / q2;
      double tail = 0.0;
      for (int s = -s_max; s <= s_max; ++s) {
        const int p = s * q - j;
        if (s == 0 || p == 0) continue;
        // 2 pi i j alpha_p = -2 pi j Im(alpha_p) with alpha_p = i Im(alpha_p)
        tail += q2 * sig(p) + fit.beta_exp(p) - kTwoPi * j * fit.alpha_exp_imag(p);
      }
      m.entries(q, j) = v + tail / q2;
    }
  }
  m.metadata["route"] = "model";
  m.metadata["s_max"] = std::to_string(s_max);
  return m;
}

double discrete_sigma_sum(const LazutkinTables& lz, int q, int j) {
  double v = 0.0;
  for (int k = 0; k < q; ++k) {
    const double t = static_cast<double>(k) / q;
    v += s_function(lz, q, t) * std::cos(kTwoPi * j * t);
  }
  return v / q;
}

}  // namespace dynrigid
