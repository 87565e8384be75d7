#include "dynrigid/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dynrigid/errors.hpp"

namespace dynrigid {

void check_gamma(double gamma) {
  if (!(gamma > 3.0 && gamma < 4.0)) {
    std::ostringstream os;
    os << "gamma must lie in the open interval (3, 4), got " << gamma;
    throw Error(ErrorKind::BadGamma, os.str());
  }
}

double zeta_tail_bound(int J, double gamma) { return std::pow(static_cast<double>(J), 1.0 - gamma) / (gamma - 1.0); }

GammaNormReport gamma_norm(const Eigen::MatrixXd& block, double gamma, int first_index) {
  check_gamma(gamma);
  GammaNormReport r;
  r.gamma = gamma;
  r.Q = first_index + static_cast<int>(block.rows()) - 1;
  r.J = first_index + static_cast<int>(block.cols()) - 1;
  std::vector<double> col_w(static_cast<std::size_t>(block.cols()));
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    col_w[static_cast<std::size_t>(c)] = std::pow(static_cast<double>(first_index + c), -gamma);
  }
  r.per_row_sums.resize(static_cast<std::size_t>(block.rows()));
  for (Eigen::Index i = 0; i < block.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < block.cols(); ++c) s += col_w[static_cast<std::size_t>(c)] * std::abs(block(i, c));
    s *= std::pow(static_cast<double>(first_index + i), gamma);
    r.per_row_sums[static_cast<std::size_t>(i)] = s;
    r.norm = std::max(r.norm, s);
  }
  std::ostringstream os;
  os << "truncated at Q=" << r.Q << ", J=" << r.J << "; columns beyond J add at most sup_q q^gamma sup_j |L_qj| * "
     << zeta_tail_bound(r.J, gamma) << " per row";
  r.analytic_tail_note = os.str();
  return r;
}

double weighted_sup(const Eigen::VectorXd& v, double gamma, int first_index) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    m = std::max(m, std::pow(static_cast<double>(first_index + i), gamma) * std::abs(v(i)));
  }
  return m;
}

Decomposition decompose(const OperatorMatrix& m, const Eigen::VectorXd& bullet) {
  if (bullet.size() != m.J + 1) throw Error(ErrorKind::InvalidArgument, "bullet row has the wrong length");
  Decomposition d;
  d.b_l = m.entries.col(0);
  d.b_bullet = Eigen::VectorXd::Zero(m.Q + 1);
  for (int q = 2; q <= m.Q; ++q) d.b_bullet(q) = 1.0 / (static_cast<double>(q) * q);
  d.bullet = bullet;
  d.bullet(0) = 0.0;
  d.T_R = Eigen::MatrixXd::Zero(m.Q + 1, m.J + 1);
  for (int j = 1; j <= m.J; ++j) {
    d.T_R(1, j) = m.entries(1, j);
    for (int q = 2; q <= m.Q; ++q) d.T_R(q, j) = m.entries(q, j) - d.b_bullet(q) * d.bullet(j);
  }
  return d;
}

Decomposition decompose(const OperatorMatrix& m, const LazutkinFit& fit, const LazutkinTables& lz) {
  Eigen::VectorXd bullet = Eigen::VectorXd::Zero(m.J + 1);
  for (int j = 1; j <= m.J; ++j) bullet(j) = ell_bullet(fit, lz, j);
  return decompose(m, bullet);
}

InjectivityCertificate certify_injectivity(const Eigen::MatrixXd& T_R, double gamma, double epsilon,
                                           const std::optional<Eigen::VectorXd>& diagonal) {
  check_gamma(gamma);
  const int Q = static_cast<int>(T_R.rows()) - 1;
  const int J = static_cast<int>(T_R.cols()) - 1;
  if (Q < 1 || J < 1) throw Error(ErrorKind::InvalidArgument, "empty truncation");

  Eigen::VectorXd d = Eigen::VectorXd::Zero(Q + 1);
  if (diagonal) {
    if (diagonal->size() != Q + 1) throw Error(ErrorKind::InvalidArgument, "diagonal has the wrong length");
    d = *diagonal;
  } else {
    for (int q = 2; q <= std::min(Q, J); ++q) d(q) = T_R(q, q) - 1.0;
  }
  d(0) = 0.0;
  d(1) = 0.0;

  Eigen::MatrixXd div_minus_id = Eigen::MatrixXd::Zero(Q, J);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(Q, J);
  Eigen::MatrixXd minus_id = T_R.block(1, 1, Q, J);
  for (int q = 1; q <= Q; ++q) {
    for (int j = q; j <= J; j += q) {
      div_minus_id(q - 1, j - 1) = j == q ? 0.0 : 1.0;
      diag(q - 1, j - 1) = d(q);
    }
    if (q <= J) minus_id(q - 1, q - 1) -= 1.0;
  }
  const Eigen::MatrixXd remainder = minus_id - div_minus_id - diag;

  InjectivityCertificate c;
  c.gamma = gamma;
  c.Q = Q;
  c.J = J;
  c.epsilon = epsilon;
  c.contraction_norm = gamma_norm(minus_id, gamma).norm;
  c.divisibility_norm = gamma_norm(div_minus_id, gamma).norm;
  c.diagonal_norm = gamma_norm(diag, gamma).norm;
  c.remainder_norm = gamma_norm(remainder, gamma).norm;
  const double pe = std::numbers::pi + epsilon;
  c.diagonal_bound = (pe * pe / 24.0 + epsilon / 4.0) * std::riemann_zeta(3.0);
  c.passed = c.contraction_norm < 1.0;
  return c;
}

Eigen::VectorXd estimate_bullet(const Eigen::MatrixXd& entries, double gamma, int q_min) {
  const int Q = static_cast<int>(entries.rows()) - 1;
  const int J = static_cast<int>(entries.cols()) - 1;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(J + 1);
  for (int j = 1; j <= J; ++j) {
    double num = 0.0;
    double den = 0.0;
    for (int q = std::max(q_min, 2); q <= Q; ++q) {
      if (j % q == 0) continue;
      const double w = std::pow(static_cast<double>(q), 2.0 * gamma);
      const double b = 1.0 / (static_cast<double>(q) * q);
      num += w * b * entries(q, j);
      den += w * b * b;
    }
    c(j) = den > 0.0 ? num / den : 0.0;
  }
  return c;
}

Q0Report reduce_q0(const OperatorMatrix& m, double gamma, int q0_max) {
  check_gamma(gamma);
  const int top = std::min(m.Q, m.J);
  if (q0_max < 0) q0_max = top / 2;
  q0_max = std::min(q0_max, top);
  if (q0_max < 2) throw Error(ErrorKind::InvalidArgument, "truncation too small for a q0 scan");

  Q0Report r;
  for (int q0 = 2; q0 <= q0_max; ++q0) {
    const int rows = m.Q - q0 + 1;
    const int cols = m.J - q0 + 1;
    const Eigen::VectorXd c = estimate_bullet(m.entries, gamma, q0);
    Eigen::MatrixXd block = m.entries.block(q0, q0, rows, cols);
    for (int i = 0; i < rows; ++i) {
      const double q = q0 + i;
      for (int k = 0; k < cols; ++k) block(i, k) -= c(q0 + k) / (q * q);
    }
    Eigen::MatrixXd minus_id = block;
    Eigen::MatrixXd rem = block;
    for (int i = 0; i < rows; ++i) {
      const int q = q0 + i;
      if (q > m.J) continue;
      const double diag = block(i, q - q0);
      minus_id(i, q - q0) -= 1.0;
      for (int j = q; j <= m.J; j += q) rem(i, j - q0) -= diag;
    }
    r.candidates.push_back(q0);
    r.contraction_curve.push_back(gamma_norm(minus_id, gamma, q0).norm);
    r.remainder_curve.push_back(gamma_norm(rem, gamma, q0).norm);
    if (!r.q0 && r.contraction_curve.back() < 1.0) r.q0 = q0;
  }
  std::vector<double> rem_pos, con_pos;
  for (double v : r.remainder_curve) rem_pos.push_back(std::max(v, 1e-300));
  for (double v : r.contraction_curve) con_pos.push_back(std::max(v, 1e-300));
  r.remainder_exponent = loglog_slope(r.candidates, rem_pos);
  r.contraction_exponent = loglog_slope(r.candidates, con_pos);
  if (!r.q0) {
    std::ostringstream os;
    os << "NoQ0InRange: no q0 <= " << q0_max << " gives a contraction; increase Q and J";
    r.note = os.str();
  }
  return r;
}

ProbeReport kernel_probe(const Eigen::MatrixXd& matrix, const std::vector<FourierFunction>& trials, double gamma,
                         double tolerance) {
  check_gamma(gamma);
  const int J = static_cast<int>(matrix.cols()) - 1;
  ProbeReport rep;
  for (const FourierFunction& u : trials) {
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(J + 1);
    for (auto [j, c] : u.cos_coeffs) {
      if (j < 0 || j > J) throw Error(ErrorKind::InvalidArgument, "trial mode outside the truncation");
      coeff(j) += c;
    }
    const Eigen::VectorXd v = matrix * coeff;
    ProbeResult p;
    p.max_residual = v.cwiseAbs().maxCoeff();
    if (std::abs(v(0)) > tolerance) {
      p.found = true;
      p.witness_row = 0;
      p.value = v(0);
    } else {
      for (Eigen::Index q = 1; q < v.size(); ++q) {
        if (std::abs(v(q)) <= tolerance) continue;
        const double w = std::pow(static_cast<double>(q), gamma) * std::abs(v(q));
        if (!p.found || w > p.weighted_value) {
          p.found = true;
          p.witness_row = static_cast<int>(q);
          p.value = v(q);
          p.weighted_value = w;
        }
      }
    }
    if (!p.found) ++rep.failures;
    rep.results.push_back(p);
  }
  return rep;
}

FourierFunction random_trial(int J, double gamma, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> r(static_cast<std::size_t>(J));
  double m = 0.0;
  for (double& x : r) {
    x = dist(gen);
    m = std::max(m, std::abs(x));
  }
  FourierFunction u;
  for (int j = 1; j <= J; ++j) {
    u.cos_coeffs.emplace_back(j, r[static_cast<std::size_t>(j - 1)] / m * std::pow(static_cast<double>(j), -gamma));
  }
  return u;
}

}  // namespace dynrigid
