#include <doctest.h>

#include "dynrigid/errors.hpp"
#include "dynrigid/orbits.hpp"
#include "dynrigid/rigidity.hpp"
#include "helpers.hpp"

using namespace dynrigid;

namespace {

struct CircleOperator {
  OperatorMatrix matrix;
  LazutkinFit fit;
  LazutkinTables lz;
};

const CircleOperator& circle_operator(int QJ) {
  static std::map<int, CircleOperator> cache;
  auto it = cache.find(QJ);
  if (it != cache.end()) return it->second;
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  CircleOperator c;
  c.lz = build_lazutkin(t);
  std::vector<SymmetricOrbit> orbits;
  for (int q : default_fit_range()) orbits.push_back(find_symmetric_orbit(t, q));
  c.fit = fit_alpha_beta(orbits, c.lz);
  c.matrix = assemble_model(c.fit, c.lz, QJ, QJ);
  return cache.emplace(QJ, std::move(c)).first->second;
}

Eigen::MatrixXd divisibility(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int q = 1; q <= n; ++q)
    for (int j = 2 * q; j <= n; j += q) m(q - 1, j - 1) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("gamma norm") {
  CHECK(gamma_norm(Eigen::MatrixXd::Identity(20, 20), 3.5).norm == doctest::Approx(1.0));
  const int n = 4000;
  const GammaNormReport r = gamma_norm(divisibility(n), 3.5);
  const double z = std::riemann_zeta(3.5) - 1.0;
  CHECK(r.norm <= z);
  CHECK(z - r.norm <= zeta_tail_bound(n / 2, 3.5) + 1e-15);
  CHECK(r.per_row_sums[0] == doctest::Approx(r.norm));
  for (double g : {3.1, 3.5, 3.9}) CHECK(std::riemann_zeta(3.0) - 1.0 < 0.21);
  CHECK_THROWS_AS(gamma_norm(Eigen::MatrixXd::Identity(3, 3), 3.0), Error);
  CHECK_THROWS_AS(gamma_norm(Eigen::MatrixXd::Identity(3, 3), 4.0), Error);
  CHECK_THROWS_AS(check_gamma(2.5), Error);
}

TEST_CASE("circle decomposition and certificate") {
  const CircleOperator& c = circle_operator(32);
  const Decomposition d = decompose(c.matrix, c.fit, c.lz);
  CHECK(d.T_R.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.T_R.col(0).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 1; j <= 32; ++j) CHECK(d.T_R(1, j) == 1.0);
  // reconstruction: T = T_R + b_bullet bullet^T on rows q >= 2
  double gap = 0.0;
  for (int q = 2; q <= 32; ++q)
    for (int j = 1; j <= 32; ++j)
      gap = std::max(gap, std::abs(d.T_R(q, j) + d.b_bullet(q) * d.bullet(j) - c.matrix.at(q, j)));
  CHECK(gap < 1e-12);

  const InjectivityCertificate cert = certify_injectivity(d.T_R, 3.5);
  CHECK(cert.passed);
  CHECK(cert.contraction_norm < 0.5);
  CHECK(cert.remainder_norm < 1e-8);
  CHECK(cert.diagonal_norm <= cert.diagonal_bound);
  CHECK(cert.divisibility_norm <= std::riemann_zeta(3.5) - 1.0);
}

TEST_CASE("adversarial matrix fails the certificate") {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(9, 9);
  for (int i = 1; i <= 8; ++i) t(i, i) = 1.0;
  t(2, 3) += 1.5 * std::pow(3.0, 3.5) / std::pow(2.0, 3.5);
  CHECK_FALSE(certify_injectivity(t, 3.5).passed);
  CHECK(certify_injectivity(Eigen::MatrixXd::Identity(9, 9), 3.5).passed);
}

TEST_CASE("q0 reduction on the circle") {
  const CircleOperator& c = circle_operator(32);
  const Q0Report r = reduce_q0(c.matrix, 3.5);
  REQUIRE(r.q0.has_value());
  CHECK(*r.q0 == 2);
  CHECK(r.note.empty());
  CHECK(r.candidates.size() == r.contraction_curve.size());
}

TEST_CASE("kernel probe") {
  const CircleOperator& c = circle_operator(32);
  for (int q : {2, 5, 17}) {
    const ProbeReport r = kernel_probe(c.matrix.entries, {FourierFunction::basis(q)}, 3.5);
    CHECK(r.failures == 0);
    CHECK(r.results[0].witness_row >= q);
  }
  const ProbeReport rc = kernel_probe(c.matrix.entries, {FourierFunction::basis(0)}, 3.5);
  CHECK(rc.results[0].witness_row == 0);
  std::vector<FourierFunction> trials;
  for (unsigned s = 0; s < 100; ++s) trials.push_back(random_trial(32, 3.5, s));
  CHECK(kernel_probe(c.matrix.entries, trials, 3.5).failures == 0);
  CHECK_THROWS_AS(kernel_probe(c.matrix.entries, {FourierFunction::basis(40)}, 3.5), Error);
}

TEST_CASE("contraction norm is stable under J doubling") {
  const CircleOperator& a = circle_operator(32);
  const CircleOperator& b = circle_operator(64);
  const double na = certify_injectivity(decompose(a.matrix, a.fit, a.lz).T_R, 3.5).contraction_norm;
  const double nb = certify_injectivity(decompose(b.matrix, b.fit, b.lz).T_R, 3.5).contraction_norm;
  CHECK(std::abs(na - nb) < 1e-3);
}
