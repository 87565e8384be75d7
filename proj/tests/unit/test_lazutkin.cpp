#include <doctest.h>

#include "dynrigid/errors.hpp"
#include "dynrigid/lazutkin.hpp"
#include "dynrigid/orbits.hpp"
#include "helpers.hpp"

using namespace dynrigid;
using testing::kPi;

namespace {

std::vector<SymmetricOrbit> orbits_for(const BoundaryTables& t, const std::vector<int>& qs) {
  std::vector<SymmetricOrbit> out;
  for (int q : qs) out.push_back(find_symmetric_orbit(t, q));
  return out;
}

}  // namespace

TEST_CASE("circle Lazutkin parameter") {
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  const LazutkinTables lz = build_lazutkin(t);
  CHECK(lz.C_L == doctest::Approx(std::pow(2 * kPi, -2.0 / 3.0)).epsilon(1e-12));
  CHECK(lz.mu_deviation() < 1e-12);
  for (double s : {0.0, 0.13, 0.5, 0.91}) CHECK(std::abs(lz.x_at_s(s) - s) < 1e-12);
  CHECK_THROWS_AS(build_lazutkin(build_domain_unscaled(DomainSpec::circle(), 4096)), Error);
}

TEST_CASE("mu against the curvature formula") {
  const DomainSpec spec = DomainSpec::single_mode(4, 1e-3);
  const BoundaryTables t = build_domain(spec, 4096);
  const LazutkinTables lz = build_lazutkin(t);
  // unit-perimeter curvature radius (1 - 15 h4 cos 4 psi) / (2 pi); C_L from its cube-root mean
  auto rho = [](double psi) { return (1.0 - 15e-3 * std::cos(4 * psi)) / (2 * kPi); };
  const int n = 2000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += std::cbrt(rho(2 * kPi * i / n)) / n;
  const double C_L = 1.0 / (2 * kPi * mean);
  CHECK(lz.C_L == doctest::Approx(C_L).epsilon(1e-12));
  for (double psi : {0.0, 0.4, 1.7, 3.0}) {
    CHECK(lz.mu_at_psi(psi) == doctest::Approx(1.0 / (2 * C_L * std::cbrt(rho(psi)))).epsilon(1e-11));
  }
  for (double x : {0.0, 0.21, 0.5, 0.77}) CHECK(std::abs(lz.x_at_s(lz.s_at_x(x)) - x) < 1e-12);
  for (double psi : {0.3, 2.2, 5.0}) CHECK(std::abs(lz.psi_at_x(lz.x_at_psi(psi)) - psi) < 1e-10);
}

TEST_CASE("order-1 remainder") {
  const BoundaryTables c = build_domain(DomainSpec::circle(), 4096);
  const LazutkinTables lzc = build_lazutkin(c);
  for (double y : {0.05, 0.2, 0.45}) CHECK(std::abs(order1_remainder(c, lzc, 0.3, y)) < 1e-12);
  CHECK_THROWS_AS(order1_remainder(c, lzc, 0.3, 0.6), Error);

  std::vector<double> at;
  for (double a : {1e-4, 2e-4, 4e-4}) {
    const BoundaryTables t = build_domain(testing::near_circle(a, 31), 4096);
    const LazutkinTables lz = build_lazutkin(t);
    CHECK(order1_remainder(t, lz, 0.2, 0.0) == 0.0);
    double worst = 0.0;
    for (double y : {0.02, 0.05, 0.1, 0.2}) {
      const double r = order1_remainder(t, lz, 0.2, y);
      CHECK(std::abs(r - order1_remainder(t, lz, 0.2, -y)) < 1e-12);
      worst = std::max(worst, std::abs(r) / (y * y));
    }
    CHECK(worst < 1.0);
    at.push_back(order1_remainder(t, lz, 0.2, 0.1));
  }
  CHECK(at[1] / at[0] == doctest::Approx(2.0).epsilon(0.05));
  CHECK(at[2] / at[1] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("ansatz solutions") {
  const AnsatzSolution id = ansatz_ode_step(PeriodicSeries{}, 1);
  for (double x : {0.0, 0.3, 0.9}) {
    CHECK(id.value(x) == doctest::Approx(x));
    CHECK(id.derivative(x) == doctest::Approx(1.0));
  }
  const AnsatzSolution zero = ansatz_ode_step(PeriodicSeries{}, 3);
  CHECK(zero.value(0.4) == 0.0);
  PeriodicSeries r0;
  r0.cos_coeffs = {0.0, 1e-3};
  const AnsatzSolution cs = ansatz_ode_step(r0, 3);
  for (double x : {0.1, 0.25, 0.6}) {
    CHECK(cs.value(x) == doctest::Approx(1e-3 / (2 * kPi * kPi) * (std::cos(2 * kPi * x) - 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ansatz_ode_step(r0, 0), Error);
}

TEST_CASE("alpha and beta fit") {
  const std::vector<int> qs = default_fit_range();
  const BoundaryTables c = build_domain(DomainSpec::circle(), 4096);
  const LazutkinFit fc = fit_alpha_beta(orbits_for(c, qs), build_lazutkin(c));
  CHECK(fc.at_floor);
  CHECK(fc.magnitude() < 1e-9);

  const BoundaryTables t1 = build_domain(testing::near_circle(1e-3, 32), 4096);
  const BoundaryTables t2 = build_domain(testing::near_circle(5e-4, 32), 4096);
  const LazutkinTables lz1 = build_lazutkin(t1);
  const std::vector<SymmetricOrbit> o1 = orbits_for(t1, qs);
  const LazutkinFit f1 = fit_alpha_beta(o1, lz1);
  const LazutkinFit f2 = fit_alpha_beta(orbits_for(t2, qs), build_lazutkin(t2));
  CHECK(f1.magnitude() / f2.magnitude() == doctest::Approx(2.0).epsilon(0.05));
  CHECK(f1.residual_order < -3.5);

  const LazutkinFit fp = fit_alpha_beta(o1, lz1, {}, AnglePath::Positions);
  double gap = 0.0;
  for (double x : {0.1, 0.35, 0.8}) gap = std::max(gap, std::abs(fp.beta(x) - f1.beta(x)));
  CHECK(gap < 1e-3 * f1.magnitude());
  CHECK_THROWS_AS(fit_alpha_beta(orbits_for(t1, {8, 12}), lz1), Error);
}
