#include <doctest.h>

#include <random>

#include "dynrigid/errors.hpp"
#include "dynrigid/orbits.hpp"
#include "helpers.hpp"

using namespace dynrigid;
using testing::kPi;

TEST_CASE("circle orbits") {
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  for (int q : {2, 3, 5, 8, 13}) {
    const SymmetricOrbit o = find_symmetric_orbit(t, q);
    CHECK(o.q == q);
    CHECK(o.length == doctest::Approx(q * std::sin(kPi / q) / kPi).epsilon(1e-12));
    for (int k = 0; k < q; ++k) {
      CHECK(std::abs(o.s_points[static_cast<std::size_t>(k)] - static_cast<double>(k) / q) < 1e-10);
      CHECK(o.phi_angles[static_cast<std::size_t>(k)] == doctest::Approx(kPi / q).epsilon(1e-10));
    }
    CHECK(verify_orbit(t, o).passed);
  }
  const SymmetricOrbit o3 = find_symmetric_orbit(t, 3);
  CHECK(o3.length == doctest::Approx(3.0 * std::sqrt(3.0) / (2 * kPi)).epsilon(1e-12));
}

TEST_CASE("q = 4 orbit against a brute-force scan") {
  const BoundaryTables t = build_domain(DomainSpec::single_mode(3, 1e-3), 4096);
  REQUIRE(reduced_dimension(4) == 1);
  const SymmetricOrbit o = find_symmetric_orbit(t, 4);
  const double centre = circle_seed(4)[0];
  double best = -1.0, arg = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double v = centre - 0.25 + 0.5 * i / 50.0;
    const double L = reduced_length(t.curve, 4, {v});
    if (L > best) {
      best = L;
      arg = v;
    }
  }
  // golden-section polish around the best grid point
  double a = arg - 0.01, b = arg + 0.01;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (reduced_length(t.curve, 4, {c}) > reduced_length(t.curve, 4, {d})) b = d; else a = c;
  }
  const double polished = reduced_length(t.curve, 4, {0.5 * (a + b)});
  CHECK(polished >= best);
  CHECK(o.length == doctest::Approx(polished).epsilon(1e-12));
  CHECK(std::abs(free_variables(o)[0] - 0.5 * (a + b)) < 1e-6);
}

TEST_CASE("verify_orbit rejects a displaced vertex") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 21), 4096);
  const SymmetricOrbit o = find_symmetric_orbit(t, 5);
  CHECK(verify_orbit(t, o).passed);
  std::vector<double> free = free_variables(o);
  free[0] += 1e-3;
  const SymmetricOrbit bad = complete_orbit(t, 5, free);
  CHECK_FALSE(verify_orbit(t, bad).passed);
  CHECK(verify_orbit(t, find_symmetric_orbit(t, 2)).passed);
}

TEST_CASE("symmetric orbits are length maximizers") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 22), 4096);
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd(0.0, 1e-3);
  for (int q : {3, 6, 9}) {
    const SymmetricOrbit o = find_symmetric_orbit(t, q);
    CHECK(o.hessian_certified);
    const std::vector<double> free = free_variables(o);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> p = free;
      for (double& v : p) v += nd(gen);
      CHECK(reduced_length(t.curve, q, p) <= o.length + 1e-14);
    }
  }
}

TEST_CASE("angles shrink like 1/q") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 23), 4096);
  for (int q : {4, 8, 16, 32, 64}) {
    const SymmetricOrbit o = find_symmetric_orbit(t, q);
    double m = 0.0;
    for (double phi : o.phi_angles) m = std::max(m, std::sin(phi));
    CHECK(q * m < 4.0);
  }
}

TEST_CASE("length curve of a constant family") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 24), 4096);
  const std::vector<double> c = length_curve({t, t, t}, 6);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == c[1]);
  CHECK(c[1] == c[2]);
}
