#include <doctest.h>

#include "dynrigid/deformation.hpp"
#include "dynrigid/errors.hpp"
#include "helpers.hpp"

using namespace dynrigid;
using testing::kPi;

namespace {

DeformationFamily family(const DomainSpec& base, CosineTable dir) {
  DeformationFamily f;
  f.base = base;
  f.direction = std::move(dir);
  f.tau_grid = {0.0};
  return f;
}

}  // namespace

TEST_CASE("family validation") {
  CHECK(family(DomainSpec::circle(), {}).is_constant());
  CHECK_THROWS_AS(family(DomainSpec::circle(), {{1, 1.0}}).validate(), Error);
  DeformationFamily f = family(DomainSpec::circle(), {{2, 1.0}});
  f.tau_min = 1e-3;
  f.tau_max = -1e-3;
  CHECK_THROWS_AS(f.validate(), Error);
  f = family(DomainSpec::circle(), {{2, 1.0}});
  f.tau_grid = {0.5};
  CHECK_THROWS_AS(f.validate(), Error);
  CHECK_NOTHROW(family(DomainSpec::circle(), {{2, 1.0}}).validate());
}

TEST_CASE("zero direction") {
  const DeformationFamily f = family(testing::near_circle(1e-3, 51), {});
  CHECK(std::abs(perimeter_derivative_check(f, 0.0).fd_slope) < 1e-9);
  const DerivativeCheck c = length_derivative_check(f, 4, 0.0);
  CHECK(c.passed);
  CHECK(std::abs(c.functional) == 0.0);
}

TEST_CASE("normal component routes agree") {
  const DeformationFamily f = family(DomainSpec::circle(), {{2, 1.0}});
  const NormalComponent n = normal_component(f, 0.0);
  CHECK(n.max_route_gap < 1e-8);
  // with the translation pin, n = cos 4 pi s - cos 2 pi s on the circle
  for (std::size_t i = 0; i < n.s.size(); ++i) {
    const double s = n.s[i];
    CHECK(n.analytic[i] == doctest::Approx(std::cos(4 * kPi * s) - std::cos(2 * kPi * s)).epsilon(1e-10));
  }
  CHECK(std::abs(f.n_of_psi(0.0)) < 1e-15);
  CHECK(f.n_of_psi(0.7) == doctest::Approx(f.n_of_psi(-0.7)));
}

TEST_CASE("n is linear in the direction") {
  const DeformationFamily a = family(DomainSpec::circle(), {{2, 1.0}});
  const DeformationFamily b = family(DomainSpec::circle(), {{5, 1.0}});
  const DeformationFamily ab = family(DomainSpec::circle(), {{2, 2.0}, {5, -3.0}});
  for (double psi : {0.2, 1.1, 2.5}) {
    CHECK(ab.n_of_psi(psi) == doctest::Approx(2 * a.n_of_psi(psi) - 3 * b.n_of_psi(psi)));
  }
}

TEST_CASE("derivative checks") {
  const DeformationFamily dil = family(DomainSpec::circle(), {});
  DeformationFamily grow = dil;
  grow.base = DomainSpec::circle();
  // h0 direction is a dilation of the raw curve
  grow.direction = {{0, 1.0}};
  const DerivativeCheck p = perimeter_derivative_check(grow, 0.0);
  CHECK(p.fd_slope == doctest::Approx(2 * kPi).epsilon(1e-7));
  CHECK(p.passed);

  const DeformationFamily neutral = family(DomainSpec::circle(), {{3, 1.0}});
  CHECK(std::abs(perimeter_derivative_check(neutral, 0.0).fd_slope) < 1e-8);

  const DeformationFamily gen = family(testing::near_circle(1e-3, 52), random_direction(53));
  for (int q : {2, 3, 5}) CHECK(length_derivative_check(gen, q, 0.0).passed);
  CHECK(length_derivative_check(family(DomainSpec::circle(), {{2, 1.0}}), 2, 0.0).fd_slope ==
        doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("Richardson step control") {
  CHECK(richardson_derivative([](double t) { return std::sin(t); }, 0.3) == doctest::Approx(std::cos(0.3)));
  CHECK_THROWS_AS(richardson_derivative([](double t) { return std::sin(1e5 * t); }, 0.0), Error);
}
