#include <doctest.h>

#include "dynrigid/errors.hpp"
#include "dynrigid/geometry.hpp"
#include "helpers.hpp"

using namespace dynrigid;
using testing::kPi;

TEST_CASE("circle tables") {
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  CHECK(t.perimeter == doctest::Approx(1.0).epsilon(1e-12));
  for (double r : t.rho) CHECK(std::abs(r - 1.0 / (2 * kPi)) < 1e-14);
  CHECK(t.points[0].norm() < 1e-15);
  const Vec2 aux = t.points[t.auxiliary_index];
  CHECK(aux.x() == doctest::Approx(1.0 / kPi));
  CHECK(std::abs(aux.y()) < 1e-15);
  CHECK(t.min_rho() > 0.0);
}

TEST_CASE("domain validation errors") {
  auto kind_of = [](const DomainSpec& s, std::size_t n = 4096) {
    try {
      build_domain(s, n);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ParseError;
  };
  CHECK(kind_of(DomainSpec::single_mode(2, -1.0)) == ErrorKind::NonConvex);
  DomainSpec asym = DomainSpec::circle();
  asym.sine_coeffs = {{2, 1e-3}};
  CHECK(kind_of(asym) == ErrorKind::SymmetryViolation);
  DomainSpec transl = DomainSpec::circle();
  transl.support_coeffs.push_back({1, 0.1});
  CHECK(kind_of(transl) == ErrorKind::InvalidArgument);
  CHECK(kind_of(DomainSpec::circle(), 1000) == ErrorKind::InvalidArgument);
  CHECK(kind_of(DomainSpec::single_mode(100, 1e-6), 512) == ErrorKind::ResolutionTooLow);
}

TEST_CASE("perturbed rho at the marked point matches the closed form") {
  const DomainSpec s = DomainSpec::single_mode(3, 0.01);
  const BoundaryTables t = build_domain(s, 4096);
  // marked point has outward normal theta = pi; rho = h + h'' rescaled by 1/(2 pi h0)
  const double rho_raw = 1.0 + (1.0 - 9.0) * 0.01 * std::cos(3 * kPi);
  CHECK(t.rho[0] == doctest::Approx(rho_raw / (2 * kPi)).epsilon(1e-13));
  CHECK(t.rho[0] == doctest::Approx(0.171887338539247).epsilon(1e-12));
}

TEST_CASE("reflection symmetry of the tables") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 3), 2048);
  const std::size_t n = t.n_samples;
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const Vec2 a = t.points[i], b = t.points[n - i];
    worst = std::max(worst, std::hypot(a.x() - b.x(), a.y() + b.y()));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("refinement stability") {
  const DomainSpec s = testing::near_circle(1e-2, 5);
  const BoundaryTables a = build_domain(s, 4096);
  const BoundaryTables b = build_domain(s, 8192);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.n_samples; ++i) {
    worst = std::max(worst, std::abs(a.rho[i] - b.rho[2 * i]));
    worst = std::max(worst, (a.points[i] - b.points[2 * i]).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("closeness to circle") {
  CHECK(closeness_to_circle(build_domain(DomainSpec::circle(), 4096)) < 1e-10);
  const double d1 = closeness_to_circle(build_domain(DomainSpec::single_mode(4, 1e-4), 4096));
  const double d2 = closeness_to_circle(build_domain(DomainSpec::single_mode(4, 2e-4), 4096));
  CHECK(d1 > 0.0);
  CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK_THROWS_AS(closeness_to_circle(build_domain_unscaled(DomainSpec::circle(), 4096)), Error);
}
