#include <doctest.h>

#include "dynrigid/billiard.hpp"
#include "dynrigid/errors.hpp"
#include "helpers.hpp"

using namespace dynrigid;
using testing::kPi;

namespace {

double frac(double s) { return s - std::floor(s); }

double circ_dist(double a, double b) {
  const double d = frac(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace

TEST_CASE("circle chords") {
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  CHECK(chord_length(t, 0.0, 0.5) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(chord_length(t, 0.0, 1.0 / 3) == doctest::Approx(std::sin(kPi / 3) / kPi).epsilon(1e-14));
  CHECK(chord_length(t, 0.2, 0.7) == doctest::Approx(chord_length(t, 0.7, 0.2)));
  CHECK_THROWS_AS(chord_length(t, 0.3, 0.3), Error);
}

TEST_CASE("perturbed diameter against the raw support function") {
  const DomainSpec s = DomainSpec::single_mode(4, 1e-3);
  const BoundaryTables t = build_domain(s, 4096);
  // s = 0 has normal angle pi, s = 1/2 has normal angle 0
  const double raw = (testing::raw_point(s, kPi) - testing::raw_point(s, 0.0)).norm() / (2 * kPi);
  CHECK(std::abs(chord_length(t, 0.0, 0.5) - raw) < 1e-9);
}

TEST_CASE("circle forward map is a rotation") {
  const BoundaryTables t = build_domain(DomainSpec::circle(), 4096);
  for (double phi : {0.3, 1.0, 2.0, 2.9}) {
    const PhasePoint p = forward_map(t, {0.1, std::cos(phi)});
    CHECK(circ_dist(p.s, 0.1 + phi / kPi) < 1e-12);
    CHECK(p.y == doctest::Approx(std::cos(phi)).epsilon(1e-12));
  }
  for (int q : {3, 5, 8}) {
    PhasePoint p{0.0, std::cos(kPi / q)};
    for (int i = 0; i < q; ++i) p = forward_map(t, p);
    CHECK(circ_dist(p.s, 0.0) < 1e-10);
  }
  CHECK_THROWS_AS(forward_map(t, {0.0, 1.0}), Error);
}

TEST_CASE("generating function identities on a perturbed table") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 11), 4096);
  const double h = 1e-6;
  for (double s : {0.05, 0.4, 0.77}) {
    for (double y : {-0.6, 0.1, 0.8}) {
      const PhasePoint p = forward_map(t, {s, y});
      const double dLds = (chord_length(t, s + h, p.s) - chord_length(t, s - h, p.s)) / (2 * h);
      const double dLds2 = (chord_length(t, s, p.s + h) - chord_length(t, s, p.s - h)) / (2 * h);
      CHECK(std::abs(dLds + y) < 1e-7);
      CHECK(std::abs(dLds2 - p.y) < 1e-7);
    }
  }
}

TEST_CASE("twist and reversibility") {
  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 12), 4096);
  double prev = -1.0;
  for (double y = -0.95; y < 0.95; y += 0.05) {
    PhasePoint p = forward_map(t, {0.2, y});
    double lifted = p.s < 0.2 ? p.s + 1.0 : p.s;
    // increasing y means a smaller angle from the tangent, so s' moves back toward s
    if (prev >= 0.0) CHECK(lifted < prev);
    prev = lifted;
    PhasePoint back = forward_map(t, {p.s, -p.y});
    CHECK(circ_dist(back.s, 0.2) < 1e-9);
    CHECK(std::abs(-back.y - y) < 1e-9);
  }
}

TEST_CASE("symmetrized successor") {
  const BoundaryTables c = build_domain(DomainSpec::circle(), 4096);
  for (double phi : {0.4, -0.4, 1.3, -2.0}) {
    CHECK(symmetrized_successor(c, 0.3, phi) == doctest::Approx(0.3 + phi / kPi).epsilon(1e-12));
    CHECK(std::abs(successor_remainder(c, 0.3, std::abs(phi))) < 1e-12);
  }
  CHECK_THROWS_AS(symmetrized_successor(c, 0.3, 0.0), Error);
  CHECK(symmetrized_successor(c, 0.3, 0.0, true) == 0.3);

  const BoundaryTables t = build_domain(testing::near_circle(1e-2, 13), 4096);
  for (double s : {0.0, 0.21, 0.6}) {
    for (double phi : {0.05, 0.2, 0.7}) {
      CHECK(std::abs(successor_remainder(t, s, phi) - successor_remainder(t, s, -phi)) < 1e-9);
    }
  }
}
