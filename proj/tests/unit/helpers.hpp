#pragma once

#include <cmath>
#include <numbers>

#include "dynrigid/deformation.hpp"
#include "dynrigid/geometry.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

inline dynrigid::DomainSpec near_circle(double amplitude, unsigned seed) {
  return dynrigid::perturbed(dynrigid::DomainSpec::circle(), dynrigid::random_direction(seed), amplitude);
}

// Raw support function h(theta) and its derivative, straight from the coefficients.
inline double raw_h(const dynrigid::DomainSpec& s, double theta) {
  double v = 0.0;
  for (auto [k, h] : s.support_coeffs) v += h * std::cos(k * theta);
  return v;
}

inline double raw_hp(const dynrigid::DomainSpec& s, double theta) {
  double v = 0.0;
  for (auto [k, h] : s.support_coeffs) v -= k * h * std::sin(k * theta);
  return v;
}

// Boundary point with outward normal angle theta, before pinning and rescaling.
inline dynrigid::Vec2 raw_point(const dynrigid::DomainSpec& s, double theta) {
  const double h = raw_h(s, theta), hp = raw_hp(s, theta);
  return {h * std::cos(theta) - hp * std::sin(theta), h * std::sin(theta) + hp * std::cos(theta)};
}

}  // namespace testing
