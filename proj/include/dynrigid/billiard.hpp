#pragma once

#include "dynrigid/geometry.hpp"

namespace dynrigid {

/// Phase-space point: s is the arc-length fraction, y = cos(phi) with phi the
/// angle from the positively oriented tangent, measured into the table.
struct PhasePoint {
  double s = 0.0;
  double y = 0.0;
};

/// Refusal threshold for near-tangent directions.
inline constexpr double kTangencyGuard = 1e-9;

double chord_length(const BoundaryTables& tables, double s, double s2);

/// Chord between two normal-angle parameters; no degeneracy check.
double chord_length_psi(const Boundary& curve, double psi, double psi2);

/// Normal-angle parameter of the next collision of the ray leaving psi at
/// angle phi in (0, pi); lifted into (psi, psi + 2 pi).
double next_collision_psi(const Boundary& curve, double psi, double phi);

/// One bounce. y' = <d, T(s')> for the incoming direction d, so that
/// (s, y) -> (s, -y) reverses the dynamics. Returned s' lies in [0, 1).
PhasePoint forward_map(const BoundaryTables& tables, PhasePoint p);

/// Other intersection of the oriented line through gamma(s) at signed angle
/// phi, lifted next to s: s + (0, 1) for phi > 0, s - (0, 1) for phi < 0.
/// At phi = 0 throws DegenerateAngle unless allow_zero, then returns s.
double symmetrized_successor(const BoundaryTables& tables, double s, double phi,
                             bool allow_zero = false);

/// s_bar(s, phi) - 2 s + s_bar(s, -phi); zero for rotations.
double successor_remainder(const BoundaryTables& tables, double s, double phi);

}  // namespace dynrigid
