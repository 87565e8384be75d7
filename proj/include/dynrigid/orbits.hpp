#pragma once

#include <optional>
#include <vector>

#include "dynrigid/geometry.hpp"

namespace dynrigid {

enum class OrbitKind { Even, Odd };

struct SymmetricOrbit {
  int q = 0;
  OrbitKind kind = OrbitKind::Even;
  std::vector<double> s_points;    // s^0 = 0 < s^1 < ... < s^{q-1} < 1
  std::vector<double> psi_points;  // matching normal-angle parameters, lifted to [0, 2 pi)
  std::vector<double> phi_angles;  // outgoing angle at each vertex, in (0, pi)
  double length = 0.0;             // Delta_q
  double grad_residual = 0.0;      // sup norm of d L_q / d s over the free vertices
  bool hessian_certified = false;
  int iterations = 0;
  bool used_fallback = false;
};

struct OrbitOptions {
  double tolerance = 1e-11;
  int max_iterations = 60;
};

/// Number of free normal-angle variables of the reduced problem: k - 1 for
/// q = 2k and k for q = 2k + 1.
int reduced_dimension(int q);

/// Reduced length functional on psi_1..psi_m (psi_0 = 0 is fixed). Even q
/// also fixes psi_k = pi; odd q closes with the perpendicular chord
/// L(psi_k, -psi_k).
double reduced_length(const Boundary& curve, int q, const std::vector<double>& free_psi);

/// Circle seed psi_i = 2 pi i / q.
std::vector<double> circle_seed(int q);

/// Free variables of a solved orbit, usable as a continuation seed.
std::vector<double> free_variables(const SymmetricOrbit& orbit);

SymmetricOrbit find_symmetric_orbit(const BoundaryTables& tables, int q,
                                    const std::optional<std::vector<double>>& seed = std::nullopt,
                                    const OrbitOptions& opts = {});

/// Builds the full orbit record from free variables without optimizing.
SymmetricOrbit complete_orbit(const BoundaryTables& tables, int q, const std::vector<double>& free_psi);

struct OrbitCertificate {
  double reflection_residual = 0.0;  // max |<d_in, T> - <d_out, T>| over vertices
  double closure_residual = 0.0;     // max distance of forward-map iterates from the listed vertices
  double symmetry_residual = 0.0;    // max |s^{q-k} - (1 - s^k)|
  bool ordered = false;
  bool passed = false;
};

OrbitCertificate verify_orbit(const BoundaryTables& tables, const SymmetricOrbit& orbit);

/// Delta_q over a list of domains, each orbit seeded from the previous one.
std::vector<double> length_curve(const std::vector<BoundaryTables>& members, int q);

}  // namespace dynrigid
