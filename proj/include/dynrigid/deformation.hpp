#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dynrigid/geometry.hpp"
#include "dynrigid/orbits.hpp"

namespace dynrigid {

using CosineTable = std::vector<std::pair<int, double>>;

/// Random even direction on modes kmin..kmax with delta h_k = r_k / (k^2 - 1),
/// r uniform in [-1, 1] rescaled to max |r_k| = 1. Each mode then moves the
/// curvature radius by at most one unit.
CosineTable random_direction(unsigned seed, int kmin = 2, int kmax = 6);

/// base + amplitude * direction, coefficientwise.
DomainSpec perturbed(const DomainSpec& base, const CosineTable& direction, double amplitude);

/// Family h_tau = h_base + tau * delta_h of unscaled domains pinned at the origin.
struct DeformationFamily {
  DomainSpec base;
  CosineTable direction;
  double tau_min = -1e-3;
  double tau_max = 1e-3;
  std::vector<double> tau_grid;

  /// Throws InvalidArgument on k = 1 or negative modes and on an empty range.
  void validate() const;
  DomainSpec member(double tau) const;
  BoundaryTables member_tables(double tau) const;
  /// n at normal angle psi; the k = 1 term is the translation keeping the marked point fixed.
  double n_of_psi(double psi) const;
  bool is_constant() const;
};

struct FdOptions {
  double step = 1e-5;
  double stability = 1e-7;  // allowed gap between the h and h/2 central differences
};

/// Central difference at h and h/2 combined by one Richardson step. Throws
/// StepUnstable when the two levels differ by more than opts.stability.
double richardson_derivative(const std::function<double(double)>& f, double tau, const FdOptions& opts = {});

struct NormalComponent {
  std::vector<double> s;         // arc-length fractions of the tau member
  std::vector<double> analytic;  // support-function route
  std::vector<double> geometric; // <d gamma / d tau, N> at fixed s
  double max_route_gap = 0.0;
};

NormalComponent normal_component(const DeformationFamily& family, double tau, int n_points = 64,
                                 const FdOptions& opts = {});

struct DerivativeCheck {
  double fd_slope = 0.0;
  double functional = 0.0;
  double tolerance = 1e-6;
  bool passed = false;
};

/// d(perimeter)/d tau against l_0(n) = int n d psi.
DerivativeCheck perimeter_derivative_check(const DeformationFamily& family, double tau, const FdOptions& opts = {});

/// d Delta_q / d tau against 2 sum_k n(psi_k) sin(phi_k).
DerivativeCheck length_derivative_check(const DeformationFamily& family, int q, double tau,
                                        const FdOptions& opts = {});

struct IsospectralRow {
  double tau = 0.0;
  std::vector<int> q_set;
  std::vector<double> values;  // sum_k n(psi_k) sin(phi_k)
  double max_abs = 0.0;
};

std::vector<IsospectralRow> isospectral_residual(const DeformationFamily& family, const std::vector<int>& q_set,
                                                 const std::vector<double>& tau_grid);

/// Delta_q along the family grid, seeded by continuation.
std::vector<double> orbit_length_curve(const DeformationFamily& family, int q, const std::vector<double>& tau_grid);

}  // namespace dynrigid
