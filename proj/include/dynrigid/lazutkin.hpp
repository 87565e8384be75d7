#pragma once

#include <functional>
#include <vector>

#include "dynrigid/geometry.hpp"
#include "dynrigid/orbits.hpp"

namespace dynrigid {

/// Lazutkin parameter x(s) = C_L int_0^s rho^{-2/3} and weight
/// mu(x) = 1 / (2 C_L rho^{1/3}). Evaluated analytically from the cosine
/// series of rho^{1/3} in psi; the tables are samples on uniform grids.
class LazutkinTables {
 public:
  LazutkinTables() = default;

  double C_L = 0.0;
  std::size_t n_samples = 0;
  std::vector<double> x_of_s;   // at s = i / n
  std::vector<double> s_of_x;   // at x = i / n
  std::vector<double> mu_of_x;  // at x = i / n

  double x_at_psi(double psi) const;
  double psi_at_x(double x) const;
  double x_at_s(double s) const;
  double s_at_x(double x) const;
  double mu_at_psi(double psi) const;
  double mu(double x) const;
  /// sup |mu - pi| over the x grid
  double mu_deviation() const;

  const Boundary& curve() const noexcept { return curve_; }
  const std::vector<double>& cube_root_coeffs() const noexcept { return f_; }

 private:
  friend LazutkinTables build_lazutkin(const BoundaryTables& tables);
  Boundary curve_;
  std::vector<double> f_;  // cosine coefficients of rho^{1/3} in psi
};

LazutkinTables build_lazutkin(const BoundaryTables& tables);

inline constexpr double kRemainderYMax = 0.5;

/// x_bar(x, y) - 2x + x_bar(x, -y) with x_bar the symmetrized successor taken
/// at angle phi = mu(x) y, all in Lazutkin coordinates.
double order1_remainder(const BoundaryTables& tables, const LazutkinTables& lz, double x, double y);

/// Periodic function a_0 + sum a_j cos(2 pi j x) + b_j sin(2 pi j x); b_0 is unused.
struct PeriodicSeries {
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  double operator()(double x) const;
  /// int_0^x of the series
  double primitive(double x) const;
};

struct AnsatzSolution {
  int N = 1;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// N = 1: 2 l' r0 + l'' = 0, l(0) = 0, l(1) = 1.
/// N > 1: l'' = -2 r0, l(0) = l(1) = 0.
AnsatzSolution ansatz_ode_step(const PeriodicSeries& r0, int N);

struct LazutkinFit {
  std::vector<double> alpha_sin;  // alpha(x) = sum_{j>=1} alpha_sin[j] sin(2 pi j x); [0] unused
  std::vector<double> beta_cos;   // beta(x) = sum_{j>=0} beta_cos[j] cos(2 pi j x)
  std::vector<int> q_range;
  std::vector<double> alpha_residual;  // max_k |x - k/q - alpha(k/q)/q^2| per q
  std::vector<double> beta_residual;   // max_k |q phi/mu - 1 - beta(k/q)/q^2| per q
  double residual_order = 0.0;         // log-log slope of alpha_residual
  double beta_residual_order = 0.0;
  bool at_floor = false;               // residuals at roundoff; slopes meaningless

  double alpha(double x) const;
  double beta(double x) const;
  /// Exponential-convention coefficients: alpha_j = alpha_sin[j] / (2i) is
  /// returned as its imaginary part; beta_j = beta_cos[j] / 2 for j >= 1 and
  /// beta_0 = beta_cos[0].
  double alpha_exp_imag(int j) const;
  double beta_exp(int j) const;
  /// sup |alpha| + sup |beta| over the fit basis (coefficient l1 norms)
  double magnitude() const;
};

struct FitOptions {
  int modes = 16;
  int correction_modes = 12;
  int correction_levels = 2;  // q^-2 and q^-4 corrections
  double floor = 1e-13;
};

enum class AnglePath { Reflection, Positions };

/// Least-squares fit of alpha, beta over all orbits jointly, with the
/// q^-2 corrections modelled as extra smooth terms. With AnglePath::Positions
/// the angles are recomputed from the Lazutkin positions instead of taken
/// from the orbit record.
LazutkinFit fit_alpha_beta(const std::vector<SymmetricOrbit>& orbits, const LazutkinTables& lz,
                           const FitOptions& opts = {}, AnglePath path = AnglePath::Reflection);

std::vector<int> default_fit_range();

/// Slope of log(values) against log(q) by least squares.
double loglog_slope(const std::vector<int>& q, const std::vector<double>& values);

}  // namespace dynrigid
