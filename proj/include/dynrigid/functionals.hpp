#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dynrigid/geometry.hpp"
#include "dynrigid/lazutkin.hpp"
#include "dynrigid/orbits.hpp"

namespace dynrigid {

/// Even function u(x) = sum_j u_j cos(2 pi j x) in the Lazutkin variable.
struct FourierFunction {
  std::vector<std::pair<int, double>> cos_coeffs;

  static FourierFunction basis(int j, double amplitude = 1.0);
  double operator()(double x) const;
  double mean() const;
  int max_mode() const;
};

/// l_0(nu) = int nu / rho ds over the boundary; nu is a function of the normal-angle parameter psi.
double ell0(const BoundaryTables& tables, const std::function<double(double)>& nu_of_psi);

/// l~_0(u) = l_0(u / mu), evaluated by quadrature (equals 2 int u dx).
double ell0_tilde(const BoundaryTables& tables, const LazutkinTables& lz, const FourierFunction& u);

/// Row 1: evaluation at the marked point, u(0).
double ell1(const FourierFunction& u);

/// sum_k nu(psi_k) sin(phi_k) over the orbit.
double ellq(const SymmetricOrbit& orbit, const std::function<double(double)>& nu_of_psi);

/// sum_k u(x_k) sin(phi_k) / mu(x_k) over the orbit.
double ellq_tilde(const SymmetricOrbit& orbit, const LazutkinTables& lz, const FourierFunction& u);

/// S_q(x) = sin(mu(x)/q) / (mu(x)/q) - 1
double s_function(const LazutkinTables& lz, int q, double x);

/// sigma_p(q) = int_0^1 S_q(x) cos(2 pi p x) dx for p = 0..pmax.
std::vector<double> sigma_table(const LazutkinTables& lz, int q, int pmax);
double s_q_sigma(const LazutkinTables& lz, int q, int p);

/// sigma~_j = -(1/6) int_0^1 mu^2(x) cos(2 pi j x) dx
double sigma_tilde(const LazutkinTables& lz, int j);

/// l~_bullet(e_j) = sigma~_j + beta_j - 2 pi i j alpha_j, real.
double ell_bullet(const LazutkinFit& fit, const LazutkinTables& lz, int j);

enum class Route { Direct, Model };
std::string to_string(Route r);

/// Truncated matrix of l~_q(e_j) for q = 0..Q and j = 0..J. Column 0 is the
/// constant function, so entries.col(0) is T~(1).
struct OperatorMatrix {
  int Q = 0;
  int J = 0;
  Route route = Route::Direct;
  Eigen::MatrixXd entries;
  std::map<std::string, std::string> metadata;

  double at(int q, int j) const { return entries(q, j); }
  /// Rows q >= 1, columns j >= 1.
  Eigen::MatrixXd zero_average_block() const { return entries.block(1, 1, Q, J); }
  Eigen::VectorXd apply(const FourierFunction& u) const;
};

/// orbits[i] must hold q = i + 2 for i = 0..Q-2.
OperatorMatrix assemble_direct(const BoundaryTables& tables, const LazutkinTables& lz,
                               const std::vector<SymmetricOrbit>& orbits, int Q, int J);

inline constexpr int kDefaultSMax = 8;

OperatorMatrix assemble_model(const LazutkinFit& fit, const LazutkinTables& lz, int Q, int J,
                              int s_max = kDefaultSMax);

/// (1/q) sum_k S_q(k/q) cos(2 pi j k / q), the discrete resonance sum.
double discrete_sigma_sum(const LazutkinTables& lz, int q, int j);

}  // namespace dynrigid
