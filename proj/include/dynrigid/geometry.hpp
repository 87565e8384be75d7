#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dynrigid {

using Vec2 = Eigen::Vector2d;

inline double cross(const Vec2& a, const Vec2& b) noexcept { return a.x() * b.y() - a.y() * b.x(); }

/// Fourier description of a Z2-symmetric convex table through its support
/// function h(theta) = h_0 + sum_{k>=2} h_k cos(k theta).
struct DomainSpec {
  std::vector<std::pair<int, double>> support_coeffs;
  /// Sine terms are never legal; the parser keeps them so that symmetry
  /// violations surface as a domain error instead of a parse error.
  std::vector<std::pair<int, double>> sine_coeffs;
  int smoothness_r = 8;
  std::size_t n_samples = 4096;

  static DomainSpec circle(double h0 = 1.0);
  /// h0 = 1 plus `amplitude * cos(k theta)`.
  static DomainSpec single_mode(int k, double amplitude);

  double coeff(int k) const;
  int max_mode() const;
};

/// Analytic boundary curve parameterized by psi = theta - pi, the normal
/// angle measured from the marked point. The support function in psi is
/// p(psi) = sum_k c_k cos(k psi), where the k = 1 term is the translation that
/// pins the marked point (psi = 0) at the origin.
///
/// Geometry in this parameter:
///   N(psi) = -(cos psi, sin psi),  T(psi) = (sin psi, -cos psi)
///   gamma = p N + p' T,  gamma' = rho T,  rho = p + p''.
class Boundary {
 public:
  Boundary() = default;
  explicit Boundary(std::vector<double> support_cos);

  double support(double psi) const;
  double support_d1(double psi) const;
  double rho(double psi) const;
  double rho_d1(double psi) const;

  Vec2 point(double psi) const;
  /// d gamma / d psi
  Vec2 velocity(double psi) const { return rho(psi) * tangent(psi); }
  /// d^2 gamma / d psi^2
  Vec2 acceleration(double psi) const { return rho_d1(psi) * tangent(psi) - rho(psi) * normal(psi); }

  static Vec2 normal(double psi);
  static Vec2 tangent(double psi);

  double perimeter() const noexcept { return perimeter_; }
  /// Lifted arc-length fraction s(psi) = (1/P) int_0^psi rho; s(psi + 2pi) = s(psi) + 1.
  double s_of_psi(double psi) const;
  /// Inverse of s_of_psi, lifted the same way.
  double psi_of_s(double s) const;

  const std::vector<double>& support_cos() const noexcept { return c_; }

 private:
  std::vector<double> c_;
  std::vector<double> rho_c_;
  double perimeter_ = 0.0;
};

/// Dense tables of a built domain sampled uniformly in arc-length fraction.
struct BoundaryTables {
  Boundary curve;
  std::size_t n_samples = 0;
  int smoothness_r = 8;
  bool normalized = false;
  double perimeter = 0.0;
  std::size_t marked_index = 0;
  std::size_t auxiliary_index = 0;

  std::vector<double> s_grid;
  std::vector<double> psi_of_s;
  std::vector<double> theta_of_s;
  std::vector<double> rho;
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;
  std::vector<Vec2> normals;

  double min_rho() const;
};

/// Builds the perimeter-normalized, pinned domain. Throws NonConvex,
/// SymmetryViolation, ResolutionTooLow or InvalidArgument.
BoundaryTables build_domain(const DomainSpec& spec, std::size_t n_samples);
BoundaryTables build_domain(const DomainSpec& spec);

/// Same domain pinned at the origin but kept at its natural size; used by
/// deformation families where the perimeter itself varies.
BoundaryTables build_domain_unscaled(const DomainSpec& spec, std::size_t n_samples);

/// C^{r+1} distance to the unit-perimeter disk tangent at the marked point,
/// derivatives by spectral differentiation in arc-length. Requires normalized tables.
double closeness_to_circle(const BoundaryTables& tables);

/// Closed-form curvature radius of the raw (unnormalized, untranslated) spec at normal angle theta.
double spec_rho(const DomainSpec& spec, double theta);

}  // namespace dynrigid
