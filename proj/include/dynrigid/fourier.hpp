#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dynrigid::fourier {

bool is_power_of_two(std::size_t n) noexcept;

/// Cosine coefficients a_0..a_{N/2} of an even 2pi-periodic function from
/// its samples at 2 pi i / N, i = 0..N-1, so that
/// f(t) = a_0 + sum_{k>=1} a_k cos(k t).
std::vector<double> cosine_coefficients(std::span<const double> samples);

/// Full complex DFT, F_k = sum_i f_i exp(-2 pi i k i / N).
std::vector<std::complex<double>> dft(std::span<const double> samples);

/// m-th derivative of a 1-periodic function sampled on a uniform grid of
/// [0, 1). Fourier modes with magnitude below `noise_floor` are discarded
/// before differentiation, which keeps high orders from amplifying roundoff.
std::vector<double> spectral_derivative(std::span<const double> samples, int order,
                                        double noise_floor);

/// Trapezoid rule for a periodic integrand sampled on a uniform grid.
double periodic_trapezoid(std::span<const double> samples, double period);

/// Sum of cos-series a_0 + sum a_k cos(k t) at t.
double eval_cosine_series(std::span<const double> coeffs, double t);

/// Index past the last coefficient with |a_k| > tol * max|a|; at least 1.
std::size_t significant_length(std::span<const double> coeffs, double tol);

}  // namespace dynrigid::fourier
