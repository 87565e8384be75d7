#include "dynrigid/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "dynrigid/errors.hpp"

namespace dynrigid::fourier {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> dft(std::span<const double> samples) {
  std::vector<std::complex<double>> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  return out;
}

std::vector<double> cosine_coefficients(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "cosine_coefficients needs an even sample count");
  }
  const auto spec = dft(samples);
  std::vector<double> a(n / 2 + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  a[0] = spec[0].real() * inv_n;
  for (std::size_t k = 1; k < n / 2; ++k) a[k] = 2.0 * spec[k].real() * inv_n;
  a[n / 2] = spec[n / 2].real() * inv_n;
  return a;
}

std::vector<double> spectral_derivative(std::span<const double> samples, int order,
                                        double noise_floor) {
  const std::size_t n = samples.size();
  std::vector<std::complex<double>> spec = dft(samples);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(spec[k]) * inv_n < noise_floor) {
      spec[k] = 0.0;
      continue;
    }
    // signed wavenumber; the Nyquist mode is dropped for odd orders
    const long m = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    if (order % 2 == 1 && 2 * k == n) {
      spec[k] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, 2.0 * std::numbers::pi * static_cast<double>(m));
    spec[k] *= std::pow(ik, order);
  }
  std::vector<std::complex<double>> back;
  Eigen::FFT<double> fft;
  fft.inv(back, spec);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = back[i].real();
  return out;
}

double periodic_trapezoid(std::span<const double> samples, double period) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : samples) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return (sum + comp) * period / static_cast<double>(samples.size());
}

double eval_cosine_series(std::span<const double> coeffs, double t) {
  double sum = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) sum += coeffs[k] * std::cos(static_cast<double>(k) * t);
  return sum;
}

std::size_t significant_length(std::span<const double> coeffs, double tol) {
  double peak = 0.0;
  for (double c : coeffs) peak = std::max(peak, std::abs(c));
  std::size_t len = 1;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) > tol * peak) len = k + 1;
  }
  return len;
}

}  // namespace dynrigid::fourier
