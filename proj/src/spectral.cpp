#include "puridyn/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>

#include "puridyn/errors.hpp"

namespace puridyn {

namespace {

// Plans are created once per (n, sign) against a throwaway buffer with
// FFTW_ESTIMATE (deterministic, no runtime measurement) and FFTW_UNALIGNED
// (so fftw_execute_dft may run them on any caller buffer).

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_plan cached_plan_2d(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  const auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(n * n);
  fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n),
                                    as_fftw(dummy.data()), as_fftw(dummy.data()),
                                    sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

fftw_plan cached_plan_1d(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  const auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(dummy.data()),
                                    as_fftw(dummy.data()), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

void fft1_inplace(cplx* data, std::size_t n, int sign) {
  fftw_execute_dft(cached_plan_1d(n, sign), as_fftw(data), as_fftw(data));
}

}  // namespace

double fft_freq(std::size_t m, std::size_t n, double length) {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto k = (m <= n / 2) ? static_cast<double>(m)
                              : static_cast<double>(m) - static_cast<double>(n);
  return two_pi * k / length;
}

void fft2_inplace(cplx* data, std::size_t n, int sign) {
  fftw_execute_dft(cached_plan_2d(n, sign), as_fftw(data), as_fftw(data));
}

Field2C spectral_derivative(const Field2C& f, int axis) {
  if (axis != 0 && axis != 1) throw InvalidArgument("spectral_derivative axis must be 0 or 1");
  const Grid& g = f.grid();
  const std::size_t n = g.n;
  Field2C out = f;
  fft2_inplace(out.data(), n, FFTW_FORWARD);
  const double inv_n2 = 1.0 / static_cast<double>(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t m = (axis == 0) ? a : b;
      double k = fft_freq(m, n, g.length);
      if (m == n / 2) k = 0.0;  // Nyquist carries no odd-derivative information
      out.at(a, b) *= cplx{0.0, k * inv_n2};
    }
  }
  fft2_inplace(out.data(), n, FFTW_BACKWARD);
  return out;
}

Field2C spectral_laplacian(const Field2C& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.n;
  Field2C out = f;
  fft2_inplace(out.data(), n, FFTW_FORWARD);
  const double inv_n2 = 1.0 / static_cast<double>(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const double kx = fft_freq(a, n, g.length);
    for (std::size_t b = 0; b < n; ++b) {
      const double ky = fft_freq(b, n, g.length);
      out.at(a, b) *= -(kx * kx + ky * ky) * inv_n2;
    }
  }
  fft2_inplace(out.data(), n, FFTW_BACKWARD);
  return out;
}

void derivative4_axis_inplace(std::vector<cplx>& data, std::size_t n,
                              double length, int axis) {
  if (axis < 0 || axis > 3) throw InvalidArgument("derivative4 axis must be in 0..3");
  if (data.size() != n * n * n * n) throw InvalidArgument("derivative4 size mismatch");

  // ik multipliers with the backward-transform normalization folded in.
  std::vector<cplx> mult(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m) {
    double k = fft_freq(m, n, length);
    if (m == n / 2) k = 0.0;
    mult[m] = cplx{0.0, k * inv_n};
  }

  std::size_t stride = 1;
  for (int a = 3; a > axis; --a) stride *= n;

  std::vector<cplx> line(n);
  // Enumerate every 1D line along `axis`: outer blocks of stride*n elements,
  // inner offset scanning the stride positions within a block.
  const std::size_t total = data.size();
  const std::size_t block = stride * n;
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      cplx* p = data.data() + base + off;
      for (std::size_t m = 0; m < n; ++m) line[m] = p[m * stride];
      fft1_inplace(line.data(), n, FFTW_FORWARD);
      for (std::size_t m = 0; m < n; ++m) line[m] *= mult[m];
      fft1_inplace(line.data(), n, FFTW_BACKWARD);
      for (std::size_t m = 0; m < n; ++m) p[m * stride] = line[m];
    }
  }
}

}  // namespace puridyn
