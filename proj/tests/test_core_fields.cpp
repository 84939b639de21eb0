#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "puridyn/errors.hpp"
#include "puridyn/field2.hpp"
#include "puridyn/field4.hpp"
#include "puridyn/grid.hpp"
#include "puridyn/spectral.hpp"

using namespace puridyn;

TEST_CASE("grid construction and coordinates") {
  const Grid g = make_grid(64, 20.0);
  CHECK(g.spacing == 0.3125);
  CHECK(g.spacing * double(g.n) == g.length);

  const Grid g8 = make_grid(8, 8.0);
  const std::vector<double> xs = g8.coords();
  REQUIRE(xs.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(xs[i] == double(i - 4));

  CHECK_THROWS_AS(make_grid(7, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(6, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(16, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(16, -2.0), InvalidArgument);
}

TEST_CASE("phys params validation") {
  PhysParams p;
  CHECK_NOTHROW(validate(p));
  p.hbar = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidArgument);
  p.hbar = 1.0;
  p.mass_y = -1.0;
  CHECK_THROWS_AS(validate(p), InvalidArgument);
}

TEST_CASE("integrate2 on constants, normalized states and full periods") {
  const Grid g = make_grid(16, 4.0);
  const Field2C ones = Field2C::from_function(g, [](double, double) { return cplx{1.0, 0.0}; });
  CHECK(integrate2(ones).real() == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(integrate2(ones).imag() == 0.0);

  const Field2C psi = oracles::product_gaussian(make_grid(32, 12.0), 0.9, 0.9);
  Field2C density = Field2C::from_function(psi.grid(), [](double, double) { return cplx{}; });
  for (std::size_t i = 0; i < psi.n(); ++i)
    for (std::size_t j = 0; j < psi.n(); ++j)
      density.at(i, j) = std::norm(psi.at(i, j));
  CHECK(std::abs(integrate2(density).real() - 1.0) <= 1e-12);

  const Field2C mode = Field2C::from_function(g, [&](double x, double) {
    return std::polar(1.0, 2.0 * std::numbers::pi * x / g.length);
  });
  CHECK(std::abs(integrate2(mode)) <= 1e-13);
}

TEST_CASE("normalize rejects the zero field and fixes the norm") {
  const Grid g = make_grid(8, 4.0);
  Field2C zero(g);
  CHECK_THROWS_AS(normalize(zero), NumericalAbort);

  Field2C f = Field2C::from_function(g, [](double x, double y) { return cplx{x + 2.0, y}; });
  normalize(f);
  CHECK(norm_l2(f) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral derivative: plane waves, constants, closed-form Gaussian") {
  const Grid g = make_grid(64, 20.0);
  const double k = oracles::wavenumber(g, 3);
  const Field2C wave =
      Field2C::from_function(g, [&](double x, double) { return std::polar(1.0, k * x); });
  const Field2C dw = spectral_derivative(wave, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      worst = std::max(worst, std::abs(dw.at(i, j) - cplx{0.0, k} * wave.at(i, j)));
  CHECK(worst <= 1e-12 * k);

  const Field2C c = Field2C::from_function(g, [](double, double) { return cplx{2.5, -1.0}; });
  CHECK(norm_linf(spectral_derivative(c, 0)) <= 1e-14);
  CHECK(norm_linf(spectral_derivative(c, 1)) <= 1e-14);

  // width-1 Gaussian: tails and spectrum both far below the target accuracy
  const Field2C gauss = Field2C::from_function(
      g, [](double x, double y) { return cplx{std::exp(-0.5 * (x * x + y * y)), 0.0}; });
  const Field2C dg = spectral_derivative(gauss, 0);
  const Field2C analytic = Field2C::from_function(g, [](double x, double y) {
    return cplx{-x * std::exp(-0.5 * (x * x + y * y)), 0.0};
  });
  CHECK(max_abs_diff(dg, analytic) <= 1e-10);
}

TEST_CASE("spectral laplacian: plane waves and Gaussian oracle") {
  const Grid g = make_grid(64, 20.0);
  const double kx = oracles::wavenumber(g, 2);
  const double ky = oracles::wavenumber(g, 5);
  const Field2C wave = Field2C::from_function(
      g, [&](double x, double y) { return std::polar(1.0, kx * x + ky * y); });
  const Field2C lw = spectral_laplacian(wave);
  const double expected = -(kx * kx + ky * ky);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      worst = std::max(worst, std::abs(lw.at(i, j) - expected * wave.at(i, j)));
  CHECK(worst <= 1e-12 * std::abs(expected));

  const Field2C gauss = Field2C::from_function(
      g, [](double x, double y) { return cplx{std::exp(-0.5 * (x * x + y * y)), 0.0}; });
  const Field2C lap = spectral_laplacian(gauss);
  const Field2C analytic = Field2C::from_function(g, [](double x, double y) {
    const double r2 = x * x + y * y;
    return cplx{(r2 - 2.0) * std::exp(-0.5 * r2), 0.0};
  });
  CHECK(max_abs_diff(lap, analytic) <= 1e-9);
}

TEST_CASE("spectral properties: Parseval, linearity, zero-mean derivative") {
  const Grid g = make_grid(32, 10.0);
  const Field2C f = oracles::random_smooth(g, 11);
  const Field2C h = oracles::random_smooth(g, 17);

  std::vector<cplx> buf(f.values().begin(), f.values().end());
  fft2_inplace(buf.data(), g.n, -1);
  fft2_inplace(buf.data(), g.n, +1);
  double worst = 0.0;
  const double inv_n2 = 1.0 / double(g.n * g.n);
  for (std::size_t k = 0; k < buf.size(); ++k)
    worst = std::max(worst, std::abs(buf[k] * inv_n2 - f.values()[k]));
  CHECK(worst <= 1e-13);

  const cplx alpha{0.7, -0.3};
  const cplx beta{-1.1, 0.2};
  Field2C combo(g);
  for (std::size_t k = 0; k < combo.size(); ++k)
    combo.values()[k] = alpha * f.values()[k] + beta * h.values()[k];
  const Field2C d_combo = spectral_derivative(combo, 1);
  const Field2C df = spectral_derivative(f, 1);
  const Field2C dh = spectral_derivative(h, 1);
  worst = 0.0;
  for (std::size_t k = 0; k < combo.size(); ++k)
    worst = std::max(worst,
                     std::abs(d_combo.values()[k] - (alpha * df.values()[k] + beta * dh.values()[k])));
  CHECK(worst <= 1e-13);

  CHECK(std::abs(integrate2(df)) <= 1e-13);
  CHECK(std::abs(integrate2(spectral_derivative(f, 0))) <= 1e-13);
}

TEST_CASE("integrate4: constants and dense vs streamed schedules") {
  const Grid g = make_grid(8, 2.0);
  const Field4C ones = Field4C::make_streamed(g, [](std::size_t, std::size_t, std::span<cplx> out) {
    for (cplx& z : out) z = cplx{1.0, 0.0};
  });
  CHECK(integrate4(ones).real() == doctest::Approx(16.0).epsilon(1e-14));

  const Grid g12 = make_grid(12, 5.0);
  const Field2C f = oracles::random_smooth(g12, 23);
  auto slab = [&f, n = g12.n](std::size_t I, std::size_t J, std::span<cplx> out) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out[i * n + j] = f.at(i, j) * std::conj(f.at(I, J));
  };
  const Field4C streamed = Field4C::make_streamed(g12, slab);
  const Field4C dense = materialize(streamed);
  REQUIRE(dense.dense());

  // identical reduction schedule, so the two storage modes agree bitwise
  const cplx a = integrate4(streamed);
  const cplx b = integrate4(dense);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());

  double worst = 0.0;
  std::vector<cplx> plane(g12.n * g12.n);
  for (std::size_t I = 0; I < g12.n; ++I) {
    for (std::size_t J = 0; J < g12.n; ++J) {
      streamed.slab(I, J, plane);
      for (std::size_t ij = 0; ij < plane.size(); ++ij) {
        const std::size_t i = ij / g12.n;
        const std::size_t j = ij % g12.n;
        worst = std::max(worst, std::abs(plane[ij] - dense.at(i, j, I, J)));
      }
    }
  }
  CHECK(worst == 0.0);
}

TEST_CASE("field4 dense storage refuses n beyond the memory cap") {
  CHECK_THROWS_AS(Field4C::make_dense(make_grid(64, 8.0)), InvalidArgument);
  CHECK_NOTHROW(Field4C::make_dense(make_grid(16, 8.0)));
}

TEST_CASE("pairwise sum is deterministic and exact on cancelling input") {
  std::vector<cplx> xs(1000);
  for (std::size_t k = 0; k < xs.size(); ++k)
    xs[k] = cplx{double(k % 7) - 3.0, double(k % 5) - 2.0};
  const cplx s1 = pairwise_sum(xs);
  const cplx s2 = pairwise_sum(xs);
  CHECK(s1.real() == s2.real());
  CHECK(s1.imag() == s2.imag());
}
