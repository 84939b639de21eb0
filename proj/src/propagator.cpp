#include "puridyn/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <string>

#include "puridyn/errors.hpp"
#include "puridyn/spectral.hpp"

namespace puridyn {

namespace {

void check_grids(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string("grid mismatch in ") + what);
}

}  // namespace

Field2C apply_hamiltonian(const Field2C& psi, const Potential& v, const PhysParams& p) {
  check_grids(psi.grid(), v.grid, "apply_hamiltonian");
  validate(p);
  const Grid& g = psi.grid();
  const std::size_t n = g.n;

  // Kinetic part in one pass: multiply by hbar^2 (kx^2/2m + ky^2/2M) in
  // momentum space (the sign of -Laplacian and the -hbar^2/2m prefactor
  // combine to a positive multiplier).
  Field2C out = psi;
  fft2_inplace(out.data(), n, FFTW_FORWARD);
  const double inv_n2 = 1.0 / static_cast<double>(n * n);
  const double cx = p.hbar * p.hbar / (2.0 * p.mass_x);
  const double cy = p.hbar * p.hbar / (2.0 * p.mass_y);
  for (std::size_t a = 0; a < n; ++a) {
    const double kx = fft_freq(a, n, g.length);
    for (std::size_t b = 0; b < n; ++b) {
      const double ky = fft_freq(b, n, g.length);
      out.at(a, b) *= (cx * kx * kx + cy * ky * ky) * inv_n2;
    }
  }
  fft2_inplace(out.data(), n, FFTW_BACKWARD);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) += v.at(i, j) * psi.at(i, j);
    }
  }
  return out;
}

SplitStepper::SplitStepper(const Grid& g, const Potential& v, const PhysParams& p, double dt)
    : grid_(g), dt_(dt) {
  check_grids(g, v.grid, "SplitStepper");
  validate(p);
  const std::size_t n = g.n;

  half_v_phase_.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    half_v_phase_[k] = std::polar(1.0, -v.v[k] * dt / (2.0 * p.hbar));
  }

  kinetic_phase_.resize(n * n);
  const double inv_n2 = 1.0 / static_cast<double>(n * n);
  const double cx = p.hbar / (2.0 * p.mass_x);
  const double cy = p.hbar / (2.0 * p.mass_y);
  for (std::size_t a = 0; a < n; ++a) {
    const double kx = fft_freq(a, n, g.length);
    for (std::size_t b = 0; b < n; ++b) {
      const double ky = fft_freq(b, n, g.length);
      // T dt / hbar = hbar dt (kx^2/2m + ky^2/2M); fold in the FFT
      // round-trip normalization.
      kinetic_phase_[a * n + b] =
          std::polar(inv_n2, -dt * (cx * kx * kx + cy * ky * ky));
    }
  }
}

void SplitStepper::step_inplace(Field2C& psi) const {
  check_grids(psi.grid(), grid_, "step_inplace");
  const std::size_t n = grid_.n;
  cplx* d = psi.data();
  for (std::size_t k = 0; k < n * n; ++k) d[k] *= half_v_phase_[k];
  fft2_inplace(d, n, FFTW_FORWARD);
  for (std::size_t k = 0; k < n * n; ++k) d[k] *= kinetic_phase_[k];
  fft2_inplace(d, n, FFTW_BACKWARD);
  for (std::size_t k = 0; k < n * n; ++k) d[k] *= half_v_phase_[k];
}

Field2C SplitStepper::step(const Field2C& psi) const {
  Field2C out = psi;
  step_inplace(out);
  return out;
}

Field2C step_split(const Field2C& psi, const Potential& v, const PhysParams& p, double dt) {
  return SplitStepper(psi.grid(), v, p, dt).step(psi);
}

Field2C evolve(const Field2C& psi0, const Potential& v, const PhysParams& p,
               const EvolutionSpec& spec, const Observer& observer) {
  if (!(spec.dt > 0.0)) throw InvalidArgument("evolution dt must be positive");
  if (spec.record_every == 0) throw InvalidArgument("record_every must be positive");

  SplitStepper stepper(psi0.grid(), v, p, spec.dt);
  Field2C psi = psi0;
  if (observer) observer(0.0, psi);
  for (std::size_t s = 1; s <= spec.steps; ++s) {
    stepper.step_inplace(psi);
    const double drift = std::abs(norm_l2(psi) - 1.0);
    if (drift > 1e-9) {
      throw NumericalAbort("norm drift " + std::to_string(drift) + " at step " +
                           std::to_string(s));
    }
    if (observer && (s % spec.record_every == 0 || s == spec.steps)) {
      observer(static_cast<double>(s) * spec.dt, psi);
    }
  }
  return psi;
}

}  // namespace puridyn
