#pragma once

#include <functional>

#include "puridyn/field2.hpp"
#include "puridyn/grid.hpp"
#include "puridyn/potential.hpp"

namespace puridyn {

/// H psi = -(hbar^2/2m) d2/dx2 psi - (hbar^2/2M) d2/dy2 psi + V psi,
/// with spectral Laplacians. Linear; psi need not be normalized.
Field2C apply_hamiltonian(const Field2C& psi, const Potential& v, const PhysParams& p);

struct EvolutionSpec {
  double dt = 1e-3;
  std::size_t steps = 0;
  std::size_t record_every = 1;
};

/// Strang splitting e^{-iV dt/2h} e^{-iT dt/h} e^{-iV dt/2h} with the kinetic
/// factor applied in momentum space. All factors are unit modulus, so the
/// step is unitary up to FFT roundoff. Phase tables are cached per dt, which
/// keeps long trajectories cheap.
class SplitStepper {
 public:
  SplitStepper(const Grid& g, const Potential& v, const PhysParams& p, double dt);

  void step_inplace(Field2C& psi) const;
  Field2C step(const Field2C& psi) const;

  double dt() const { return dt_; }

 private:
  Grid grid_;
  double dt_ = 0.0;
  std::vector<cplx> half_v_phase_;  // exp(-i V dt / 2 hbar), position space
  std::vector<cplx> kinetic_phase_; // exp(-i hbar dt (kx^2/2m + ky^2/2M)), k space
};

/// One Strang step; convenience wrapper that builds a stepper per call.
Field2C step_split(const Field2C& psi, const Potential& v, const PhysParams& p, double dt);

/// Called with (t, psi) at step 0, at every record_every-th step, and at the
/// final step. The snapshot reference is only valid during the call.
using Observer = std::function<void(double t, const Field2C& psi)>;

/// Applies step_split spec.steps times starting from psi0 and returns the
/// final state. Aborts (NumericalAbort) if the norm drifts from 1 by more
/// than 1e-9, which would signal a broken stepper rather than physics.
Field2C evolve(const Field2C& psi0, const Potential& v, const PhysParams& p,
               const EvolutionSpec& spec, const Observer& observer = nullptr);

}  // namespace puridyn
