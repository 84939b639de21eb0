#pragma once

#include <memory>

#include "puridyn/field2.hpp"
#include "puridyn/field4.hpp"
#include "puridyn/grid.hpp"
#include "puridyn/potential.hpp"

namespace puridyn {

/// The four current components of the purity density, one per dynamical
/// axis (x, y, X, Y). Components are slab-streamed closures over psi and its
/// two spectral derivatives; they are cheap to build and are materialized
/// only inside divergence/residual evaluations.
///
/// With A = psi[i,j], B = psi[I,j], C = psi[I,J], D = psi[i,J]:
///   jx = -(i hbar/2m) (B C*) (A* dx_D - D conj(dx_A))
///   jy = -(i hbar/2M) (C* D) (A* dy_B - B conj(dy_A))
///   jX = -(i hbar/2m) (A* D) (C* dx_B - B conj(dx_C))
///   jY = -(i hbar/2M) (A* B) (C* dy_D - D conj(dy_C))
/// where dx_ and dy_ are the spectral derivatives of psi evaluated at the
/// matching index pair. Each axis differentiates exactly the two factors
/// that depend on it, so the free continuity equation closes. The fixed
/// factor grouping makes jX[i,j,I,J] = jx[I,J,i,j] and
/// conj(jx[i,j,I,J]) = jX[I,j,i,J] hold bitwise.
struct CurrentField {
  Field4C jx, jy, jX, jY;
};

CurrentField current_components(const Field2C& psi, const PhysParams& p);

/// Four-point potential combination
///   u[i,j,I,J] = (v[i,j] - v[I,j]) + (v[I,J] - v[i,J]),
/// evaluated lazily from the 2D potential. The grouping makes the
/// antisymmetry identities exact in floating point. Potentials whose kind
/// guarantees separability short-circuit to an identically-zero field.
struct SourceField {
  Grid grid;
  bool zero = true;
  std::shared_ptr<const Potential> v;

  double at(std::size_t i, std::size_t j, std::size_t I, std::size_t J) const;
  void slab(std::size_t I, std::size_t J, std::span<double> out) const;
};

SourceField source_U(const Potential& v);

/// d(pi)/dt by the product rule over the four factors of pi, with
/// psi_dot = (-i/hbar) H psi. Slab-streamed.
Field4C dpi_dt_analytic(const Field2C& psi, const Potential& v, const PhysParams& p);

/// Sum of the spectral derivatives of the four components along their own
/// axes. Dense result; materializes one component at a time and accumulates,
/// so the peak is two dense fields. Requires n <= Field4C::dense_limit.
Field4C divergence4(const CurrentField& j);

enum class ContinuityMode { free_flow, interacting };

struct ContinuityReport {
  double l2_residual_re = 0.0;
  double linf_residual_re = 0.0;
  double l2_residual_im = 0.0;
  double linf_residual_im = 0.0;
  /// L-infinity of d(pi)/dt; residuals are meaningful relative to this.
  double reference_scale = 0.0;
  /// False when reference_scale < 1e-14 (stationary states); the relative
  /// accessors then fall back to absolute numbers.
  bool relative_mode = true;
  ContinuityMode mode = ContinuityMode::free_flow;

  double relative_linf_re() const;
  double relative_linf_im() const;
  double worst_relative() const;
};

/// Residual of d(pi)/dt + div J = 0 for V = 0.
ContinuityReport residual_free(const Field2C& psi, const PhysParams& p);

/// Residuals of the interacting continuity equations
///   Re: d(pi_R)/dt + div J_R + (pi_I/hbar) U = 0
///   Im: d(pi_I)/dt + div J_I - (pi_R/hbar) U = 0
/// with the same currents as the free case; the potential enters only
/// through d(pi)/dt and the source.
ContinuityReport residual_interacting(const Field2C& psi, const Potential& v,
                                      const PhysParams& p);

struct PurityRate {
  double lhs = 0.0;  // centered difference of the purity over two split steps
  double rhs = 0.0;  // -(1/hbar) integrate4(pi_I * U)
};

PurityRate purity_rate_check(const Field2C& psi, const Potential& v,
                             const PhysParams& p, double dt);

}  // namespace puridyn
