#pragma once

#include <vector>

#include "puridyn/field2.hpp"
#include "puridyn/field4.hpp"
#include "puridyn/grid.hpp"

namespace puridyn {

/// Reduced density kernel rho_x(x, X) = integral dy psi(x, y) conj(psi(X, y)),
/// discretized as rho[i, I] = sum_j psi[i,j] conj(psi[I,j]) spacing.
/// Hermitian by construction: the upper triangle is computed and mirrored.
struct ReducedDensity {
  Grid grid;
  std::vector<cplx> rho;  // row-major (i, I)

  const cplx& at(std::size_t i, std::size_t I) const { return rho[i * grid.n + I]; }
  double trace() const;
};

/// Traces over the second argument: rho_x. With trace_first = true, traces
/// over the first argument instead and returns rho_y.
ReducedDensity reduced_density(const Field2C& psi, bool trace_first = false);

/// Tr(rho^2) with the kernel convention: sum |rho[i,I]|^2 spacing^2.
double purity_from_rho(const ReducedDensity& rho);

/// Complex purity density pi[i,j,I,J] =
///   conj(psi[i,j]) psi[I,j] conj(psi[I,J]) psi[i,J].
/// Dense up to Field4C::dense_limit, slab-streamed above. The factors are
/// grouped as (conj(psi[i,j]) psi[I,j]) * (conj(psi[I,J]) psi[i,J]); the
/// exchange and conjugation symmetries of pi then hold bitwise.
Field4C purity_density(const Field2C& psi);

/// Slab-streamed view of the same density; never materializes. All internal
/// consumers evaluate pi through this one builder so the factor grouping is
/// fixed in a single place.
Field4C purity_density_view(const Field2C& psi);

/// integrate4(pi). Real part is the purity, imaginary part must vanish up
/// to quadrature roundoff and is reported for monitoring.
cplx purity_from_density(const Field4C& pi);

struct SchmidtSpectrum {
  std::vector<double> coefficients;  // descending, sums to 1

  double sum() const;
  double purity() const;         // sum of squares
  double schmidt_number() const; // 1 / purity
};

/// lambda_k are the squared singular values of the matrix psi[i,j] * spacing,
/// rescaled so they sum to exactly 1.
SchmidtSpectrum schmidt_spectrum(const Field2C& psi);

/// Eigenvalues of rho (descending, trace-normalized like the Schmidt route).
/// Values in [-1e-10, 0) are clipped to 0; anything more negative throws,
/// since a reduced density of a pure state cannot be that indefinite.
std::vector<double> rho_eigenvalues(const ReducedDensity& rho);

/// C = sqrt(2 (1 - purity)). Inputs in (1, 1 + 1e-9] clamp to 1; inputs
/// beyond that or <= 0 are rejected.
double concurrence(double purity);

/// Ratio of the purity-dynamics dimension to the wavefunction dimension.
/// Only two-particle systems are supported and the ratio is 2 regardless
/// of the per-particle dimension.
double dcp(int num_particles, int particle_dim);

struct PurityReport {
  double pi_from_rho = 0.0;
  cplx pi_from_density;
  double pi_from_schmidt = 0.0;
  double schmidt_number = 0.0;
  double concurrence = 0.0;
  double imag_total = 0.0;
  double dcp = 2.0;
};

/// All three purity routes plus derived measures for one state.
PurityReport purity_report(const Field2C& psi);

}  // namespace puridyn
