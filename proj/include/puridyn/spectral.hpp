#pragma once

#include <cstddef>
#include <vector>

#include "puridyn/field2.hpp"

namespace puridyn {

/// Angular wavenumber of DFT bin m on an n-point grid of length L, in the
/// usual wraparound order 0, 1, ..., n/2, -(n/2-1), ..., -1 times 2*pi/L.
/// Bin n/2 is the Nyquist mode and comes out positive here; callers decide
/// its fate per operator.
double fft_freq(std::size_t m, std::size_t n, double length);

/// Unnormalized in-place 2D DFT of an n x n complex array, row-major.
/// sign is FFTW_FORWARD (-1) or FFTW_BACKWARD (+1). Plans are cached per
/// (n, sign) and reused; planning is deterministic (no runtime measurement),
/// so repeated runs produce identical bits.
void fft2_inplace(cplx* data, std::size_t n, int sign);

/// Derivative of the trigonometric interpolant along axis 0 (x) or 1 (y).
/// Multiplier ik with the Nyquist coefficient zeroed; for real data that
/// mode carries no sign information and its odd-derivative is taken as 0.
Field2C spectral_derivative(const Field2C& f, int axis);

/// Laplacian d2/dx2 + d2/dy2 with multiplier -(kx^2 + ky^2). The Nyquist
/// mode keeps its full -k^2 weight so every representable plane wave is an
/// eigenfunction.
Field2C spectral_laplacian(const Field2C& f);

/// In-place derivative along one logical axis of a dense rank-4 array of
/// n^4 complex values, row-major (i, j, I, J) with axis 0 slowest. Same ik
/// multiplier and Nyquist policy as spectral_derivative. Used to take true
/// four-dimensional divergences of current components.
void derivative4_axis_inplace(std::vector<cplx>& data, std::size_t n,
                              double length, int axis);

}  // namespace puridyn
