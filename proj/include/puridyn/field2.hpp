#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "puridyn/grid.hpp"

namespace puridyn {

using cplx = std::complex<double>;

/// Complex field on the N x N grid, row-major (i, j) with i the x index and
/// j the y index. Houses the two-particle wavefunction psi(x, y).
class Field2C {
 public:
  Field2C() = default;
  explicit Field2C(const Grid& g) : grid_(g), v_(g.n * g.n, cplx{0.0, 0.0}) {}

  static Field2C from_function(const Grid& g,
                               const std::function<cplx(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t n() const { return grid_.n; }
  std::size_t size() const { return v_.size(); }

  cplx& at(std::size_t i, std::size_t j) { return v_[i * grid_.n + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return v_[i * grid_.n + j]; }

  std::span<cplx> values() { return v_; }
  std::span<const cplx> values() const { return v_; }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }

 private:
  Grid grid_;
  std::vector<cplx> v_;
};

/// Riemann sum of f over the torus, spacing^2 measure. Spectrally accurate
/// for smooth periodic integrands.
cplx integrate2(const Field2C& f);

/// sqrt(integrate2(|f|^2)), the L2 norm with the grid measure.
double norm_l2(const Field2C& f);

/// Largest |f| over the grid.
double norm_linf(const Field2C& f);

double max_abs_diff(const Field2C& a, const Field2C& b);

/// Scales f to unit L2 norm in place. Rejects the zero field.
void normalize(Field2C& f);

bool all_finite(const Field2C& f);
void require_finite(const Field2C& f, const char* what);

}  // namespace puridyn
