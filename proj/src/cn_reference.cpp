#include "puridyn/cn_reference.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

#include "puridyn/errors.hpp"
#include "puridyn/spectral.hpp"

namespace puridyn {

namespace {

// Dense spectral second-derivative matrix: inverse DFT of the -k^2
// multiplier. Shares the split stepper's eigenvalues exactly (including the
// Nyquist -k^2), so both integrators discretize the same Hamiltonian.
Eigen::MatrixXcd second_derivative_matrix(const Grid& g) {
  const std::size_t n = g.n;
  Eigen::MatrixXcd d2(n, n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      cplx sum{0.0, 0.0};
      for (std::size_t m = 0; m < n; ++m) {
        const double k = fft_freq(m, n, g.length);
        const double phase = two_pi * static_cast<double>(m) *
                             (static_cast<double>(a) - static_cast<double>(b)) /
                             static_cast<double>(n);
        sum += -(k * k) * std::polar(1.0, phase);
      }
      d2(a, b) = sum / static_cast<double>(n);
    }
  }
  return d2;
}

}  // namespace

struct CnReference::Impl {
  Grid grid;
  Eigen::MatrixXcd rhs;                    // 1 - i dt H / 2 hbar
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;  // factors 1 + i dt H / 2 hbar
};

CnReference::CnReference(const Grid& g, const Potential& v, const PhysParams& p, double dt)
    : impl_(std::make_unique<Impl>()) {
  if (g.n > max_n) {
    throw InvalidArgument("CnReference limited to n <= " + std::to_string(max_n) +
                          ", got " + std::to_string(g.n));
  }
  if (!(g == v.grid)) throw InvalidArgument("grid mismatch in CnReference");
  validate(p);

  const std::size_t n = g.n;
  const std::size_t dim = n * n;
  const Eigen::MatrixXcd d2 = second_derivative_matrix(g);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const double cx = -p.hbar * p.hbar / (2.0 * p.mass_x);
  const double cy = -p.hbar * p.hbar / (2.0 * p.mass_y);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        h(row, k * n + j) += cx * d2(i, k);
        h(row, i * n + k) += cy * d2(j, k);
      }
      h(row, row) += v.at(i, j);
    }
  }

  const cplx half_step = cplx{0.0, dt / (2.0 * p.hbar)};
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(dim, dim) + half_step * h;
  impl_->rhs = Eigen::MatrixXcd::Identity(dim, dim) - half_step * h;
  impl_->grid = g;
  impl_->lu.compute(lhs);
}

CnReference::~CnReference() = default;
CnReference::CnReference(CnReference&&) noexcept = default;
CnReference& CnReference::operator=(CnReference&&) noexcept = default;

Field2C CnReference::step(const Field2C& psi) const {
  if (!(psi.grid() == impl_->grid)) throw InvalidArgument("grid mismatch in CnReference::step");
  const std::size_t dim = impl_->grid.n * impl_->grid.n;
  Eigen::Map<const Eigen::VectorXcd> x(psi.data(), dim);
  Eigen::VectorXcd y = impl_->lu.solve(impl_->rhs * x);
  Field2C out(impl_->grid);
  Eigen::Map<Eigen::VectorXcd>(out.data(), dim) = y;
  return out;
}

Field2C cn_reference_step(const Field2C& psi, const Potential& v,
                          const PhysParams& p, double dt) {
  return CnReference(psi.grid(), v, p, dt).step(psi);
}

}  // namespace puridyn
