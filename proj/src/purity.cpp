#include "puridyn/purity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "puridyn/errors.hpp"

namespace puridyn {

double ReducedDensity::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) t += at(i, i).real();
  return t * grid.spacing;
}

ReducedDensity reduced_density(const Field2C& psi, bool trace_first) {
  const Grid& g = psi.grid();
  const std::size_t n = g.n;
  ReducedDensity rd;
  rd.grid = g;
  rd.rho.assign(n * n, cplx{0.0, 0.0});
  const double h = g.spacing;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      cplx s{0.0, 0.0};
      if (trace_first) {
        for (std::size_t k = 0; k < n; ++k) s += psi.at(k, a) * std::conj(psi.at(k, b));
      } else {
        for (std::size_t k = 0; k < n; ++k) s += psi.at(a, k) * std::conj(psi.at(b, k));
      }
      s *= h;
      rd.rho[a * n + b] = s;
      rd.rho[b * n + a] = std::conj(s);
    }
  }
  return rd;
}

double purity_from_rho(const ReducedDensity& rho) {
  double s = 0.0;
  for (const cplx& z : rho.rho) s += std::norm(z);
  const double h = rho.grid.spacing;
  return s * h * h;
}

Field4C purity_density_view(const Field2C& psi) {
  const Grid& g = psi.grid();
  const std::size_t n = g.n;
  // Shared snapshot so the streamed field stays valid independently of the
  // caller's psi.
  auto held = std::make_shared<Field2C>(psi);
  Field4C::SlabFn fn = [held, n](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *held;
    const cplx w = std::conj(f.at(I, J));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx d = w * f.at(i, J);
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] = (std::conj(f.at(i, j)) * f.at(I, j)) * d;
      }
    }
  };
  return Field4C::make_streamed(g, std::move(fn));
}

Field4C purity_density(const Field2C& psi) {
  Field4C streamed = purity_density_view(psi);
  if (psi.n() <= Field4C::dense_limit) return materialize(streamed);
  return streamed;
}

cplx purity_from_density(const Field4C& pi) { return integrate4(pi); }

double SchmidtSpectrum::sum() const {
  double s = 0.0;
  for (double l : coefficients) s += l;
  return s;
}

double SchmidtSpectrum::purity() const {
  double s = 0.0;
  for (double l : coefficients) s += l * l;
  return s;
}

double SchmidtSpectrum::schmidt_number() const { return 1.0 / purity(); }

SchmidtSpectrum schmidt_spectrum(const Field2C& psi) {
  const std::size_t n = psi.n();
  const double h = psi.grid().spacing;
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi.at(i, j) * h;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  SchmidtSpectrum out;
  out.coefficients.resize(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double l = svd.singularValues()(k) * svd.singularValues()(k);
    out.coefficients[k] = l;
    total += l;
  }
  if (!(total > 0.0)) throw NumericalAbort("Schmidt spectrum of a zero state");
  for (double& l : out.coefficients) l /= total;
  std::sort(out.coefficients.begin(), out.coefficients.end(), std::greater<double>());
  return out;
}

std::vector<double> rho_eigenvalues(const ReducedDensity& rho) {
  const std::size_t n = rho.grid.n;
  const double h = rho.grid.spacing;
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t I = 0; I < n; ++I) m(i, I) = rho.at(i, I) * h;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    double l = es.eigenvalues()(k);
    if (l < 0.0) {
      if (l < -1e-10) {
        throw NumericalAbort("reduced density eigenvalue " + std::to_string(l) +
                             " is too negative for a pure state");
      }
      l = 0.0;
    }
    vals[k] = l;
  }
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

double concurrence(double purity) {
  if (purity > 1.0 && purity <= 1.0 + 1e-9) purity = 1.0;
  if (!(purity > 0.0) || purity > 1.0) {
    throw InvalidArgument("purity must lie in (0, 1], got " + std::to_string(purity));
  }
  return std::sqrt(2.0 * (1.0 - purity));
}

double dcp(int num_particles, int particle_dim) {
  if (num_particles != 2) {
    throw InvalidArgument("dcp supports exactly two particles, got " +
                          std::to_string(num_particles));
  }
  if (particle_dim < 1) throw InvalidArgument("particle_dim must be at least 1");
  // pi lives on two copies of the configuration space: (2 * 2 * d) / (2 * d).
  return 2.0;
}

PurityReport purity_report(const Field2C& psi) {
  PurityReport r;
  r.pi_from_rho = purity_from_rho(reduced_density(psi));
  r.pi_from_density = purity_from_density(purity_density_view(psi));
  const SchmidtSpectrum spec = schmidt_spectrum(psi);
  r.pi_from_schmidt = spec.purity();
  r.schmidt_number = spec.schmidt_number();
  r.concurrence = concurrence(r.pi_from_rho);
  r.imag_total = r.pi_from_density.imag();
  r.dcp = dcp(2, 1);
  return r;
}

}  // namespace puridyn
