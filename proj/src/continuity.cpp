#include "puridyn/continuity.hpp"

#include <cmath>
#include <memory>

#include "puridyn/errors.hpp"
#include "puridyn/propagator.hpp"
#include "puridyn/purity.hpp"
#include "puridyn/spectral.hpp"

namespace puridyn {

namespace {

void check_dense_ok(const Grid& g, const char* what) {
  if (g.n > Field4C::dense_limit) {
    throw InvalidArgument(std::string(what) + " requires n <= " +
                          std::to_string(Field4C::dense_limit));
  }
}

struct PsiBundle {
  std::shared_ptr<const Field2C> psi;
  std::shared_ptr<const Field2C> dx;
  std::shared_ptr<const Field2C> dy;
};

}  // namespace

CurrentField current_components(const Field2C& psi, const PhysParams& p) {
  validate(p);
  const Grid& g = psi.grid();
  const std::size_t n = g.n;
  PsiBundle bn{std::make_shared<Field2C>(psi),
               std::make_shared<Field2C>(spectral_derivative(psi, 0)),
               std::make_shared<Field2C>(spectral_derivative(psi, 1))};
  const cplx sx{0.0, -p.hbar / (2.0 * p.mass_x)};
  const cplx sy{0.0, -p.hbar / (2.0 * p.mass_y)};

  // The factor grouping below is fixed: prefactor * (pair product * bracket),
  // brackets written with the conjugated-psi term first. The exchange
  // symmetry j_X[i,j,I,J] = j_x[I,J,i,j] and the conjugation relation
  // conj(j_x)[i,j,I,J] = j_X[I,j,i,J] then hold bitwise.

  Field4C::SlabFn fx = [bn, n, sx](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *bn.psi;
    const Field2C& dx = *bn.dx;
    const cplx w = std::conj(f.at(I, J));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx d = f.at(i, J);
      const cplx dd = dx.at(i, J);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx t1 = f.at(I, j) * w;
        const cplx t2 = std::conj(f.at(i, j)) * dd - d * std::conj(dx.at(i, j));
        out[i * n + j] = sx * (t1 * t2);
      }
    }
  };

  Field4C::SlabFn fy = [bn, n, sy](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *bn.psi;
    const Field2C& dy = *bn.dy;
    const cplx w = std::conj(f.at(I, J));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx t1 = w * f.at(i, J);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx t2 = std::conj(f.at(i, j)) * dy.at(I, j) - f.at(I, j) * std::conj(dy.at(i, j));
        out[i * n + j] = sy * (t1 * t2);
      }
    }
  };

  Field4C::SlabFn fX = [bn, n, sx](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *bn.psi;
    const Field2C& dx = *bn.dx;
    const cplx w = std::conj(f.at(I, J));
    const cplx dc = std::conj(dx.at(I, J));
    std::vector<cplx> br(n);
    for (std::size_t j = 0; j < n; ++j) br[j] = w * dx.at(I, j) - f.at(I, j) * dc;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const cplx t1 = std::conj(f.at(i, j)) * f.at(i, J);
        out[i * n + j] = sx * (t1 * br[j]);
      }
    }
  };

  Field4C::SlabFn fY = [bn, n, sy](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *bn.psi;
    const Field2C& dy = *bn.dy;
    const cplx w = std::conj(f.at(I, J));
    const cplx dc = std::conj(dy.at(I, J));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx t2 = w * dy.at(i, J) - f.at(i, J) * dc;
      for (std::size_t j = 0; j < n; ++j) {
        const cplx t1 = std::conj(f.at(i, j)) * f.at(I, j);
        out[i * n + j] = sy * (t1 * t2);
      }
    }
  };

  CurrentField jf;
  jf.jx = Field4C::make_streamed(g, std::move(fx));
  jf.jy = Field4C::make_streamed(g, std::move(fy));
  jf.jX = Field4C::make_streamed(g, std::move(fX));
  jf.jY = Field4C::make_streamed(g, std::move(fY));
  return jf;
}

double SourceField::at(std::size_t i, std::size_t j, std::size_t I, std::size_t J) const {
  if (zero) return 0.0;
  return (v->at(i, j) - v->at(I, j)) + (v->at(I, J) - v->at(i, J));
}

void SourceField::slab(std::size_t I, std::size_t J, std::span<double> out) const {
  const std::size_t n = grid.n;
  if (zero) {
    for (double& x : out) x = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = v->at(I, J) - v->at(i, J);
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = (v->at(i, j) - v->at(I, j)) + t;
    }
  }
}

SourceField source_U(const Potential& v) {
  SourceField u;
  u.grid = v.grid;
  u.zero = v.separable_like();
  u.v = std::make_shared<Potential>(v);
  return u;
}

Field4C dpi_dt_analytic(const Field2C& psi, const Potential& v, const PhysParams& p) {
  const Grid& g = psi.grid();
  const std::size_t n = g.n;
  auto held = std::make_shared<Field2C>(psi);
  auto dot = std::make_shared<Field2C>(apply_hamiltonian(psi, v, p));
  {
    const cplx minus_i_over_hbar{0.0, -1.0 / p.hbar};
    for (cplx& z : dot->values()) z *= minus_i_over_hbar;
  }
  // d(pi)/dt = d[(A* B)]/dt (C* D) + (A* B) d[(C* D)]/dt with the dotted
  // factors from psi_dot = (-i/hbar) H psi.
  Field4C::SlabFn fn = [held, dot, n](std::size_t I, std::size_t J, std::span<cplx> out) {
    const Field2C& f = *held;
    const Field2C& fd = *dot;
    const cplx wc = std::conj(f.at(I, J));
    const cplx wcd = std::conj(fd.at(I, J));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx g2 = wc * f.at(i, J);
      const cplx gd2 = wcd * f.at(i, J) + wc * fd.at(i, J);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx g1 = std::conj(f.at(i, j)) * f.at(I, j);
        const cplx gd1 = std::conj(fd.at(i, j)) * f.at(I, j) + std::conj(f.at(i, j)) * fd.at(I, j);
        out[i * n + j] = gd1 * g2 + g1 * gd2;
      }
    }
  };
  return Field4C::make_streamed(g, std::move(fn));
}

Field4C divergence4(const CurrentField& j) {
  const Grid& g = j.jx.grid();
  check_dense_ok(g, "divergence4");
  const std::size_t n = g.n;

  Field4C acc = materialize(j.jx);
  derivative4_axis_inplace(acc.values(), n, g.length, 0);

  const Field4C* rest[3] = {&j.jy, &j.jX, &j.jY};
  for (int axis = 1; axis <= 3; ++axis) {
    Field4C tmp = materialize(*rest[axis - 1]);
    derivative4_axis_inplace(tmp.values(), n, g.length, axis);
    cplx* a = acc.values().data();
    const cplx* t = tmp.values().data();
    const std::size_t total = acc.values().size();
    for (std::size_t k = 0; k < total; ++k) a[k] += t[k];
  }
  return acc;
}

namespace {

// Adds the streamed field into the dense accumulator and returns its
// L-infinity norm.
double accumulate_streamed(Field4C& acc, const Field4C& f) {
  const std::size_t n = acc.n();
  const std::size_t n2 = n * n;
  std::vector<cplx> buf(n2);
  double linf = 0.0;
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      f.slab(I, J, buf);
      cplx* base = acc.values().data() + I * n + J;
      for (std::size_t ij = 0; ij < n2; ++ij) {
        linf = std::max(linf, std::abs(buf[ij]));
        base[ij * n2] += buf[ij];
      }
    }
  }
  return linf;
}

// Adds the interaction source terms (pi_I/hbar) U to the real residual and
// -(pi_R/hbar) U to the imaginary residual.
void accumulate_source(Field4C& acc, const Field2C& psi, const SourceField& u, double hbar) {
  const std::size_t n = acc.n();
  const std::size_t n2 = n * n;
  std::vector<cplx> pi_buf(n2);
  std::vector<double> u_buf(n2);
  const Field4C pi = purity_density_view(psi);
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      pi.slab(I, J, pi_buf);
      u.slab(I, J, u_buf);
      cplx* base = acc.values().data() + I * n + J;
      for (std::size_t ij = 0; ij < n2; ++ij) {
        const double s = u_buf[ij] / hbar;
        base[ij * n2] += cplx{pi_buf[ij].imag() * s, -pi_buf[ij].real() * s};
      }
    }
  }
}

ContinuityReport norms_from(const Field4C& acc, double reference_scale, ContinuityMode mode) {
  ContinuityReport rep;
  rep.mode = mode;
  rep.reference_scale = reference_scale;
  rep.relative_mode = reference_scale >= 1e-14;
  double l2re = 0.0, l2im = 0.0;
  for (const cplx& z : acc.values()) {
    const double re = z.real();
    const double im = z.imag();
    rep.linf_residual_re = std::max(rep.linf_residual_re, std::abs(re));
    rep.linf_residual_im = std::max(rep.linf_residual_im, std::abs(im));
    l2re += re * re;
    l2im += im * im;
  }
  const double h = acc.grid().spacing;
  rep.l2_residual_re = std::sqrt(l2re) * h * h;
  rep.l2_residual_im = std::sqrt(l2im) * h * h;
  return rep;
}

ContinuityReport residual_impl(const Field2C& psi, const Potential& v,
                               const PhysParams& p, ContinuityMode mode) {
  check_dense_ok(psi.grid(), "continuity residual");
  Field4C acc = divergence4(current_components(psi, p));
  const double ref = accumulate_streamed(acc, dpi_dt_analytic(psi, v, p));
  if (mode == ContinuityMode::interacting) {
    const SourceField u = source_U(v);
    if (!u.zero) accumulate_source(acc, psi, u, p.hbar);
  }
  return norms_from(acc, ref, mode);
}

}  // namespace

double ContinuityReport::relative_linf_re() const {
  return relative_mode ? linf_residual_re / reference_scale : linf_residual_re;
}

double ContinuityReport::relative_linf_im() const {
  return relative_mode ? linf_residual_im / reference_scale : linf_residual_im;
}

double ContinuityReport::worst_relative() const {
  return std::max(relative_linf_re(), relative_linf_im());
}

ContinuityReport residual_free(const Field2C& psi, const PhysParams& p) {
  return residual_impl(psi, make_zero_potential(psi.grid()), p, ContinuityMode::free_flow);
}

ContinuityReport residual_interacting(const Field2C& psi, const Potential& v,
                                      const PhysParams& p) {
  return residual_impl(psi, v, p, ContinuityMode::interacting);
}

PurityRate purity_rate_check(const Field2C& psi, const Potential& v,
                             const PhysParams& p, double dt) {
  PurityRate out;
  const Field2C plus = step_split(psi, v, p, dt);
  const Field2C minus = step_split(psi, v, p, -dt);
  const double pi_plus = purity_from_rho(reduced_density(plus));
  const double pi_minus = purity_from_rho(reduced_density(minus));
  out.lhs = (pi_plus - pi_minus) / (2.0 * dt);

  const SourceField u = source_U(v);
  if (u.zero) {
    out.rhs = 0.0;
    return out;
  }
  // Stream pi and U together; one partial per slab keeps the reduction
  // deterministic.
  const std::size_t n = psi.n();
  const std::size_t n2 = n * n;
  std::vector<cplx> pi_buf(n2);
  std::vector<double> u_buf(n2);
  std::vector<cplx> partials;
  partials.reserve(n2);
  const Field4C pi = purity_density_view(psi);
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      pi.slab(I, J, pi_buf);
      u.slab(I, J, u_buf);
      double s = 0.0;
      for (std::size_t ij = 0; ij < n2; ++ij) s += pi_buf[ij].imag() * u_buf[ij];
      partials.push_back(cplx{s, 0.0});
    }
  }
  const double h = psi.grid().spacing;
  out.rhs = -pairwise_sum(partials).real() * h * h * h * h / p.hbar;
  return out;
}

}  // namespace puridyn
