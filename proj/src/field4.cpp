#include "puridyn/field4.hpp"

#include <cmath>
#include <string>

#include "puridyn/errors.hpp"

namespace puridyn {

Field4C Field4C::make_dense(const Grid& g) {
  if (g.n > dense_limit) {
    throw InvalidArgument("dense Field4C limited to n <= " +
                          std::to_string(dense_limit) + ", got " + std::to_string(g.n));
  }
  Field4C f;
  f.grid_ = g;
  f.v_.assign(g.n * g.n * g.n * g.n, cplx{0.0, 0.0});
  return f;
}

Field4C Field4C::make_streamed(const Grid& g, SlabFn fn) {
  Field4C f;
  f.grid_ = g;
  f.fn_ = std::move(fn);
  return f;
}

cplx& Field4C::at(std::size_t i, std::size_t j, std::size_t I, std::size_t J) {
  const std::size_t n = grid_.n;
  return v_[((i * n + j) * n + I) * n + J];
}

const cplx& Field4C::at(std::size_t i, std::size_t j, std::size_t I, std::size_t J) const {
  const std::size_t n = grid_.n;
  return v_[((i * n + j) * n + I) * n + J];
}

std::vector<cplx>& Field4C::values() {
  if (!dense()) throw InvalidArgument("values() requires dense Field4C storage");
  return v_;
}

const std::vector<cplx>& Field4C::values() const {
  if (!dense()) throw InvalidArgument("values() requires dense Field4C storage");
  return v_;
}

void Field4C::slab(std::size_t I, std::size_t J, std::span<cplx> out) const {
  const std::size_t n = grid_.n;
  if (out.size() != n * n) throw InvalidArgument("slab buffer size mismatch");
  if (dense()) {
    const std::size_t n2 = n * n;
    const cplx* base = v_.data() + I * n + J;
    for (std::size_t ij = 0; ij < n2; ++ij) out[ij] = base[ij * n2];
    return;
  }
  if (!fn_) throw InvalidArgument("slab() on an empty Field4C");
  fn_(I, J, out);
}

cplx pairwise_sum(std::span<const cplx> xs) {
  if (xs.size() <= 8) {
    cplx s{0.0, 0.0};
    for (const cplx& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

cplx integrate4(const Field4C& f) {
  const std::size_t n = f.n();
  std::vector<cplx> buf(n * n);
  std::vector<cplx> partials;
  partials.reserve(n * n);
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      f.slab(I, J, buf);
      cplx s{0.0, 0.0};
      for (const cplx& z : buf) s += z;
      partials.push_back(s);
    }
  }
  const double h = f.grid().spacing;
  return pairwise_sum(partials) * (h * h * h * h);
}

Field4C materialize(const Field4C& f) {
  Field4C out = Field4C::make_dense(f.grid());
  const std::size_t n = f.n();
  const std::size_t n2 = n * n;
  std::vector<cplx> buf(n2);
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      f.slab(I, J, buf);
      cplx* base = out.values().data() + I * n + J;
      for (std::size_t ij = 0; ij < n2; ++ij) base[ij * n2] = buf[ij];
    }
  }
  return out;
}

double norm_linf4(const Field4C& f) {
  const std::size_t n = f.n();
  std::vector<cplx> buf(n * n);
  double m = 0.0;
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      f.slab(I, J, buf);
      for (const cplx& z : buf) m = std::max(m, std::abs(z));
    }
  }
  return m;
}

}  // namespace puridyn
