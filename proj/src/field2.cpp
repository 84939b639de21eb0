#include "puridyn/field2.hpp"

#include <cmath>
#include <string>

#include "puridyn/errors.hpp"

namespace puridyn {

Field2C Field2C::from_function(const Grid& g,
                               const std::function<cplx(double, double)>& f) {
  Field2C out(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    for (std::size_t j = 0; j < g.n; ++j) {
      out.at(i, j) = f(x, g.coord(j));
    }
  }
  return out;
}

cplx integrate2(const Field2C& f) {
  cplx sum{0.0, 0.0};
  for (const cplx& z : f.values()) sum += z;
  const double h = f.grid().spacing;
  return sum * (h * h);
}

double norm_l2(const Field2C& f) {
  double sum = 0.0;
  for (const cplx& z : f.values()) sum += std::norm(z);
  const double h = f.grid().spacing;
  return std::sqrt(sum) * h;
}

double norm_linf(const Field2C& f) {
  double m = 0.0;
  for (const cplx& z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const Field2C& a, const Field2C& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("grid mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  }
  return m;
}

void normalize(Field2C& f) {
  const double nrm = norm_l2(f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericalAbort("cannot normalize a zero or non-finite field");
  }
  const double s = 1.0 / nrm;
  for (cplx& z : f.values()) z *= s;
}

bool all_finite(const Field2C& f) {
  for (const cplx& z : f.values()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const Field2C& f, const char* what) {
  if (!all_finite(f)) {
    throw NumericalAbort(std::string("non-finite values in ") + what);
  }
}

}  // namespace puridyn
