#include "puridyn/potential.hpp"

namespace puridyn {

Potential make_zero_potential(const Grid& g) {
  Potential v;
  v.grid = g;
  v.kind = PotentialKind::none;
  v.v.assign(g.n * g.n, 0.0);
  return v;
}

Potential make_potential(const Grid& g, PotentialKind kind,
                         const std::function<double(double, double)>& f) {
  Potential v;
  v.grid = g;
  v.kind = kind;
  v.v.resize(g.n * g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    for (std::size_t j = 0; j < g.n; ++j) {
      v.v[i * g.n + j] = f(x, g.coord(j));
    }
  }
  return v;
}

}  // namespace puridyn
