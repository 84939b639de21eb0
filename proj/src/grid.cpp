#include "puridyn/grid.hpp"

#include <string>

#include "puridyn/errors.hpp"

namespace puridyn {

Grid make_grid(std::size_t n, double length) {
  if (n < 8) throw InvalidArgument("grid n must be at least 8, got " + std::to_string(n));
  if (n % 2 != 0) throw InvalidArgument("grid n must be even, got " + std::to_string(n));
  if (!(length > 0.0)) {
    throw InvalidArgument("grid length must be positive, got " + std::to_string(length));
  }
  Grid g;
  g.n = n;
  g.length = length;
  g.spacing = length / static_cast<double>(n);
  return g;
}

void validate(const PhysParams& p) {
  if (!(p.hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (!(p.mass_x > 0.0)) throw InvalidArgument("mass_x must be positive");
  if (!(p.mass_y > 0.0)) throw InvalidArgument("mass_y must be positive");
}

}  // namespace puridyn
