#pragma once

#include <cstddef>
#include <vector>

#include "puridyn/errors.hpp"

namespace puridyn {

/// Uniform periodic 1D lattice, reused for every axis of the 2D physical
/// space and the 4D dynamical space. Point i sits at -length/2 + i*spacing;
/// the right endpoint +length/2 is identified with the left one.
struct Grid {
  std::size_t n = 0;     // points per axis, even, >= 8
  double length = 0.0;   // domain extent
  double spacing = 0.0;  // always length / n

  double coord(std::size_t i) const { return -0.5 * length + double(i) * spacing; }

  std::vector<double> coords() const {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = coord(i);
    return x;
  }

  bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
};

/// Physical constants of the two-particle problem; dimensionless units,
/// defaults hbar = m = M = 1.
struct PhysParams {
  double hbar = 1.0;
  double mass_x = 1.0;  // m, first particle
  double mass_y = 1.0;  // M, second particle
};

Grid make_grid(std::size_t n, double length);
void validate(const PhysParams& p);

}  // namespace puridyn
