#pragma once

#include <functional>
#include <vector>

#include "puridyn/grid.hpp"

namespace puridyn {

/// The kind tag is semantic, not just descriptive: separable-like kinds
/// short-circuit the interaction source U to exactly zero.
enum class PotentialKind { none, separable, bilinear, gaussian_coupling, custom };

/// Real position potential V(x, y) on the N x N grid, row-major (i, j).
struct Potential {
  Grid grid;
  PotentialKind kind = PotentialKind::none;
  std::vector<double> v;

  double at(std::size_t i, std::size_t j) const { return v[i * grid.n + j]; }

  /// True when the kind guarantees V = f(x) + g(y), which makes the
  /// four-point source cancel identically.
  bool separable_like() const {
    return kind == PotentialKind::none || kind == PotentialKind::separable;
  }
};

Potential make_zero_potential(const Grid& g);

Potential make_potential(const Grid& g, PotentialKind kind,
                         const std::function<double(double, double)>& f);

}  // namespace puridyn
