#pragma once

#include <memory>

#include "puridyn/field2.hpp"
#include "puridyn/grid.hpp"
#include "puridyn/potential.hpp"

namespace puridyn {

/// Crank-Nicolson reference integrator on the dense N^2 x N^2 Hamiltonian:
/// (1 + i dt H / 2 hbar) psi' = (1 - i dt H / 2 hbar) psi. The discrete H
/// uses the same spectral second-derivative matrix as the split stepper's
/// momentum-space kinetic factor, so the two integrators target the same
/// discrete flow and differ only by time-integration error.
///
/// The dense operator costs O(N^4) memory; construction refuses n > 24.
class CnReference {
 public:
  CnReference(const Grid& g, const Potential& v, const PhysParams& p, double dt);
  ~CnReference();

  CnReference(CnReference&&) noexcept;
  CnReference& operator=(CnReference&&) noexcept;

  Field2C step(const Field2C& psi) const;

  static constexpr std::size_t max_n = 24;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One Crank-Nicolson step; builds (and factorizes) the dense operator per
/// call. Loops should use CnReference directly to reuse the factorization.
Field2C cn_reference_step(const Field2C& psi, const Potential& v,
                          const PhysParams& p, double dt);

}  // namespace puridyn
