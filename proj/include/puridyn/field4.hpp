#pragma once

#include <functional>
#include <span>
#include <vector>

#include "puridyn/field2.hpp"
#include "puridyn/grid.hpp"

namespace puridyn {

/// Complex field on the four-dimensional lattice Grid^4, logical index
/// (i, j, I, J) with i, I running over the x-type axes and j, J over the
/// y-type axes. Storage is either dense (row-major, i slowest) or
/// slab-streamed: a generator fills the (i, j) plane for a fixed (I, J)
/// on demand and the n^4 array is never materialized.
class Field4C {
 public:
  /// Dense storage is allowed up to this n; a dense complex field at n = 48
  /// is about 85 MB, and the divergence pipeline holds two of them.
  static constexpr std::size_t dense_limit = 48;

  /// Fills out[i*n + j] with the plane at fixed (I, J).
  using SlabFn = std::function<void(std::size_t I, std::size_t J, std::span<cplx> out)>;

  Field4C() = default;

  static Field4C make_dense(const Grid& g);
  static Field4C make_streamed(const Grid& g, SlabFn fn);

  const Grid& grid() const { return grid_; }
  std::size_t n() const { return grid_.n; }
  bool dense() const { return !v_.empty(); }

  /// Dense-only element access.
  cplx& at(std::size_t i, std::size_t j, std::size_t I, std::size_t J);
  const cplx& at(std::size_t i, std::size_t j, std::size_t I, std::size_t J) const;
  std::vector<cplx>& values();
  const std::vector<cplx>& values() const;

  /// Evaluates the (i, j) plane at fixed (I, J) into out (size n^2,
  /// row-major i*n + j). Works for both storage modes; for dense storage
  /// this gathers the strided plane.
  void slab(std::size_t I, std::size_t J, std::span<cplx> out) const;

 private:
  Grid grid_;
  std::vector<cplx> v_;
  SlabFn fn_;
};

/// Sum of f times spacing^4. Streams slab by slab over (I, J); one partial
/// sum per slab is kept and the partials are combined with a fixed pairwise
/// tree, so dense and streamed storage produce identical bits and the result
/// is reproducible across runs.
cplx integrate4(const Field4C& f);

/// Dense copy of f (gathers all slabs when streamed). Rejects n > dense_limit.
Field4C materialize(const Field4C& f);

/// Largest |f| over the lattice, streamed.
double norm_linf4(const Field4C& f);

/// Deterministic pairwise-tree sum; the reduction shape depends only on the
/// element count.
cplx pairwise_sum(std::span<const cplx> xs);

}  // namespace puridyn
