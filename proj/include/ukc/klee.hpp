#ifndef UKC_KLEE_HPP
#define UKC_KLEE_HPP

#include <span>
#include <vector>

#include "ukc/numeric.hpp"

namespace ukc {

// Closed axis-parallel box [lo[s], hi[s]] in every dimension s.
template <Scalar R>
struct KBox {
  std::vector<R> lo;
  std::vector<R> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  friend bool operator==(const KBox&, const KBox&) = default;
};

template <Scalar R>
R box_volume(const KBox<R>& box);

// Volume of the union of the boxes. Recursive sweep over the last coordinate:
// every slab between consecutive distinct coordinates reduces to a
// (dim-1)-dimensional union of the boxes spanning it.
template <Scalar R>
R klee_measure(std::span<const KBox<R>> boxes, int dim);

// Volume of universe minus the union of the boxes, accumulated as a sum of
// non-negative slab terms, so the result is positive exactly when some cell
// of the universe is left uncovered.
template <Scalar R>
R uncovered_measure(std::span<const KBox<R>> boxes, const KBox<R>& universe);

}  // namespace ukc

#endif  // UKC_KLEE_HPP
