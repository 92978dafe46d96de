#include "ukc/klee.hpp"

#include <algorithm>
#include <utility>

namespace ukc {

namespace {

template <Scalar R>
void check_dims(std::span<const KBox<R>> boxes, int dim) {
  if (dim < 1) throw ValidationError("klee_measure: dimension must be at least 1");
  for (const auto& b : boxes) {
    if (b.dim() != dim || static_cast<int>(b.hi.size()) != dim) {
      throw ValidationError("klee_measure: box dimension mismatch");
    }
  }
}

template <Scalar R>
std::vector<R> slab_coordinates(std::span<const KBox<R>> boxes, const std::vector<std::size_t>& ids, std::size_t axis) {
  std::vector<R> xs;
  xs.reserve(ids.size() * 2);
  for (auto id : ids) {
    xs.push_back(boxes[id].lo[axis]);
    xs.push_back(boxes[id].hi[axis]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <Scalar R>
std::vector<std::size_t> spanning(std::span<const KBox<R>> boxes, const std::vector<std::size_t>& ids,
                                  std::size_t axis, const R& a, const R& b) {
  std::vector<std::size_t> out;
  for (auto id : ids) {
    if (!(a < boxes[id].lo[axis]) && !(boxes[id].hi[axis] < b)) out.push_back(id);
  }
  return out;
}

template <Scalar R>
R union_measure(std::span<const KBox<R>> boxes, const std::vector<std::size_t>& ids, std::size_t dims) {
  if (ids.empty()) return R(0);
  const std::size_t axis = dims - 1;
  if (dims == 1) {
    std::vector<std::pair<R, R>> iv;
    iv.reserve(ids.size());
    for (auto id : ids) iv.emplace_back(boxes[id].lo[0], boxes[id].hi[0]);
    std::sort(iv.begin(), iv.end());
    R total(0);
    R lo = iv[0].first;
    R hi = iv[0].second;
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (hi < iv[k].first) {
        total += hi - lo;
        lo = iv[k].first;
        hi = iv[k].second;
      } else if (hi < iv[k].second) {
        hi = iv[k].second;
      }
    }
    total += hi - lo;
    return total;
  }
  const auto xs = slab_coordinates(boxes, ids, axis);
  R total(0);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const auto active = spanning(boxes, ids, axis, xs[k], xs[k + 1]);
    if (!active.empty()) total += (xs[k + 1] - xs[k]) * union_measure(boxes, active, dims - 1);
  }
  return total;
}

template <Scalar R>
R prefix_volume(const KBox<R>& box, std::size_t dims) {
  R v(1);
  for (std::size_t s = 0; s < dims; ++s) v *= box.hi[s] - box.lo[s];
  return v;
}

template <Scalar R>
R gap_measure(std::span<const KBox<R>> boxes, const std::vector<std::size_t>& ids, const KBox<R>& universe,
              std::size_t dims) {
  if (ids.empty()) return prefix_volume(universe, dims);
  const std::size_t axis = dims - 1;
  if (dims == 1) {
    std::vector<std::pair<R, R>> iv;
    iv.reserve(ids.size());
    for (auto id : ids) iv.emplace_back(boxes[id].lo[0], boxes[id].hi[0]);
    std::sort(iv.begin(), iv.end());
    R total(0);
    R reach = universe.lo[0];
    for (const auto& [lo, hi] : iv) {
      if (reach < lo) total += lo - reach;
      if (reach < hi) reach = hi;
    }
    if (reach < universe.hi[0]) total += universe.hi[0] - reach;
    return total;
  }
  auto xs = slab_coordinates(boxes, ids, axis);
  xs.push_back(universe.lo[axis]);
  xs.push_back(universe.hi[axis]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  R total(0);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const auto active = spanning(boxes, ids, axis, xs[k], xs[k + 1]);
    const R rest = gap_measure(boxes, active, universe, dims - 1);
    if (R(0) < rest) total += (xs[k + 1] - xs[k]) * rest;
  }
  return total;
}

}  // namespace

template <Scalar R>
R box_volume(const KBox<R>& box) {
  return prefix_volume(box, box.lo.size());
}

template <Scalar R>
R klee_measure(std::span<const KBox<R>> boxes, int dim) {
  check_dims(boxes, dim);
  std::vector<std::size_t> ids;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    bool positive = true;
    for (int s = 0; s < dim; ++s) positive = positive && boxes[k].lo[static_cast<std::size_t>(s)] < boxes[k].hi[static_cast<std::size_t>(s)];
    if (positive) ids.push_back(k);
  }
  return union_measure(boxes, ids, static_cast<std::size_t>(dim));
}

template <Scalar R>
R uncovered_measure(std::span<const KBox<R>> boxes, const KBox<R>& universe) {
  const int dim = universe.dim();
  check_dims(boxes, dim);
  // Clip to the universe; boxes without interior cannot cover positive measure.
  std::vector<KBox<R>> clipped;
  clipped.reserve(boxes.size());
  for (const auto& b : boxes) {
    KBox<R> c = b;
    bool positive = true;
    for (std::size_t s = 0; s < static_cast<std::size_t>(dim); ++s) {
      c.lo[s] = std::max(c.lo[s], universe.lo[s]);
      c.hi[s] = std::min(c.hi[s], universe.hi[s]);
      positive = positive && c.lo[s] < c.hi[s];
    }
    if (positive) clipped.push_back(std::move(c));
  }
  std::vector<std::size_t> ids(clipped.size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  return gap_measure(std::span<const KBox<R>>(clipped), ids, universe, static_cast<std::size_t>(dim));
}

#define UKC_INSTANTIATE_KLEE(R)                                   \
  template R box_volume<R>(const KBox<R>&);                       \
  template R klee_measure<R>(std::span<const KBox<R>>, int);      \
  template R uncovered_measure<R>(std::span<const KBox<R>>, const KBox<R>&);

UKC_INSTANTIATE_KLEE(double)
UKC_INSTANTIATE_KLEE(Rational)

}  // namespace ukc
