#ifndef UKC_PWL_HPP
#define UKC_PWL_HPP

#include <cstddef>
#include <vector>

#include "ukc/numeric.hpp"

namespace ukc {

// y = slope * t + intercept, t measured from the start of the edge.
template <Scalar R>
struct Line {
  R slope{0};
  R intercept{0};

  R at(const R& t) const { return slope * t + intercept; }

  Line& operator+=(const Line& o) {
    slope += o.slope;
    intercept += o.intercept;
    return *this;
  }
  Line& operator-=(const Line& o) {
    slope -= o.slope;
    intercept -= o.intercept;
    return *this;
  }
  friend Line operator+(Line a, const Line& b) { return a += b; }
  friend Line operator-(Line a, const Line& b) { return a -= b; }
  friend Line operator*(const R& w, const Line& l) { return {w * l.slope, w * l.intercept}; }
  friend bool operator==(const Line&, const Line&) = default;
};

// y-coordinate where two non-parallel lines meet. The operands are ordered
// internally so the result does not depend on argument order.
template <Scalar R>
R intersection_y(const Line<R>& a, const Line<R>& b);

// t-coordinate of the same intersection.
template <Scalar R>
R intersection_t(const Line<R>& a, const Line<R>& b);

template <Scalar R>
struct Breakpoint {
  R t;
  R y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Interval of offsets. For open sets, a closed end marks a domain boundary
// that belongs to the set.
template <Scalar R>
struct Interval {
  R lo;
  R hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const R& t) const {
    const bool above = lo_closed ? !(t < lo) : lo < t;
    const bool below = hi_closed ? !(hi < t) : t < hi;
    return above && below;
  }
  R length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Continuous piecewise-linear function on [lo, hi], stored as its breakpoints.
// Consecutive pieces whose slopes agree within merge_tolerance are merged.
template <Scalar R>
class PwlFunction {
 public:
  PwlFunction() = default;
  explicit PwlFunction(std::vector<Breakpoint<R>> points,
                       const R& merge_tolerance = ScalarTraits<R>::default_tolerance());

  const std::vector<Breakpoint<R>>& breakpoints() const { return points_; }
  const R& lo() const { return points_.front().t; }
  const R& hi() const { return points_.back().t; }
  std::size_t piece_count() const { return points_.size() - 1; }

  // Line through breakpoints k and k+1.
  Line<R> piece(std::size_t k) const;
  // Index of the piece containing t; a breakpoint belongs to the piece on its right
  // (the last breakpoint to the last piece).
  std::size_t piece_index(const R& t) const;

  R evaluate(const R& t) const;
  R min_value() const;
  R max_value() const;

 private:
  std::vector<Breakpoint<R>> points_;
};

template <Scalar R>
R evaluate(const PwlFunction<R>& f, const R& t) {
  return f.evaluate(t);
}

// Maximal closed intervals where f(t) <= level, sorted. A tangency yields [t, t].
template <Scalar R>
std::vector<Interval<R>> sublevel_set(const PwlFunction<R>& f, const R& level);

// Maximal open intervals where f(t) > level; the complement of sublevel_set in
// the domain. Ends at the domain boundary are flagged closed.
template <Scalar R>
std::vector<Interval<R>> superlevel_open_set(const PwlFunction<R>& f, const R& level);

template <Scalar R>
PwlFunction<R> scale(const PwlFunction<R>& f, const R& w);

// (f + g) restricted to sub. Breakpoints: those of f inside sub plus sub's ends.
template <Scalar R>
PwlFunction<R> add_linear(const PwlFunction<R>& f, const Line<R>& g, const Interval<R>& sub);

template <Scalar R>
PwlFunction<R> subtract_linear(const PwlFunction<R>& f, const Line<R>& g, const Interval<R>& sub);

}  // namespace ukc

#endif  // UKC_PWL_HPP
