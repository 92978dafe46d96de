#include "ukc/pwl.hpp"

#include <algorithm>
#include <utility>

namespace ukc {

namespace {

template <Scalar R>
bool ordered_before(const Line<R>& a, const Line<R>& b) {
  if (a.slope != b.slope) return a.slope < b.slope;
  return a.intercept < b.intercept;
}

template <Scalar R>
R slope_between(const Breakpoint<R>& a, const Breakpoint<R>& b) {
  return (b.y - a.y) / (b.t - a.t);
}

}  // namespace

template <Scalar R>
R intersection_y(const Line<R>& a, const Line<R>& b) {
  const Line<R>& lo = ordered_before(a, b) ? a : b;
  const Line<R>& hi = ordered_before(a, b) ? b : a;
  if (lo.slope == hi.slope) throw std::domain_error("intersection_y: parallel lines");
  return (lo.slope * hi.intercept - lo.intercept * hi.slope) / (lo.slope - hi.slope);
}

template <Scalar R>
R intersection_t(const Line<R>& a, const Line<R>& b) {
  const Line<R>& lo = ordered_before(a, b) ? a : b;
  const Line<R>& hi = ordered_before(a, b) ? b : a;
  if (lo.slope == hi.slope) throw std::domain_error("intersection_t: parallel lines");
  return (hi.intercept - lo.intercept) / (lo.slope - hi.slope);
}

template <Scalar R>
PwlFunction<R>::PwlFunction(std::vector<Breakpoint<R>> points, const R& merge_tolerance) {
  if (points.size() < 2) throw ValidationError("PwlFunction needs at least two breakpoints");
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!(points[k - 1].t < points[k].t)) {
      throw ValidationError("PwlFunction breakpoints must be strictly increasing in t");
    }
  }
  if constexpr (std::is_same_v<R, double>) {
    for (const auto& p : points) {
      if (!std::isfinite(p.y) || !std::isfinite(p.t)) throw ValidationError("PwlFunction values must be finite");
    }
  }
  points_.reserve(points.size());
  points_.push_back(points.front());
  for (std::size_t k = 1; k + 1 < points.size(); ++k) {
    const R left = slope_between(points_.back(), points[k]);
    const R right = slope_between(points[k], points[k + 1]);
    if (abs_value(R(left - right)) > merge_tolerance) points_.push_back(points[k]);
  }
  points_.push_back(points.back());
}

template <Scalar R>
Line<R> PwlFunction<R>::piece(std::size_t k) const {
  const auto& a = points_[k];
  const auto& b = points_[k + 1];
  const R slope = slope_between(a, b);
  return {slope, a.y - slope * a.t};
}

template <Scalar R>
std::size_t PwlFunction<R>::piece_index(const R& t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const R& v, const Breakpoint<R>& p) { return v < p.t; });
  std::size_t k = static_cast<std::size_t>(it - points_.begin());
  k = k == 0 ? 0 : k - 1;
  return std::min(k, piece_count() - 1);
}

template <Scalar R>
R PwlFunction<R>::evaluate(const R& t) const {
  if (t < lo() || hi() < t) throw ValidationError("evaluate: offset outside the function domain");
  const std::size_t k = piece_index(t);
  const auto& a = points_[k];
  const auto& b = points_[k + 1];
  if (t == a.t) return a.y;
  if (t == b.t) return b.y;
  return a.y + (b.y - a.y) * ((t - a.t) / (b.t - a.t));
}

template <Scalar R>
R PwlFunction<R>::min_value() const {
  return std::min_element(points_.begin(), points_.end(),
                          [](const auto& a, const auto& b) { return a.y < b.y; })
      ->y;
}

template <Scalar R>
R PwlFunction<R>::max_value() const {
  return std::max_element(points_.begin(), points_.end(),
                          [](const auto& a, const auto& b) { return a.y < b.y; })
      ->y;
}

template <Scalar R>
std::vector<Interval<R>> sublevel_set(const PwlFunction<R>& f, const R& level) {
  std::vector<Interval<R>> out;
  const auto& pts = f.breakpoints();
  auto emit = [&out](R lo, R hi) {
    if (!out.empty() && !(out.back().hi < lo)) {
      if (out.back().hi < hi) out.back().hi = std::move(hi);
      return;
    }
    out.push_back({std::move(lo), std::move(hi), true, true});
  };
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto& a = pts[k];
    const auto& b = pts[k + 1];
    const bool a_in = !(level < a.y);
    const bool b_in = !(level < b.y);
    if (a_in && b_in) {
      emit(a.t, b.t);
    } else if (a_in || b_in) {
      // Single crossing on this piece: solve the linear equation y(t) = level.
      R cross = a.t + (level - a.y) * ((b.t - a.t) / (b.y - a.y));
      if (cross < a.t) cross = a.t;
      if (b.t < cross) cross = b.t;
      if (a_in) {
        emit(a.t, cross);
      } else {
        emit(cross, b.t);
      }
    }
  }
  return out;
}

template <Scalar R>
std::vector<Interval<R>> superlevel_open_set(const PwlFunction<R>& f, const R& level) {
  const auto below = sublevel_set(f, level);
  std::vector<Interval<R>> out;
  R cursor = f.lo();
  bool cursor_is_boundary = true;
  for (const auto& iv : below) {
    if (cursor < iv.lo) out.push_back({cursor, iv.lo, cursor_is_boundary, false});
    cursor = iv.hi;
    cursor_is_boundary = false;
  }
  if (cursor_is_boundary) {
    out.push_back({f.lo(), f.hi(), true, true});
  } else if (cursor < f.hi()) {
    out.push_back({cursor, f.hi(), false, true});
  }
  return out;
}

template <Scalar R>
PwlFunction<R> scale(const PwlFunction<R>& f, const R& w) {
  if (w < R(0)) throw ValidationError("scale: weight must be non-negative");
  std::vector<Breakpoint<R>> pts = f.breakpoints();
  for (auto& p : pts) p.y = w * p.y;
  // Merging is only affected by the scale factor, so reuse exact equality.
  return PwlFunction<R>(std::move(pts), R(0));
}

namespace {

template <Scalar R>
PwlFunction<R> combine_linear(const PwlFunction<R>& f, const Line<R>& g, const Interval<R>& sub, const R& sign) {
  if (sub.lo < f.lo() || f.hi() < sub.hi || !(sub.lo < sub.hi)) {
    throw ValidationError("add_linear: subinterval must be a non-degenerate part of the domain");
  }
  std::vector<Breakpoint<R>> pts;
  pts.push_back({sub.lo, f.evaluate(sub.lo) + sign * g.at(sub.lo)});
  for (const auto& p : f.breakpoints()) {
    if (sub.lo < p.t && p.t < sub.hi) pts.push_back({p.t, p.y + sign * g.at(p.t)});
  }
  pts.push_back({sub.hi, f.evaluate(sub.hi) + sign * g.at(sub.hi)});
  return PwlFunction<R>(std::move(pts), R(0));
}

}  // namespace

template <Scalar R>
PwlFunction<R> add_linear(const PwlFunction<R>& f, const Line<R>& g, const Interval<R>& sub) {
  return combine_linear(f, g, sub, R(1));
}

template <Scalar R>
PwlFunction<R> subtract_linear(const PwlFunction<R>& f, const Line<R>& g, const Interval<R>& sub) {
  return combine_linear(f, g, sub, R(-1));
}

#define UKC_INSTANTIATE_PWL(R)                                                                       \
  template R intersection_y<R>(const Line<R>&, const Line<R>&);                                      \
  template R intersection_t<R>(const Line<R>&, const Line<R>&);                                      \
  template class PwlFunction<R>;                                                                     \
  template std::vector<Interval<R>> sublevel_set<R>(const PwlFunction<R>&, const R&);                \
  template std::vector<Interval<R>> superlevel_open_set<R>(const PwlFunction<R>&, const R&);         \
  template PwlFunction<R> scale<R>(const PwlFunction<R>&, const R&);                                 \
  template PwlFunction<R> add_linear<R>(const PwlFunction<R>&, const Line<R>&, const Interval<R>&);  \
  template PwlFunction<R> subtract_linear<R>(const PwlFunction<R>&, const Line<R>&, const Interval<R>&);

UKC_INSTANTIATE_PWL(double)
UKC_INSTANTIATE_PWL(Rational)

}  // namespace ukc
