#ifndef UKC_ONE_CENTER_HPP
#define UKC_ONE_CENTER_HPP

#include <utility>
#include <vector>

#include "ukc/optimizer.hpp"

namespace ukc {

// A turning point x_s of the merged sweep on one edge, with the uncertain
// points whose weighted Ed turns there and their lines on [x_s, x_{s+1}].
template <Scalar R>
struct EnvelopeEvent {
  R t;
  std::vector<std::pair<int, Line<R>>> updates;
};

// Events ordered by t: the first at 0 updates every point, the last at the
// edge length updates none.
template <Scalar R>
std::vector<EnvelopeEvent<R>> envelope_events(const Instance<R>& inst, int e);

template <Scalar R>
struct EdgeCenter {
  int edge = -1;
  R t{0};
  R value{0};
  int achieving_point = -1;
};

// Lowest point of max_i w_i Ed(P_i, .) on edge e; ties go to the smaller t.
template <Scalar R>
EdgeCenter<R> lowest_envelope_point_on_edge(const Instance<R>& inst, int e);

// Lowest point of the upper envelope of `lines` over [a, b]; returns (t, value, line index).
template <Scalar R>
struct EnvelopeMinimum {
  R t;
  R value;
  std::size_t line = 0;
};

template <Scalar R>
EnvelopeMinimum<R> lowest_point_of_upper_envelope(std::span<const Line<R>> lines, const R& a, const R& b);

template <Scalar R>
Solution<R> solve_one_center(const Instance<R>& inst, Exec exec = Exec::kParallel);

}  // namespace ukc

#endif  // UKC_ONE_CENTER_HPP
