#ifndef UKC_FEASIBILITY_HPP
#define UKC_FEASIBILITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ukc/klee.hpp"
#include "ukc/uncertain.hpp"

namespace ukc {

// Decision procedures for "is there a k-center set with objective <= lambda".
//
// Ties: interval endpoints are solved at lambda and a point covers P_i when
// w_i * Ed(P_i, q) <= lambda + tol, so boundary points of feasible intervals
// count as covering despite rounding (tol = 0 in exact mode).

enum class Engine { kCandidates, kBoxes };

// Q(E): every vertex (canonical representation, in vertex order) followed by
// the endpoints of all feasible intervals that are not vertices, sorted by
// (edge, t) and deduplicated within the instance tolerance.
template <Scalar R>
struct CandidatePointSet {
  std::vector<GraphPoint<R>> points;
  int num_vertices = 0;
};

template <Scalar R>
CandidatePointSet<R> candidate_point_set(const Instance<R>& inst, const R& lambda);

// Does q cover P_i under lambda (with the tie slack above)?
template <Scalar R>
bool covers(const Instance<R>& inst, int i, const GraphPoint<R>& q, const R& lambda);

// First k-subset of Q(E) in lexicographic order that covers every uncertain
// point, padded by repetition when |Q(E)| < k. nullopt when none exists.
template <Scalar R>
std::optional<std::vector<GraphPoint<R>>> feasible_by_candidates(const Instance<R>& inst, int k, const R& lambda,
                                                                 Exec exec = Exec::kParallel);

// Open set where w_i Ed(P_i, .) > lambda on edge e. Empty: every point of e covers P_i.
template <Scalar R>
std::vector<Interval<R>> forbidden_segments(const Instance<R>& inst, int i, int e, const R& lambda);

// All forbidden segments on one edge of the multiset, pooled over the uncertain points.
template <Scalar R>
struct EdgeSegments {
  R length;
  std::vector<Interval<R>> segments;
};

// delta = 1/2 min_s delta_s, delta_s the smallest positive gap between
// segment endpoints on edge s; 1/2 min_s length_s when no edge has a gap.
template <Scalar R>
R shrink_delta(std::span<const EdgeSegments<R>> edges);

// Local feasibility data for a multiset of edges: the uncertain points that
// survive pruning and their forbidden segments in every dimension.
template <Scalar R>
struct LocalProblem {
  std::vector<int> edges;
  std::vector<R> lengths;
  std::vector<int> active;
  // segments[a][s]: forbidden segments of active[a] on edges[s].
  std::vector<std::vector<std::vector<Interval<R>>>> segments;

  int dim() const { return static_cast<int>(edges.size()); }
  std::vector<EdgeSegments<R>> pooled() const;
};

// Builds the local problem for the uncertain points listed in `points`.
// Endpoints on one edge closer than the tolerance are snapped together;
// segments that collapse are dropped, and points left with no segment on
// some edge are pruned.
template <Scalar R>
LocalProblem<R> build_local_problem(const Instance<R>& inst, std::span<const int> edges, const R& lambda,
                                    std::span<const int> points);

template <Scalar R>
struct BoxSet {
  std::vector<std::vector<KBox<R>>> per_point;  // D_i, aligned with LocalProblem::active
  KBox<R> universe;                             // Gamma'
  R delta{0};
};

// Shrinks every forbidden segment by delta on each open end (a closed end is a
// forbidden domain boundary) and takes cartesian products.
template <Scalar R>
BoxSet<R> build_boxes(const LocalProblem<R>& local);

template <Scalar R>
BoxSet<R> build_boxes(const Instance<R>& inst, std::span<const int> edges, const R& lambda);

// Verdict of the shrunk-box test on a prepared local problem.
template <Scalar R>
bool local_feasible(const LocalProblem<R>& local);

// Can one interior point per listed edge cover every point in `points`?
template <Scalar R>
bool local_feasible_on_edges(const Instance<R>& inst, std::span<const int> edges, const R& lambda,
                             std::span<const int> points);

template <Scalar R>
bool local_feasible_on_edges(const Instance<R>& inst, std::span<const int> edges, const R& lambda);

// Enumerates every split k = k' + k'', every k''-subset of vertices and every
// k'-multiset of edges; feasible when any combination passes.
template <Scalar R>
bool feasible_by_boxes(const Instance<R>& inst, int k, const R& lambda, Exec exec = Exec::kParallel);

template <Scalar R>
bool is_feasible(const Instance<R>& inst, int k, const R& lambda, Engine engine, Exec exec = Exec::kParallel);

}  // namespace ukc

#endif  // UKC_FEASIBILITY_HPP
