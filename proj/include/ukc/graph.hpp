#ifndef UKC_GRAPH_HPP
#define UKC_GRAPH_HPP

#include <optional>
#include <span>
#include <vector>

#include "ukc/numeric.hpp"
#include "ukc/pwl.hpp"

namespace ukc {

template <Scalar R>
struct Edge {
  int u = 0;
  int v = 0;
  R length{1};
};

// Dense all-pairs shortest path lengths, |V| Dijkstra runs.
// Throws DisconnectedGraphError when some pair is unreachable.
template <Scalar R>
std::vector<R> build_distance_matrix(int num_vertices, std::span<const Edge<R>> edges);

// Undirected simple graph, immutable once built.
template <Scalar R>
class Graph {
 public:
  // Validates the edge list (no loops, no parallel edges, positive lengths,
  // at least one edge) and computes the distance matrix.
  Graph(int num_vertices, std::vector<Edge<R>> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge<R>& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::span<const Edge<R>> edges() const { return edges_; }
  const R& dist(int a, int b) const {
    return dist_[static_cast<std::size_t>(a) * static_cast<std::size_t>(num_vertices_) + static_cast<std::size_t>(b)];
  }
  // Lowest-id edge incident to v; used for the canonical vertex representation.
  int anchor_edge(int v) const { return anchor_.at(static_cast<std::size_t>(v)); }

 private:
  int num_vertices_;
  std::vector<Edge<R>> edges_;
  std::vector<R> dist_;
  std::vector<int> anchor_;
};

// (edge, t): t is the distance from the edge's u end, 0 <= t <= length.
template <Scalar R>
struct GraphPoint {
  int edge = 0;
  R t{0};
  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

template <Scalar R>
void validate_point(const Graph<R>& g, const GraphPoint<R>& p);

// Vertex id if p lies within tol of an edge end.
template <Scalar R>
std::optional<int> vertex_of(const Graph<R>& g, const GraphPoint<R>& p, const R& tol);

// The representation of vertex v on its anchor edge.
template <Scalar R>
GraphPoint<R> vertex_point(const Graph<R>& g, int v);

// Maps every representation of a vertex to vertex_point; other points unchanged.
template <Scalar R>
GraphPoint<R> canonicalize(const Graph<R>& g, const GraphPoint<R>& p, const R& tol);

template <Scalar R>
R distance_to_vertex(const Graph<R>& g, const GraphPoint<R>& p, int vertex);

template <Scalar R>
R point_distance(const Graph<R>& g, const GraphPoint<R>& p, const GraphPoint<R>& q);

// Points of edge e where d(p, .) switches from increasing to decreasing.
// For p off the interior of e at most `first` is set. For p interior to e,
// `first` lies between u and p and `second` between p and v.
template <Scalar R>
struct SemicircularPoints {
  std::optional<GraphPoint<R>> first;
  std::optional<GraphPoint<R>> second;
};

template <Scalar R>
SemicircularPoints<R> semicircular_points(const Graph<R>& g, const GraphPoint<R>& p, int e,
                                          const R& tol = ScalarTraits<R>::default_tolerance());

// One linear piece of d(p, .) along an edge, valid on [begin, end].
template <Scalar R>
struct LinearPiece {
  R begin;
  R end;
  Line<R> line;
};

// d(p, x) for x on e as consecutive pieces of slope +1 or -1 covering [0, length].
// Piece boundaries are the turning points (semicircular points and p itself).
template <Scalar R>
std::vector<LinearPiece<R>> distance_pieces(const Graph<R>& g, const GraphPoint<R>& p, int e,
                                            const R& tol = ScalarTraits<R>::default_tolerance());

template <Scalar R>
PwlFunction<R> location_distance_function(const Graph<R>& g, const GraphPoint<R>& p, int e,
                                          const R& tol = ScalarTraits<R>::default_tolerance());

}  // namespace ukc

#endif  // UKC_GRAPH_HPP
