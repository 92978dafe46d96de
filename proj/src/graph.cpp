#include "ukc/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace ukc {

template <Scalar R>
std::vector<R> build_distance_matrix(int num_vertices, std::span<const Edge<R>> edges) {
  const auto n = static_cast<std::size_t>(num_vertices);
  std::vector<std::vector<std::pair<int, R>>> adj(n);
  for (const auto& e : edges) {
    if (!(R(0) < e.length)) throw ValidationError("edge length must be positive");
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.length);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.length);
  }
  std::vector<R> dist(n * n);
  using Item = std::pair<R, int>;
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<std::optional<R>> best(n);
    std::vector<bool> done(n, false);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    best[src] = R(0);
    heap.emplace(R(0), static_cast<int>(src));
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      const auto xi = static_cast<std::size_t>(x);
      if (done[xi]) continue;
      done[xi] = true;
      for (const auto& [y, len] : adj[xi]) {
        const auto yi = static_cast<std::size_t>(y);
        R cand = d + len;
        if (!done[yi] && (!best[yi] || cand < *best[yi])) {
          best[yi] = cand;
          heap.emplace(std::move(cand), y);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (!best[t]) throw DisconnectedGraphError();
      dist[src * n + t] = *best[t];
    }
  }
  // Symmetrize against rounding so that dist(a, b) == dist(b, a) bitwise.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      R m = std::min(dist[a * n + b], dist[b * n + a]);
      dist[a * n + b] = m;
      dist[b * n + a] = m;
    }
  }
  return dist;
}

template <Scalar R>
Graph<R>::Graph(int num_vertices, std::vector<Edge<R>> edges) : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 1) throw ValidationError("graph needs at least one vertex");
  if (edges_.empty()) throw ValidationError("graph needs at least one edge");
  std::set<std::pair<int, int>> seen;
  anchor_.assign(static_cast<std::size_t>(num_vertices_), -1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    const std::string where = "edges[" + std::to_string(id) + "]";
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw ValidationError(where + ": vertex id out of range");
    }
    if (e.u == e.v) throw ValidationError(where + ": loops are not allowed");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw ValidationError(where + ": duplicate edge");
    if (!(R(0) < e.length)) throw ValidationError(where + ": length must be positive");
    for (int x : {e.u, e.v}) {
      auto& a = anchor_[static_cast<std::size_t>(x)];
      if (a < 0) a = static_cast<int>(id);
    }
  }
  dist_ = build_distance_matrix<R>(num_vertices_, edges_);
}

template <Scalar R>
void validate_point(const Graph<R>& g, const GraphPoint<R>& p) {
  if (p.edge < 0 || p.edge >= g.num_edges()) throw ValidationError("point: edge id out of range");
  if (p.t < R(0) || g.edge(p.edge).length < p.t) throw ValidationError("point: offset outside [0, edge length]");
}

template <Scalar R>
std::optional<int> vertex_of(const Graph<R>& g, const GraphPoint<R>& p, const R& tol) {
  const auto& e = g.edge(p.edge);
  if (!(tol < p.t)) return e.u;
  if (!(p.t < e.length - tol)) return e.v;
  return std::nullopt;
}

template <Scalar R>
GraphPoint<R> vertex_point(const Graph<R>& g, int v) {
  const int id = g.anchor_edge(v);
  const auto& e = g.edge(id);
  return {id, e.u == v ? R(0) : e.length};
}

template <Scalar R>
GraphPoint<R> canonicalize(const Graph<R>& g, const GraphPoint<R>& p, const R& tol) {
  if (auto v = vertex_of(g, p, tol)) return vertex_point(g, *v);
  return p;
}

template <Scalar R>
R distance_to_vertex(const Graph<R>& g, const GraphPoint<R>& p, int vertex) {
  const auto& e = g.edge(p.edge);
  R via_u = p.t + g.dist(e.u, vertex);
  R via_v = (e.length - p.t) + g.dist(e.v, vertex);
  return std::min(via_u, via_v);
}

template <Scalar R>
R point_distance(const Graph<R>& g, const GraphPoint<R>& p, const GraphPoint<R>& q) {
  validate_point(g, p);
  validate_point(g, q);
  const auto& eq = g.edge(q.edge);
  R best = std::min(R(distance_to_vertex(g, p, eq.u) + q.t), R(distance_to_vertex(g, p, eq.v) + (eq.length - q.t)));
  if (p.edge == q.edge) best = std::min(best, abs_value(R(p.t - q.t)));
  return best;
}

namespace {

template <Scalar R>
bool interior_to(const Graph<R>& g, const GraphPoint<R>& p, int e, const R& tol) {
  return p.edge == e && !vertex_of(g, p, tol);
}

}  // namespace

template <Scalar R>
SemicircularPoints<R> semicircular_points(const Graph<R>& g, const GraphPoint<R>& p, int e, const R& tol) {
  validate_point(g, p);
  const auto& edge = g.edge(e);
  const R& len = edge.length;
  const R du = distance_to_vertex(g, p, edge.u);
  const R dv = distance_to_vertex(g, p, edge.v);
  SemicircularPoints<R> out;
  if (!interior_to(g, p, e, tol)) {
    if (du + len > dv + tol && dv + len > du + tol) out.first = GraphPoint<R>{e, half(R(dv + len - du))};
    return out;
  }
  if (du < p.t - tol) out.first = GraphPoint<R>{e, half(R(p.t - du))};
  if (dv < len - p.t - tol) out.second = GraphPoint<R>{e, half(R(p.t + dv + len))};
  return out;
}

template <Scalar R>
std::vector<LinearPiece<R>> distance_pieces(const Graph<R>& g, const GraphPoint<R>& p, int e, const R& tol) {
  validate_point(g, p);
  const auto& edge = g.edge(e);
  const R& len = edge.length;
  const R du = distance_to_vertex(g, p, edge.u);
  const R dv = distance_to_vertex(g, p, edge.v);
  const Line<R> from_u{R(1), du};
  const Line<R> from_v{R(-1), R(dv + len)};
  std::vector<LinearPiece<R>> pieces;
  const auto sc = semicircular_points(g, p, e, tol);
  if (!interior_to(g, p, e, tol)) {
    if (sc.first) {
      pieces.push_back({R(0), sc.first->t, from_u});
      pieces.push_back({sc.first->t, len, from_v});
    } else if (du + len > dv + tol) {
      // d(p, v) + length == d(p, u): the route through v is always shorter.
      pieces.push_back({R(0), len, from_v});
    } else {
      pieces.push_back({R(0), len, from_u});
    }
    return pieces;
  }
  const Line<R> toward_p{R(-1), p.t};
  const Line<R> away_from_p{R(1), R(-p.t)};
  R cursor(0);
  if (sc.first) {
    pieces.push_back({R(0), sc.first->t, from_u});
    cursor = sc.first->t;
  }
  pieces.push_back({cursor, p.t, toward_p});
  if (sc.second) {
    pieces.push_back({p.t, sc.second->t, away_from_p});
    pieces.push_back({sc.second->t, len, from_v});
  } else {
    pieces.push_back({p.t, len, away_from_p});
  }
  return pieces;
}

template <Scalar R>
PwlFunction<R> location_distance_function(const Graph<R>& g, const GraphPoint<R>& p, int e, const R& tol) {
  const auto pieces = distance_pieces(g, p, e, tol);
  std::vector<Breakpoint<R>> pts;
  pts.reserve(pieces.size() + 1);
  for (const auto& pc : pieces) pts.push_back({pc.begin, pc.line.at(pc.begin)});
  pts.push_back({pieces.back().end, pieces.back().line.at(pieces.back().end)});
  return PwlFunction<R>(std::move(pts), tol);
}

#define UKC_INSTANTIATE_GRAPH(R)                                                                                      \
  template std::vector<R> build_distance_matrix<R>(int, std::span<const Edge<R>>);                                    \
  template class Graph<R>;                                                                                            \
  template void validate_point<R>(const Graph<R>&, const GraphPoint<R>&);                                             \
  template std::optional<int> vertex_of<R>(const Graph<R>&, const GraphPoint<R>&, const R&);                          \
  template GraphPoint<R> vertex_point<R>(const Graph<R>&, int);                                                       \
  template GraphPoint<R> canonicalize<R>(const Graph<R>&, const GraphPoint<R>&, const R&);                            \
  template R distance_to_vertex<R>(const Graph<R>&, const GraphPoint<R>&, int);                                       \
  template R point_distance<R>(const Graph<R>&, const GraphPoint<R>&, const GraphPoint<R>&);                          \
  template SemicircularPoints<R> semicircular_points<R>(const Graph<R>&, const GraphPoint<R>&, int, const R&);        \
  template std::vector<LinearPiece<R>> distance_pieces<R>(const Graph<R>&, const GraphPoint<R>&, int, const R&);      \
  template PwlFunction<R> location_distance_function<R>(const Graph<R>&, const GraphPoint<R>&, int, const R&);

UKC_INSTANTIATE_GRAPH(double)
UKC_INSTANTIATE_GRAPH(Rational)

}  // namespace ukc
