#include "ukc/uncertain.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace ukc {

template <Scalar R>
void validate_uncertain_point(const Graph<R>& g, const UncertainPoint<R>& p, const Settings<R>& settings,
                              std::size_t index) {
  const std::string where = "points[" + std::to_string(index) + "]";
  if (p.weight < R(0)) throw ValidationError(where + ".weight: must be non-negative");
  if (p.locations.empty()) throw ValidationError(where + ".locations: needs at least one location");
  R total(0);
  for (std::size_t j = 0; j < p.locations.size(); ++j) {
    const auto& loc = p.locations[j];
    const std::string lw = where + ".locations[" + std::to_string(j) + "]";
    if (loc.probability < R(0)) throw ValidationError(lw + ".probability: must be non-negative");
    try {
      validate_point(g, loc.point);
    } catch (const ValidationError& err) {
      throw ValidationError(lw + ": " + err.what());
    }
    total += loc.probability;
  }
  if (settings.enforce_probability_sum && abs_value(R(total - R(1))) > settings.probability_tolerance) {
    throw ValidationError(where + ".locations: probabilities must sum to 1");
  }
}

template <Scalar R>
EdgeExpectedDistance<R> expected_distance_function(const Graph<R>& g, const UncertainPoint<R>& p, int e,
                                                   const R& tol) {
  const R len = g.edge(e).length;
  const std::size_t m = p.locations.size();

  std::vector<std::vector<LinearPiece<R>>> pieces(m);
  struct Turn {
    R t;
    int location;
  };
  std::vector<Turn> turns;
  for (std::size_t j = 0; j < m; ++j) {
    pieces[j] = distance_pieces(g, p.locations[j].point, e, tol);
    for (std::size_t k = 0; k + 1 < pieces[j].size(); ++k) turns.push_back({pieces[j][k].end, static_cast<int>(j)});
  }
  std::sort(turns.begin(), turns.end(), [](const Turn& a, const Turn& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.location < b.location;
  });

  EdgeExpectedDistance<R> out;
  out.edge = e;
  out.turning_points.push_back(R(0));
  out.turning_locations.emplace_back();
  for (const auto& turn : turns) {
    if (!(tol < turn.t - out.turning_points.back())) {
      out.turning_locations.back().push_back(turn.location);
    } else {
      out.turning_points.push_back(turn.t);
      out.turning_locations.push_back({turn.location});
    }
  }
  if (out.turning_points.size() > 1 && !(tol < len - out.turning_points.back())) {
    out.turning_points.back() = len;
  } else {
    out.turning_points.push_back(len);
    out.turning_locations.emplace_back();
  }

  // Sweep left to right keeping the linear expression of the current interval.
  std::vector<std::size_t> current(m, 0);
  Line<R> expr;
  for (std::size_t j = 0; j < m; ++j) expr += p.locations[j].probability * pieces[j][0].line;
  const std::size_t count = out.turning_points.size();
  for (std::size_t s = 0; s + 1 < count; ++s) {
    for (int j : out.turning_locations[s]) {
      const auto ju = static_cast<std::size_t>(j);
      const R& f = p.locations[ju].probability;
      expr -= f * pieces[ju][current[ju]].line;
      ++current[ju];
      expr += f * pieces[ju][current[ju]].line;
    }
    out.segments.push_back(expr);
  }

  std::vector<Breakpoint<R>> pts;
  pts.reserve(count);
  for (std::size_t s = 0; s + 1 < count; ++s) pts.push_back({out.turning_points[s], out.segments[s].at(out.turning_points[s])});
  pts.push_back({len, out.segments.back().at(len)});
  out.function = PwlFunction<R>(std::move(pts), tol);
  return out;
}

template <Scalar R>
R expected_distance_at(const Graph<R>& g, const UncertainPoint<R>& p, const GraphPoint<R>& q) {
  R sum(0);
  for (const auto& loc : p.locations) sum += loc.probability * point_distance(g, loc.point, q);
  return sum;
}

template <Scalar R>
ObjectiveResult<R> objective(const Graph<R>& g, std::span<const UncertainPoint<R>> points,
                             std::span<const GraphPoint<R>> centers) {
  if (centers.empty()) throw ValidationError("objective: center set must be non-empty");
  ObjectiveResult<R> out;
  out.assignment.reserve(points.size());
  for (const auto& p : points) {
    int best_index = 0;
    R best = p.weight * expected_distance_at(g, p, centers[0]);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      R v = p.weight * expected_distance_at(g, p, centers[c]);
      if (v < best) {
        best = std::move(v);
        best_index = static_cast<int>(c);
      }
    }
    if (out.assignment.empty() || out.value < best) out.value = best;
    out.assignment.push_back(best_index);
  }
  return out;
}

template <Scalar R>
Instance<R>::Instance(Graph<R> graph, std::vector<UncertainPoint<R>> points, Settings<R> settings, Exec exec)
    : graph_(std::move(graph)), points_(std::move(points)), settings_(std::move(settings)) {
  if (settings_.tolerance < R(0)) throw ValidationError("settings.tolerance: must be non-negative");
  for (std::size_t i = 0; i < points_.size(); ++i) validate_uncertain_point(graph_, points_[i], settings_, i);
  const auto n = static_cast<long>(points_.size());
  const auto edges = static_cast<long>(graph_.num_edges());
  table_.resize(static_cast<std::size_t>(n * edges));
  const long total = n * edges;
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::kParallel)
  for (long k = 0; k < total; ++k) {
    const int i = static_cast<int>(k / edges);
    const int e = static_cast<int>(k % edges);
    auto ed = expected_distance_function(graph_, points_[static_cast<std::size_t>(i)], e, settings_.tolerance);
    ed.point = i;
    table_[static_cast<std::size_t>(k)] = std::move(ed);
  }
}

template <Scalar R>
R Instance<R>::weighted_at(int i, const GraphPoint<R>& q) const {
  return point(i).weight * ed(i, q.edge).function.evaluate(q.t);
}

template <Scalar R>
R Instance<R>::max_weight() const {
  R best(0);
  for (const auto& p : points_) best = std::max(best, p.weight);
  return best;
}

#define UKC_INSTANTIATE_UNCERTAIN(R)                                                                             \
  template void validate_uncertain_point<R>(const Graph<R>&, const UncertainPoint<R>&, const Settings<R>&,      \
                                            std::size_t);                                                       \
  template EdgeExpectedDistance<R> expected_distance_function<R>(const Graph<R>&, const UncertainPoint<R>&, int, \
                                                                 const R&);                                     \
  template R expected_distance_at<R>(const Graph<R>&, const UncertainPoint<R>&, const GraphPoint<R>&);          \
  template ObjectiveResult<R> objective<R>(const Graph<R>&, std::span<const UncertainPoint<R>>,                 \
                                           std::span<const GraphPoint<R>>);                                     \
  template class Instance<R>;

UKC_INSTANTIATE_UNCERTAIN(double)
UKC_INSTANTIATE_UNCERTAIN(Rational)

}  // namespace ukc
