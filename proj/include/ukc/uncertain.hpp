#ifndef UKC_UNCERTAIN_HPP
#define UKC_UNCERTAIN_HPP

#include <span>
#include <vector>

#include "ukc/graph.hpp"
#include "ukc/pwl.hpp"

namespace ukc {

template <Scalar R>
struct Location {
  GraphPoint<R> point;
  R probability{0};
};

// A demand with m possible locations. weight >= 0, probabilities >= 0.
template <Scalar R>
struct UncertainPoint {
  R weight{1};
  std::vector<Location<R>> locations;
};

template <Scalar R>
struct Settings {
  // Equality/containment tolerance for geometric decisions (0 in exact mode).
  R tolerance = ScalarTraits<R>::default_tolerance();
  R probability_tolerance = ScalarTraits<R>::from_double(1e-9);
  bool enforce_probability_sum = true;
};

// Throws ValidationError naming points[index].<field>.
template <Scalar R>
void validate_uncertain_point(const Graph<R>& g, const UncertainPoint<R>& p, const Settings<R>& settings,
                              std::size_t index);

// Ed(P_i, .) on one edge together with the turning-point sweep that built it.
template <Scalar R>
struct EdgeExpectedDistance {
  int point = -1;
  int edge = -1;
  PwlFunction<R> function;
  // X_i: ordered turning points, first 0 and last the edge length.
  std::vector<R> turning_points;
  // L_{i,s}: indices of the locations whose distance function turns at X_i[s].
  std::vector<std::vector<int>> turning_locations;
  // Linear expression of Ed on [X_i[s], X_i[s+1]].
  std::vector<Line<R>> segments;
};

template <Scalar R>
EdgeExpectedDistance<R> expected_distance_function(const Graph<R>& g, const UncertainPoint<R>& p, int e,
                                                   const R& tol = ScalarTraits<R>::default_tolerance());

template <Scalar R>
R expected_distance_at(const Graph<R>& g, const UncertainPoint<R>& p, const GraphPoint<R>& q);

template <Scalar R>
struct ObjectiveResult {
  R value{0};
  std::vector<int> assignment;  // center index per uncertain point
};

// max_i min_q w_i Ed(P_i, q); ties go to the lowest center index.
template <Scalar R>
ObjectiveResult<R> objective(const Graph<R>& g, std::span<const UncertainPoint<R>> points,
                             std::span<const GraphPoint<R>> centers);

// Graph, uncertain points and the precomputed Ed table for every (point, edge).
template <Scalar R>
class Instance {
 public:
  Instance(Graph<R> graph, std::vector<UncertainPoint<R>> points, Settings<R> settings = {},
           Exec exec = Exec::kParallel);

  const Graph<R>& graph() const { return graph_; }
  std::span<const UncertainPoint<R>> points() const { return points_; }
  const UncertainPoint<R>& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  int num_points() const { return static_cast<int>(points_.size()); }
  const Settings<R>& settings() const { return settings_; }
  const R& tolerance() const { return settings_.tolerance; }

  const EdgeExpectedDistance<R>& ed(int i, int e) const {
    return table_[static_cast<std::size_t>(i) * static_cast<std::size_t>(graph_.num_edges()) +
                  static_cast<std::size_t>(e)];
  }
  // w_i * Ed(P_i, .) on edge e.
  PwlFunction<R> weighted(int i, int e) const { return scale(ed(i, e).function, point(i).weight); }
  // w_i * Ed(P_i, q), read from the table.
  R weighted_at(int i, const GraphPoint<R>& q) const;
  R max_weight() const;

 private:
  Graph<R> graph_;
  std::vector<UncertainPoint<R>> points_;
  Settings<R> settings_;
  std::vector<EdgeExpectedDistance<R>> table_;
};

template <Scalar R>
ObjectiveResult<R> objective(const Instance<R>& inst, std::span<const GraphPoint<R>> centers) {
  return objective(inst.graph(), inst.points(), centers);
}

}  // namespace ukc

#endif  // UKC_UNCERTAIN_HPP
