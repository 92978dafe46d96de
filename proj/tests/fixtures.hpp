#ifndef UKC_TESTS_FIXTURES_HPP
#define UKC_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ukc/generate.hpp"
#include "ukc/uncertain.hpp"

namespace fixtures {

using namespace ukc;

template <Scalar R = double>
Graph<R> unit_triangle() {
  return Graph<R>(3, {{0, 1, R(1)}, {0, 2, R(1)}, {1, 2, R(1)}});
}

// Three unit-weight deterministic points at vertices a, b, c of the unit triangle.
template <Scalar R = double>
std::vector<UncertainPoint<R>> vertex_points() {
  return {{R(1), {{{0, R(0)}, R(1)}}}, {R(1), {{{0, R(1)}, R(1)}}}, {R(1), {{{1, R(1)}, R(1)}}}};
}

template <Scalar R = double>
Instance<R> triangle_instance(Exec exec = Exec::kParallel) {
  return Instance<R>(unit_triangle<R>(), vertex_points<R>(), Settings<R>{}, exec);
}

inline InstanceData<double> random_data(std::uint64_t seed, int max_vertices = 6, int max_edges = 9,
                                        int max_points = 4, int max_locations = 3) {
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL + 12345;
  auto next = [&s](int lo, int hi) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return lo + static_cast<int>(s % static_cast<std::uint64_t>(hi - lo + 1));
  };
  GeneratorSpec spec;
  spec.vertices = next(2, max_vertices);
  spec.edges = next(spec.vertices - 1, max_edges);
  spec.points = next(1, max_points);
  spec.locations = next(1, max_locations);
  spec.max_length_quarters = next(2, 12);
  spec.coarse_offsets = seed % 5 == 0;
  return generate_instance(spec, seed);
}

// Same graph shape with lengths, offsets and weights scaled by non-dyadic
// factors, so ties are only equal up to rounding.
inline InstanceData<double> irregular(InstanceData<double> data, std::uint64_t seed) {
  const double stretch = 1.0 / 3.0 + 0.1 * static_cast<double>(seed % 7);
  const double heavier = 0.7 + 0.013 * static_cast<double>(seed % 11);
  for (auto& e : data.edges) e.length *= stretch;
  for (auto& p : data.points) {
    p.weight *= heavier;
    for (auto& l : p.locations) {
      l.point.t = std::min(l.point.t * stretch, data.edges[static_cast<std::size_t>(l.point.edge)].length);
    }
  }
  return data;
}

// Reference distances computed without the library: Floyd-Warshall on the
// vertices and explicit route enumeration for points on edges.
class BruteDistances {
 public:
  explicit BruteDistances(const InstanceData<double>& data) : data_(data), n_(data.num_vertices) {
    const double inf = std::numeric_limits<double>::infinity();
    d_.assign(static_cast<std::size_t>(n_ * n_), inf);
    for (int v = 0; v < n_; ++v) at(v, v) = 0;
    for (const auto& e : data.edges) {
      at(e.u, e.v) = std::min(at(e.u, e.v), e.length);
      at(e.v, e.u) = at(e.u, e.v);
    }
    for (int m = 0; m < n_; ++m) {
      for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) at(a, b) = std::min(at(a, b), at(a, m) + at(m, b));
      }
    }
  }

  double vertex(int a, int b) const { return d_[static_cast<std::size_t>(a * n_ + b)]; }

  double point(const GraphPoint<double>& p, const GraphPoint<double>& q) const {
    const auto& ep = data_.edges[static_cast<std::size_t>(p.edge)];
    const auto& eq = data_.edges[static_cast<std::size_t>(q.edge)];
    const double pu = p.t;
    const double pv = ep.length - p.t;
    const double qu = q.t;
    const double qv = eq.length - q.t;
    double best = std::min({pu + vertex(ep.u, eq.u) + qu, pu + vertex(ep.u, eq.v) + qv,
                            pv + vertex(ep.v, eq.u) + qu, pv + vertex(ep.v, eq.v) + qv});
    if (p.edge == q.edge) best = std::min(best, std::abs(p.t - q.t));
    return best;
  }

  double expected(const UncertainPoint<double>& p, const GraphPoint<double>& q) const {
    double sum = 0;
    for (const auto& l : p.locations) sum += l.probability * point(l.point, q);
    return sum;
  }

 private:
  double& at(int a, int b) { return d_[static_cast<std::size_t>(a * n_ + b)]; }
  const InstanceData<double>& data_;
  int n_;
  std::vector<double> d_;
};

}  // namespace fixtures

#endif  // UKC_TESTS_FIXTURES_HPP
