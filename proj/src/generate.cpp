#include "ukc/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ukc {

InstanceData<double> generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.vertices < 2) throw ValidationError("generator: need at least two vertices");
  if (spec.points < 0 || spec.locations < 1) throw ValidationError("generator: bad point or location count");
  if (spec.max_length_quarters < 1) throw ValidationError("generator: bad maximum length");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  InstanceData<double> out;
  out.num_vertices = spec.vertices;
  const int max_edges = spec.vertices * (spec.vertices - 1) / 2;
  const int target = std::clamp(spec.edges, spec.vertices - 1, max_edges);

  std::vector<int> order(static_cast<std::size_t>(spec.vertices));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<int, int>> used;
  auto add = [&](int a, int b) {
    if (a == b || !used.insert(std::minmax(a, b)).second) return false;
    out.edges.push_back({a, b, uniform(1, spec.max_length_quarters) / 4.0});
    return true;
  };
  for (std::size_t x = 1; x < order.size(); ++x) add(order[x], order[static_cast<std::size_t>(uniform(0, static_cast<int>(x) - 1))]);
  while (static_cast<int>(out.edges.size()) < target) add(uniform(0, spec.vertices - 1), uniform(0, spec.vertices - 1));

  const int edge_count = static_cast<int>(out.edges.size());
  for (int i = 0; i < spec.points; ++i) {
    UncertainPoint<double> p;
    p.weight = spec.unit_weights ? 1.0 : uniform(1, 8) / 4.0;
    // Split 16 sixteenths among the locations; a location may get zero.
    std::vector<int> cuts{0, 16};
    for (int j = 1; j < spec.locations; ++j) cuts.push_back(uniform(0, 16));
    std::sort(cuts.begin(), cuts.end());
    for (int j = 0; j < spec.locations; ++j) {
      Location<double> loc;
      loc.point.edge = uniform(0, edge_count - 1);
      const double len = out.edges[static_cast<std::size_t>(loc.point.edge)].length;
      loc.point.t = spec.coarse_offsets ? len * uniform(0, 2) / 2.0 : len * uniform(0, 16) / 16.0;
      loc.probability = (cuts[static_cast<std::size_t>(j) + 1] - cuts[static_cast<std::size_t>(j)]) / 16.0;
      p.locations.push_back(loc);
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

template <Scalar R>
Instance<R> make_instance(const InstanceData<double>& data, Exec exec) {
  auto conv = [](double v) { return ScalarTraits<R>::from_double(v); };
  std::vector<Edge<R>> edges;
  for (const auto& e : data.edges) edges.push_back({e.u, e.v, conv(e.length)});
  std::vector<UncertainPoint<R>> points;
  for (const auto& p : data.points) {
    UncertainPoint<R> q;
    q.weight = conv(p.weight);
    for (const auto& l : p.locations) q.locations.push_back({{l.point.edge, conv(l.point.t)}, conv(l.probability)});
    points.push_back(std::move(q));
  }
  return Instance<R>(Graph<R>(data.num_vertices, std::move(edges)), std::move(points), Settings<R>{}, exec);
}

template Instance<double> make_instance<double>(const InstanceData<double>&, Exec);
template Instance<Rational> make_instance<Rational>(const InstanceData<double>&, Exec);

}  // namespace ukc
