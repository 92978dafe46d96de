#include "ukc/one_center.hpp"

#include <algorithm>
#include <numeric>

namespace ukc {

template <Scalar R>
std::vector<EnvelopeEvent<R>> envelope_events(const Instance<R>& inst, int e) {
  const R len = inst.graph().edge(e).length;
  const R& tol = inst.tolerance();
  struct Turn {
    R t;
    int point;
    Line<R> line;
  };
  std::vector<Turn> turns;
  EnvelopeEvent<R> first{R(0), {}};
  for (int i = 0; i < inst.num_points(); ++i) {
    const auto& ed = inst.ed(i, e);
    const R& w = inst.point(i).weight;
    first.updates.emplace_back(i, w * ed.segments.front());
    for (std::size_t s = 1; s + 1 < ed.turning_points.size(); ++s) {
      turns.push_back({ed.turning_points[s], i, w * ed.segments[s]});
    }
  }
  std::stable_sort(turns.begin(), turns.end(), [](const Turn& a, const Turn& b) { return a.t < b.t; });

  std::vector<EnvelopeEvent<R>> events;
  events.push_back(std::move(first));
  for (auto& turn : turns) {
    if (!(tol < len - turn.t)) break;
    if (events.size() > 1 && !(tol < turn.t - events.back().t)) {
      events.back().updates.emplace_back(turn.point, std::move(turn.line));
    } else {
      events.push_back({turn.t, {{turn.point, std::move(turn.line)}}});
    }
  }
  events.push_back({len, {}});
  return events;
}

template <Scalar R>
EnvelopeMinimum<R> lowest_point_of_upper_envelope(std::span<const Line<R>> lines, const R& a, const R& b) {
  if (lines.empty()) throw ValidationError("upper envelope of no lines");
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (lines[x].slope != lines[y].slope) return lines[x].slope < lines[y].slope;
    if (lines[x].intercept != lines[y].intercept) return lines[x].intercept > lines[y].intercept;
    return x < y;
  });
  // Upper hull by increasing slope; the middle line of three is dropped when
  // the outer two meet at or left of where it starts to dominate.
  std::vector<std::size_t> hull;
  for (auto id : order) {
    if (!hull.empty() && lines[hull.back()].slope == lines[id].slope) continue;
    while (hull.size() >= 2) {
      const auto& l1 = lines[hull[hull.size() - 2]];
      const auto& l2 = lines[hull.back()];
      const auto& l3 = lines[id];
      if (intersection_t(l1, l3) <= intersection_t(l1, l2)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(id);
  }

  auto top_at = [&](const R& t) {
    std::size_t arg = hull.front();
    R best = lines[arg].at(t);
    for (auto id : hull) {
      R v = lines[id].at(t);
      if (best < v) {
        best = std::move(v);
        arg = id;
      }
    }
    return EnvelopeMinimum<R>{t, best, arg};
  };

  EnvelopeMinimum<R> best = top_at(a);
  auto consider = [&best](EnvelopeMinimum<R> c) {
    if (c.value < best.value || (c.value == best.value && c.t < best.t)) best = std::move(c);
  };
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const auto& left = lines[hull[h]];
    const auto& right = lines[hull[h + 1]];
    // The envelope minimum sits where the slope changes sign.
    if (!(left.slope <= R(0) && R(0) <= right.slope)) continue;
    R t = intersection_t(left, right);
    if (a < t && t < b) consider({std::move(t), intersection_y(left, right), hull[h + 1]});
  }
  consider(top_at(b));
  return best;
}

template <Scalar R>
EdgeCenter<R> lowest_envelope_point_on_edge(const Instance<R>& inst, int e) {
  EdgeCenter<R> out;
  out.edge = e;
  if (inst.num_points() == 0) return out;
  const auto events = envelope_events(inst, e);
  std::vector<Line<R>> current(static_cast<std::size_t>(inst.num_points()));
  bool have = false;
  for (std::size_t s = 0; s + 1 < events.size(); ++s) {
    for (const auto& [i, line] : events[s].updates) current[static_cast<std::size_t>(i)] = line;
    auto m = lowest_point_of_upper_envelope<R>(current, events[s].t, events[s + 1].t);
    if (!have || m.value < out.value) {
      out.t = std::move(m.t);
      out.value = std::move(m.value);
      out.achieving_point = static_cast<int>(m.line);
      have = true;
    }
  }
  return out;
}

template <Scalar R>
Solution<R> solve_one_center(const Instance<R>& inst, Exec exec) {
  const int edges = inst.graph().num_edges();
  std::vector<EdgeCenter<R>> per_edge(static_cast<std::size_t>(edges));
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::kParallel)
  for (int e = 0; e < edges; ++e) per_edge[static_cast<std::size_t>(e)] = lowest_envelope_point_on_edge(inst, e);

  std::size_t best = 0;
  for (std::size_t e = 1; e < per_edge.size(); ++e) {
    if (per_edge[e].value < per_edge[best].value) best = e;
  }
  Solution<R> sol;
  sol.k = 1;
  sol.lambda = per_edge[best].value;
  sol.centers = {canonicalize(inst.graph(), GraphPoint<R>{per_edge[best].edge, per_edge[best].t}, inst.tolerance())};
  sol.assignment.assign(static_cast<std::size_t>(inst.num_points()), 0);
  sol.diagnostics.method = "one-center";
  for (int e = 0; e < edges; ++e) sol.diagnostics.candidate_count += envelope_events(inst, e).size();
  return sol;
}

#define UKC_INSTANTIATE_ONE_CENTER(R)                                                                           \
  template std::vector<EnvelopeEvent<R>> envelope_events<R>(const Instance<R>&, int);                          \
  template EnvelopeMinimum<R> lowest_point_of_upper_envelope<R>(std::span<const Line<R>>, const R&, const R&); \
  template EdgeCenter<R> lowest_envelope_point_on_edge<R>(const Instance<R>&, int);                            \
  template Solution<R> solve_one_center<R>(const Instance<R>&, Exec);

UKC_INSTANTIATE_ONE_CENTER(double)
UKC_INSTANTIATE_ONE_CENTER(Rational)

}  // namespace ukc
