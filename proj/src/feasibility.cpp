#include "ukc/feasibility.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <utility>

namespace ukc {

namespace {

// Coverage of the uncertain points as a flat bitset per candidate.
class CoverMasks {
 public:
  CoverMasks(std::size_t rows, std::size_t bits)
      : words_((bits + 63) / 64), bits_(bits), data_(rows * words_, 0) {}

  void set(std::size_t row, std::size_t bit) { data_[row * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64); }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
  std::size_t words() const { return words_; }
  std::vector<std::uint64_t> full() const {
    std::vector<std::uint64_t> f(words_, ~std::uint64_t{0});
    if (bits_ % 64 != 0 && words_ > 0) f.back() = (std::uint64_t{1} << (bits_ % 64)) - 1;
    return f;
  }

 private:
  std::size_t words_;
  std::size_t bits_;
  std::vector<std::uint64_t> data_;
};

// Depth-first search for the lexicographically first k-combination starting
// with `first` whose masks OR to `full`.
class ComboSearch {
 public:
  ComboSearch(const CoverMasks& masks, std::size_t count, const std::vector<std::uint64_t>& full)
      : masks_(masks), count_(count), full_(full), suffix_(masks.words() * (count + 1), 0) {
    const std::size_t w = masks.words();
    for (std::size_t c = count; c-- > 0;) {
      for (std::size_t x = 0; x < w; ++x) suffix_[c * w + x] = suffix_[(c + 1) * w + x] | masks.row(c)[x];
    }
  }

  std::optional<std::vector<std::size_t>> first_with(std::size_t first, std::size_t size) const {
    std::vector<std::size_t> chosen{first};
    std::vector<std::uint64_t> acc(masks_.row(first), masks_.row(first) + masks_.words());
    if (descend(chosen, acc, size)) return chosen;
    return std::nullopt;
  }

 private:
  bool complete(const std::vector<std::uint64_t>& acc) const { return acc == full_; }

  bool reachable(const std::vector<std::uint64_t>& acc, std::size_t from) const {
    const std::size_t w = masks_.words();
    for (std::size_t x = 0; x < w; ++x) {
      if ((acc[x] | suffix_[from * w + x]) != full_[x]) return false;
    }
    return true;
  }

  bool descend(std::vector<std::size_t>& chosen, const std::vector<std::uint64_t>& acc, std::size_t size) const {
    if (chosen.size() == size) return complete(acc);
    const std::size_t remaining = size - chosen.size();
    const std::size_t w = masks_.words();
    for (std::size_t c = chosen.back() + 1; c + remaining <= count_; ++c) {
      if (!reachable(acc, c)) return false;
      std::vector<std::uint64_t> next(acc);
      for (std::size_t x = 0; x < w; ++x) next[x] |= masks_.row(c)[x];
      chosen.push_back(c);
      if (descend(chosen, next, size)) return true;
      chosen.pop_back();
    }
    return false;
  }

  const CoverMasks& masks_;
  std::size_t count_;
  const std::vector<std::uint64_t>& full_;
  std::vector<std::uint64_t> suffix_;
};

template <Scalar R>
R endpoint_level(const Instance<R>&, const R& lambda) {
  return lambda;
}

template <Scalar R>
R cover_level(const Instance<R>& inst, const R& lambda) {
  return lambda + inst.tolerance();
}

// Forbidden segments of every (point, edge) pair at one lambda.
template <Scalar R>
class ForbiddenTable {
 public:
  ForbiddenTable(const Instance<R>& inst, const R& lambda) : edges_(static_cast<std::size_t>(inst.graph().num_edges())) {
    const R level = endpoint_level(inst, lambda);
    table_.resize(static_cast<std::size_t>(inst.num_points()) * edges_);
    for (int i = 0; i < inst.num_points(); ++i) {
      for (int e = 0; e < inst.graph().num_edges(); ++e) {
        table_[static_cast<std::size_t>(i) * edges_ + static_cast<std::size_t>(e)] =
            superlevel_open_set(inst.weighted(i, e), level);
      }
    }
  }
  const std::vector<Interval<R>>& at(int i, int e) const {
    return table_[static_cast<std::size_t>(i) * edges_ + static_cast<std::size_t>(e)];
  }

 private:
  std::size_t edges_;
  std::vector<std::vector<Interval<R>>> table_;
};

// Representative of every endpoint after merging clusters closer than tol.
// Clusters containing a domain boundary map to the boundary.
template <Scalar R>
class EndpointSnap {
 public:
  EndpointSnap(std::vector<R> values, const R& length, const R& tol) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::size_t k = 0;
    while (k < values.size()) {
      std::size_t end = k + 1;
      while (end < values.size() && !(tol < values[end] - values[k])) ++end;
      R rep = values[k];
      if (values[end - 1] == length) rep = length;
      for (std::size_t x = k; x < end; ++x) {
        raw_.push_back(values[x]);
        snapped_.push_back(rep);
      }
      k = end;
    }
  }

  R operator()(const R& v) const {
    const auto it = std::lower_bound(raw_.begin(), raw_.end(), v);
    return snapped_[static_cast<std::size_t>(it - raw_.begin())];
  }

 private:
  std::vector<R> raw_;
  std::vector<R> snapped_;
};

template <Scalar R>
LocalProblem<R> make_local_problem(const Instance<R>& inst, std::span<const int> edges, std::span<const int> points,
                                   const auto& segments_of) {
  LocalProblem<R> local;
  local.edges.assign(edges.begin(), edges.end());
  for (int e : edges) local.lengths.push_back(inst.graph().edge(e).length);
  const std::size_t k = edges.size();

  std::vector<int> kept;
  for (int i : points) {
    bool prune = false;
    for (int e : edges) prune = prune || segments_of(i, e).empty();
    if (!prune) kept.push_back(i);
  }

  std::vector<EndpointSnap<R>> snaps;
  snaps.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<R> values;
    for (int i : kept) {
      for (const auto& iv : segments_of(i, edges[s])) {
        values.push_back(iv.lo);
        values.push_back(iv.hi);
      }
    }
    snaps.emplace_back(std::move(values), local.lengths[s], inst.tolerance());
  }

  for (int i : kept) {
    std::vector<std::vector<Interval<R>>> per_edge(k);
    bool prune = false;
    for (std::size_t s = 0; s < k && !prune; ++s) {
      for (auto iv : segments_of(i, edges[s])) {
        iv.lo = snaps[s](iv.lo);
        iv.hi = snaps[s](iv.hi);
        if (iv.lo < iv.hi) per_edge[s].push_back(std::move(iv));
      }
      prune = per_edge[s].empty();
    }
    if (prune) continue;
    local.active.push_back(i);
    local.segments.push_back(std::move(per_edge));
  }
  return local;
}

// Calls visit(combination) for every k-combination (distinct, ascending) of {0..n-1}.
template <class Visit>
bool for_each_combination(int n, int k, bool repeat, Visit&& visit) {
  if (k == 0) return visit(std::vector<int>{});
  if (n <= 0) return false;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = repeat ? 0 : x;
  if (!repeat && k > n) return false;
  while (true) {
    if (visit(c)) return true;
    int pos = k - 1;
    while (pos >= 0) {
      const int limit = repeat ? n - 1 : n - k + pos;
      if (c[static_cast<std::size_t>(pos)] < limit) break;
      --pos;
    }
    if (pos < 0) return false;
    ++c[static_cast<std::size_t>(pos)];
    for (int x = pos + 1; x < k; ++x) {
      c[static_cast<std::size_t>(x)] = repeat ? c[static_cast<std::size_t>(pos)] : c[static_cast<std::size_t>(x - 1)] + 1;
    }
  }
}

}  // namespace

template <Scalar R>
bool covers(const Instance<R>& inst, int i, const GraphPoint<R>& q, const R& lambda) {
  return !(cover_level(inst, lambda) < inst.weighted_at(i, q));
}

template <Scalar R>
CandidatePointSet<R> candidate_point_set(const Instance<R>& inst, const R& lambda) {
  const auto& g = inst.graph();
  const R& tol = inst.tolerance();
  const R level = endpoint_level(inst, lambda);
  CandidatePointSet<R> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.points.push_back(vertex_point(g, v));
  out.num_vertices = g.num_vertices();

  std::vector<GraphPoint<R>> interior;
  for (int i = 0; i < inst.num_points(); ++i) {
    for (int e = 0; e < g.num_edges(); ++e) {
      for (const auto& iv : sublevel_set(inst.weighted(i, e), level)) {
        for (const R* t : {&iv.lo, &iv.hi}) {
          GraphPoint<R> p{e, *t};
          if (!vertex_of(g, p, tol)) interior.push_back(std::move(p));
        }
      }
    }
  }
  std::sort(interior.begin(), interior.end(), [](const auto& a, const auto& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.t < b.t;
  });
  std::size_t cluster_start = out.points.size();
  for (auto& p : interior) {
    if (out.points.size() > cluster_start) {
      const auto& head = out.points[cluster_start];
      if (head.edge == p.edge && !(tol < p.t - head.t)) continue;
    }
    cluster_start = out.points.size();
    out.points.push_back(std::move(p));
  }
  return out;
}

template <Scalar R>
std::optional<std::vector<GraphPoint<R>>> feasible_by_candidates(const Instance<R>& inst, int k, const R& lambda,
                                                                 Exec exec) {
  if (k < 1) throw ValidationError("k must be at least 1");
  const auto cand = candidate_point_set(inst, lambda);
  const std::size_t count = cand.points.size();
  const auto n = static_cast<std::size_t>(inst.num_points());
  CoverMasks masks(count, n);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (covers(inst, static_cast<int>(i), cand.points[c], lambda)) masks.set(c, i);
    }
  }
  const auto full = masks.full();
  const std::size_t size = std::min(static_cast<std::size_t>(k), count);
  ComboSearch search(masks, count, full);

  auto to_witness = [&](const std::vector<std::size_t>& ids) {
    std::vector<GraphPoint<R>> witness;
    for (auto c : ids) witness.push_back(cand.points[c]);
    while (witness.size() < static_cast<std::size_t>(k)) witness.push_back(witness.back());
    return witness;
  };
  if (count == 0) return std::nullopt;

  const long firsts = static_cast<long>(count - size + 1);
  if (exec == Exec::kSerial) {
    for (long first = 0; first < firsts; ++first) {
      if (auto hit = search.first_with(static_cast<std::size_t>(first), size)) return to_witness(*hit);
    }
    return std::nullopt;
  }
  // Each first element is searched independently; the smallest hit wins, so
  // the witness matches the serial scan.
  std::vector<std::optional<std::vector<std::size_t>>> found(static_cast<std::size_t>(firsts));
  std::atomic<long> best{firsts};
#pragma omp parallel for schedule(dynamic, 1)
  for (long first = 0; first < firsts; ++first) {
    if (first > best.load()) continue;
    auto hit = search.first_with(static_cast<std::size_t>(first), size);
    if (!hit) continue;
    found[static_cast<std::size_t>(first)] = std::move(hit);
    long cur = best.load();
    while (first < cur && !best.compare_exchange_weak(cur, first)) {
    }
  }
  if (best.load() == firsts) return std::nullopt;
  return to_witness(*found[static_cast<std::size_t>(best.load())]);
}

template <Scalar R>
std::vector<Interval<R>> forbidden_segments(const Instance<R>& inst, int i, int e, const R& lambda) {
  return superlevel_open_set(inst.weighted(i, e), endpoint_level(inst, lambda));
}

template <Scalar R>
std::vector<EdgeSegments<R>> LocalProblem<R>::pooled() const {
  std::vector<EdgeSegments<R>> out;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    EdgeSegments<R> es{lengths[s], {}};
    for (const auto& per_point : segments) es.segments.insert(es.segments.end(), per_point[s].begin(), per_point[s].end());
    out.push_back(std::move(es));
  }
  return out;
}

template <Scalar R>
R shrink_delta(std::span<const EdgeSegments<R>> edges) {
  std::optional<R> best_gap;
  for (const auto& es : edges) {
    std::vector<R> ends;
    for (const auto& iv : es.segments) {
      ends.push_back(iv.lo);
      ends.push_back(iv.hi);
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t x = 1; x < ends.size(); ++x) {
      if (ends[x - 1] < ends[x]) {
        R gap = ends[x] - ends[x - 1];
        if (!best_gap || gap < *best_gap) best_gap = std::move(gap);
      }
    }
  }
  if (best_gap) return half(*best_gap);
  if (edges.empty()) throw ValidationError("shrink_delta: no edges");
  R shortest = edges.front().length;
  for (const auto& es : edges) shortest = std::min(shortest, es.length);
  return half(shortest);
}

template <Scalar R>
LocalProblem<R> build_local_problem(const Instance<R>& inst, std::span<const int> edges, const R& lambda,
                                    std::span<const int> points) {
  for (int e : edges) {
    if (e < 0 || e >= inst.graph().num_edges()) throw ValidationError("local test: edge id out of range");
  }
  return make_local_problem<R>(inst, edges, points,
                               [&](int i, int e) { return forbidden_segments(inst, i, e, lambda); });
}

template <Scalar R>
BoxSet<R> build_boxes(const LocalProblem<R>& local) {
  BoxSet<R> out;
  const auto k = static_cast<std::size_t>(local.dim());
  out.universe.lo.assign(k, R(0));
  out.universe.hi = local.lengths;
  if (local.active.empty()) return out;
  const auto pooled = local.pooled();
  out.delta = shrink_delta<R>(pooled);

  for (const auto& per_edge : local.segments) {
    std::vector<std::vector<std::pair<R, R>>> shrunk(k);
    for (std::size_t s = 0; s < k; ++s) {
      for (const auto& iv : per_edge[s]) {
        // Only an end that is itself forbidden (a closed domain boundary) stays put.
        R alpha = iv.lo_closed ? iv.lo : R(iv.lo + out.delta);
        R beta = iv.hi_closed ? iv.hi : R(iv.hi - out.delta);
        // A segment exactly 2 delta long may cross over by rounding; it becomes a point.
        if (beta < alpha) beta = alpha;
        shrunk[s].emplace_back(std::move(alpha), std::move(beta));
      }
    }
    std::vector<KBox<R>> boxes;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      KBox<R> box;
      for (std::size_t s = 0; s < k; ++s) {
        box.lo.push_back(shrunk[s][pick[s]].first);
        box.hi.push_back(shrunk[s][pick[s]].second);
      }
      boxes.push_back(std::move(box));
      std::size_t s = 0;
      while (s < k && ++pick[s] == shrunk[s].size()) pick[s++] = 0;
      if (s == k) break;
    }
    out.per_point.push_back(std::move(boxes));
  }
  return out;
}

template <Scalar R>
BoxSet<R> build_boxes(const Instance<R>& inst, std::span<const int> edges, const R& lambda) {
  std::vector<int> all(static_cast<std::size_t>(inst.num_points()));
  for (int i = 0; i < inst.num_points(); ++i) all[static_cast<std::size_t>(i)] = i;
  return build_boxes(build_local_problem<R>(inst, edges, lambda, all));
}

template <Scalar R>
bool local_feasible(const LocalProblem<R>& local) {
  if (local.active.empty()) return true;
  const auto boxes = build_boxes(local);
  std::vector<KBox<R>> all;
  for (const auto& d : boxes.per_point) all.insert(all.end(), d.begin(), d.end());
  return R(0) < uncovered_measure<R>(all, boxes.universe);
}

template <Scalar R>
bool local_feasible_on_edges(const Instance<R>& inst, std::span<const int> edges, const R& lambda,
                             std::span<const int> points) {
  return local_feasible(build_local_problem(inst, edges, lambda, points));
}

template <Scalar R>
bool local_feasible_on_edges(const Instance<R>& inst, std::span<const int> edges, const R& lambda) {
  std::vector<int> all(static_cast<std::size_t>(inst.num_points()));
  for (int i = 0; i < inst.num_points(); ++i) all[static_cast<std::size_t>(i)] = i;
  return local_feasible_on_edges<R>(inst, edges, lambda, all);
}

template <Scalar R>
bool feasible_by_boxes(const Instance<R>& inst, int k, const R& lambda, Exec exec) {
  if (k < 1) throw ValidationError("k must be at least 1");
  const auto& g = inst.graph();
  const int n = inst.num_points();
  if (n == 0) return true;
  const ForbiddenTable<R> forbidden(inst, lambda);
  std::vector<std::vector<bool>> vertex_covers(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int i = 0; i < n; ++i) vertex_covers[static_cast<std::size_t>(v)].push_back(covers(inst, i, vertex_point(g, v), lambda));
  }

  struct Unit {
    std::vector<int> vertices;
    std::vector<int> edges;
  };
  std::vector<Unit> units;
  for (int on_vertices = 0; on_vertices <= std::min(k, g.num_vertices()); ++on_vertices) {
    for_each_combination(g.num_vertices(), on_vertices, false, [&](const std::vector<int>& vs) {
      for_each_combination(g.num_edges(), k - on_vertices, true, [&](const std::vector<int>& es) {
        units.push_back({vs, es});
        return false;
      });
      return false;
    });
  }

  auto run_unit = [&](const Unit& unit) {
    std::vector<int> open;
    for (int i = 0; i < n; ++i) {
      bool hit = false;
      for (int v : unit.vertices) hit = hit || vertex_covers[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
      if (!hit) open.push_back(i);
    }
    if (open.empty()) return true;
    if (unit.edges.empty()) return false;
    const auto local = make_local_problem<R>(inst, unit.edges, open,
                                             [&](int i, int e) -> const std::vector<Interval<R>>& { return forbidden.at(i, e); });
    return local_feasible(local);
  };

  std::atomic<bool> feasible{false};
  const long total = static_cast<long>(units.size());
  if (exec == Exec::kSerial) {
    for (const auto& u : units) {
      if (run_unit(u)) return true;
    }
    return false;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (long x = 0; x < total; ++x) {
    if (feasible.load(std::memory_order_relaxed)) continue;
    try {
      if (run_unit(units[static_cast<std::size_t>(x)])) feasible.store(true);
    } catch (...) {
#pragma omp critical(ukc_box_error)
      if (!error) error = std::current_exception();
      feasible.store(true);
    }
  }
  if (error) std::rethrow_exception(error);
  return feasible.load();
}

template <Scalar R>
bool is_feasible(const Instance<R>& inst, int k, const R& lambda, Engine engine, Exec exec) {
  if (engine == Engine::kCandidates) return feasible_by_candidates(inst, k, lambda, exec).has_value();
  return feasible_by_boxes(inst, k, lambda, exec);
}

#define UKC_INSTANTIATE_FEASIBILITY(R)                                                                              \
  template bool covers<R>(const Instance<R>&, int, const GraphPoint<R>&, const R&);                                \
  template CandidatePointSet<R> candidate_point_set<R>(const Instance<R>&, const R&);                              \
  template std::optional<std::vector<GraphPoint<R>>> feasible_by_candidates<R>(const Instance<R>&, int, const R&,  \
                                                                               Exec);                               \
  template std::vector<Interval<R>> forbidden_segments<R>(const Instance<R>&, int, int, const R&);                  \
  template struct LocalProblem<R>;                                                                                  \
  template R shrink_delta<R>(std::span<const EdgeSegments<R>>);                                                     \
  template LocalProblem<R> build_local_problem<R>(const Instance<R>&, std::span<const int>, const R&,               \
                                                  std::span<const int>);                                            \
  template BoxSet<R> build_boxes<R>(const LocalProblem<R>&);                                                        \
  template BoxSet<R> build_boxes<R>(const Instance<R>&, std::span<const int>, const R&);                            \
  template bool local_feasible<R>(const LocalProblem<R>&);                                                          \
  template bool local_feasible_on_edges<R>(const Instance<R>&, std::span<const int>, const R&,                      \
                                           std::span<const int>);                                                   \
  template bool local_feasible_on_edges<R>(const Instance<R>&, std::span<const int>, const R&);                     \
  template bool feasible_by_boxes<R>(const Instance<R>&, int, const R&, Exec);                                      \
  template bool is_feasible<R>(const Instance<R>&, int, const R&, Engine, Exec);

UKC_INSTANTIATE_FEASIBILITY(double)
UKC_INSTANTIATE_FEASIBILITY(Rational)

}  // namespace ukc
