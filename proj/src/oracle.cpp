#include "ukc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace ukc::oracle {

namespace {

constexpr std::size_t kMaxGridPoints = 5'000'000;

struct GridSample {
  std::vector<GraphPoint<double>> points;
  // values[g * n + i] = w_i * Ed(P_i, points[g]) by direct summation.
  std::vector<double> values;
};

GridSample sample_grid(const Instance<double>& inst, double step) {
  if (!(step > 0)) throw ValidationError("grid step must be positive");
  const auto& g = inst.graph();
  GridSample out;
  for (int v = 0; v < g.num_vertices(); ++v) out.points.push_back(vertex_point(g, v));
  for (int e = 0; e < g.num_edges(); ++e) {
    const double len = g.edge(e).length;
    if (len / step > static_cast<double>(kMaxGridPoints)) {
      throw SizeGuardError("grid too fine: use a coarser step");
    }
    for (double t : grid_offsets(len, step)) {
      if (t > 0 && t < len) out.points.push_back({e, t});
    }
    if (out.points.size() > kMaxGridPoints) throw SizeGuardError("grid too fine: use a coarser step");
  }
  const auto n = static_cast<std::size_t>(inst.num_points());
  out.values.resize(out.points.size() * n);
  const long total = static_cast<long>(out.points.size());
#pragma omp parallel for schedule(static)
  for (long x = 0; x < total; ++x) {
    const auto gx = static_cast<std::size_t>(x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = inst.point(static_cast<int>(i));
      out.values[gx * n + i] = p.weight * expected_distance_at(g, p, out.points[gx]);
    }
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1;
  for (std::size_t x = 1; x <= k; ++x) r = r * static_cast<double>(n - k + x) / static_cast<double>(x);
  return r;
}

// Grid points grouped by which uncertain points they cover under lambda;
// classes covered by another class are dropped.
struct CoverClasses {
  std::vector<std::uint64_t> masks;
  std::vector<std::size_t> witness;  // one grid point per mask
};

CoverClasses cover_classes(const GridSample& grid, std::size_t n, double lambda) {
  std::vector<std::pair<std::uint64_t, std::size_t>> seen;
  for (std::size_t g = 0; g < grid.points.size(); ++g) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (grid.values[g * n + i] <= lambda) mask |= std::uint64_t{1} << i;
    }
    seen.emplace_back(mask, g);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             seen.end());
  std::stable_sort(seen.begin(), seen.end(),
                   [](const auto& a, const auto& b) { return std::popcount(a.first) > std::popcount(b.first); });
  CoverClasses out;
  for (const auto& [mask, g] : seen) {
    bool dominated = false;
    for (auto kept : out.masks) dominated = dominated || (mask & ~kept) == 0;
    if (dominated) continue;
    out.masks.push_back(mask);
    out.witness.push_back(g);
  }
  return out;
}

bool search(const std::vector<std::uint64_t>& masks, const std::vector<std::uint64_t>& suffix, std::size_t from,
            std::size_t left, std::uint64_t acc, std::uint64_t full, std::vector<std::size_t>& chosen) {
  if (acc == full) return true;
  if (left == 0) return false;
  for (std::size_t c = from; c < masks.size(); ++c) {
    if ((acc | suffix[c]) != full) return false;
    chosen.push_back(c);
    if (search(masks, suffix, c + 1, left - 1, acc | masks[c], full, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

std::optional<std::vector<std::size_t>> covering_tuple(const GridSample& grid, std::size_t n, int k, double lambda,
                                                       const GridSpec& spec) {
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const auto classes = cover_classes(grid, n, lambda);
  const std::size_t size = std::min(static_cast<std::size_t>(k), classes.masks.size());
  if (binomial(classes.masks.size(), size) > static_cast<double>(spec.max_combinations)) {
    throw SizeGuardError("oracle enumeration exceeds the size guard: use a coarser step");
  }
  std::vector<std::uint64_t> suffix(classes.masks.size() + 1, 0);
  for (std::size_t c = classes.masks.size(); c-- > 0;) suffix[c] = suffix[c + 1] | classes.masks[c];
  std::vector<std::size_t> chosen;
  if (!search(classes.masks, suffix, 0, size, 0, full, chosen)) return std::nullopt;
  std::vector<std::size_t> points;
  for (auto c : chosen) points.push_back(classes.witness[c]);
  return points;
}

void check_inputs(const Instance<double>& inst, int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (inst.num_points() > 64) throw SizeGuardError("oracle supports at most 64 uncertain points");
}

}  // namespace

std::vector<double> grid_offsets(double length, double step) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor(length / step));
  for (std::size_t x = 0; x <= count; ++x) {
    const double t = static_cast<double>(x) * step;
    if (t < length) out.push_back(t);
  }
  out.push_back(length);
  return out;
}

GridResult grid_k_center(const Instance<double>& inst, int k, const GridSpec& spec) {
  check_inputs(inst, k);
  const auto grid = sample_grid(inst, spec.step);
  const auto n = static_cast<std::size_t>(inst.num_points());
  GridResult out;
  out.grid_points = grid.points.size();
  if (n == 0) {
    out.centers.assign(static_cast<std::size_t>(k), grid.points.front());
    return out;
  }
  std::vector<double> levels = grid.values;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (covering_tuple(grid, n, k, levels[mid], spec)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.lambda = levels[lo];
  const auto tuple = covering_tuple(grid, n, k, out.lambda, spec);
  for (auto g : *tuple) out.centers.push_back(grid.points[g]);
  while (out.centers.size() < static_cast<std::size_t>(k)) out.centers.push_back(out.centers.back());
  return out;
}

bool feasibility_oracle(const Instance<double>& inst, int k, double lambda, const GridSpec& spec) {
  check_inputs(inst, k);
  const auto grid = sample_grid(inst, spec.step);
  const auto n = static_cast<std::size_t>(inst.num_points());
  if (n == 0) return true;
  return covering_tuple(grid, n, k, lambda, spec).has_value();
}

double inclusion_exclusion_volume(std::span<const KBox<double>> boxes) {
  if (boxes.size() > 20) throw SizeGuardError("inclusion-exclusion supports at most 20 boxes");
  if (boxes.empty()) return 0;
  const std::size_t dim = boxes.front().lo.size();
  double total = 0;
  // Depth-first over subsets, carrying the running intersection; an empty
  // intersection stays empty for every superset.
  auto recurse = [&](auto&& self, std::size_t next, const KBox<double>& inter, int size) -> void {
    for (std::size_t b = next; b < boxes.size(); ++b) {
      KBox<double> cut = inter;
      bool empty = false;
      for (std::size_t s = 0; s < dim; ++s) {
        cut.lo[s] = std::max(cut.lo[s], boxes[b].lo[s]);
        cut.hi[s] = std::min(cut.hi[s], boxes[b].hi[s]);
        empty = empty || !(cut.lo[s] < cut.hi[s]);
      }
      if (empty) continue;
      double v = 1;
      for (std::size_t s = 0; s < dim; ++s) v *= cut.hi[s] - cut.lo[s];
      total += (size % 2 == 0) ? v : -v;
      self(self, b + 1, cut, size + 1);
    }
  };
  KBox<double> everything;
  everything.lo.assign(dim, -HUGE_VAL);
  everything.hi.assign(dim, HUGE_VAL);
  recurse(recurse, 0, everything, 0);
  return total;
}

bool open_box_oracle_feasible(const LocalProblem<double>& local) {
  if (local.active.empty()) return true;
  const auto pooled = local.pooled();
  const double delta = shrink_delta<double>(pooled);
  const auto k = static_cast<std::size_t>(local.dim());
  std::vector<std::vector<double>> axis(k);
  for (std::size_t s = 0; s < k; ++s) {
    const double len = local.lengths[s];
    std::vector<double> coords{0, len / 2, len};
    for (const auto& iv : pooled[s].segments) {
      for (double c : {iv.lo, iv.hi}) {
        coords.insert(coords.end(), {c - delta / 2, c, c + delta / 2});
      }
    }
    for (double c : coords) {
      if (c >= 0 && c <= len) axis[s].push_back(c);
    }
    std::sort(axis[s].begin(), axis[s].end());
    axis[s].erase(std::unique(axis[s].begin(), axis[s].end()), axis[s].end());
  }
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    bool covered = false;
    for (std::size_t a = 0; a < local.active.size() && !covered; ++a) {
      bool inside = true;
      for (std::size_t s = 0; s < k && inside; ++s) {
        const double q = axis[s][pick[s]];
        bool in_some = false;
        for (const auto& iv : local.segments[a][s]) in_some = in_some || iv.contains(q);
        inside = in_some;
      }
      covered = inside;
    }
    if (!covered) return true;
    std::size_t s = 0;
    while (s < k && ++pick[s] == axis[s].size()) pick[s++] = 0;
    if (s == k) return false;
  }
}

}  // namespace ukc::oracle
