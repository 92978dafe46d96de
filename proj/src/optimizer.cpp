#include "ukc/optimizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ukc {

namespace {

template <Scalar R>
bool line_less(const Line<R>& a, const Line<R>& b) {
  if (a.slope != b.slope) return a.slope < b.slope;
  return a.intercept < b.intercept;
}

template <Scalar R>
std::vector<Line<R>> edge_lines(const Instance<R>& inst, int e) {
  std::vector<Line<R>> lines;
  for (int i = 0; i < inst.num_points(); ++i) {
    const R& w = inst.point(i).weight;
    for (const auto& seg : inst.ed(i, e).segments) lines.push_back(w * seg);
  }
  std::sort(lines.begin(), lines.end(), line_less<R>);
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

template <Scalar R>
std::vector<R> edge_candidates(const Instance<R>& inst, int e) {
  const R len = inst.graph().edge(e).length;
  std::vector<R> out;
  for (int i = 0; i < inst.num_points(); ++i) {
    const auto f = inst.weighted(i, e);
    for (const auto& bp : f.breakpoints()) out.push_back(bp.y);
  }
  const auto lines = edge_lines(inst, e);
  for (std::size_t a = 0; a < lines.size(); ++a) {
    out.push_back(lines[a].intercept);
    out.push_back(lines[a].at(len));
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      if (lines[a].slope != lines[b].slope) out.push_back(intersection_y(lines[a], lines[b]));
    }
  }
  return out;
}

// Values within tol of a cluster's smallest member are one value; the largest
// member represents the cluster, so no breakpoint height of the cluster lies
// above it and tangent sublevel sets are not lost to rounding.
template <Scalar R>
void sort_dedup(std::vector<R>& values, const R& tol) {
  std::sort(values.begin(), values.end());
  std::vector<R> kept;
  kept.reserve(values.size());
  std::size_t head = 0;
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (x > 0 && !(tol < values[x] - values[head])) {
      kept.back() = std::move(values[x]);
      continue;
    }
    head = x;
    kept.push_back(values[x]);
  }
  values = std::move(kept);
}

// Index of the candidate nearest to `value`, if it lies within tolerance.
template <Scalar R>
std::optional<std::size_t> find_candidate(const std::vector<R>& values, const R& value, const R& tol) {
  const auto it = std::lower_bound(values.begin(), values.end(), value);
  std::optional<std::size_t> best;
  auto consider = [&](std::size_t idx) {
    if (tol < abs_value(R(values[idx] - value))) return;
    if (!best || abs_value(R(values[idx] - value)) < abs_value(R(values[*best] - value))) best = idx;
  };
  const auto pos = static_cast<std::size_t>(it - values.begin());
  if (pos < values.size()) consider(pos);
  if (pos > 0) consider(pos - 1);
  return best;
}

}  // namespace

template <Scalar R>
CandidateLineSet<R> candidate_lines(const Instance<R>& inst) {
  CandidateLineSet<R> out;
  for (int e = 0; e < inst.graph().num_edges(); ++e) out.per_edge.push_back(edge_lines(inst, e));
  return out;
}

template <Scalar R>
std::vector<R> candidate_values(const Instance<R>& inst, Exec exec) {
  const int edges = inst.graph().num_edges();
  std::vector<std::vector<R>> per_edge(static_cast<std::size_t>(edges));
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::kParallel)
  for (int e = 0; e < edges; ++e) per_edge[static_cast<std::size_t>(e)] = edge_candidates(inst, e);
  std::vector<R> all;
  for (auto& v : per_edge) {
    for (auto& x : v) {
      if (!(x < R(0))) all.push_back(std::move(x));
    }
  }
  sort_dedup(all, inst.tolerance());
  return all;
}

template <Scalar R>
Solution<R> solve_k_center(const Instance<R>& inst, int k, Engine engine, Exec exec) {
  if (k < 1) throw ValidationError("k must be at least 1");
  const auto values = candidate_values(inst, exec);
  Solution<R> sol;
  sol.k = k;
  sol.diagnostics.method = engine == Engine::kCandidates ? "candidates" : "boxes";
  sol.diagnostics.candidate_count = values.size();
  auto feasible = [&](const R& lambda) {
    ++sol.diagnostics.feasibility_calls;
    return is_feasible(inst, k, lambda, engine, exec);
  };
  if (values.empty() || !feasible(values.back())) {
    throw std::logic_error("solve_k_center: largest candidate value is infeasible");
  }
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  sol.lambda = values[lo];
  ++sol.diagnostics.feasibility_calls;
  auto witness = feasible_by_candidates(inst, k, sol.lambda, exec);
  if (!witness) throw std::logic_error("solve_k_center: no witness at the optimal value");
  sol.centers = std::move(*witness);
  sol.assignment = objective(inst, std::span<const GraphPoint<R>>(sol.centers)).assignment;
  return sol;
}

template <Scalar R>
VerificationReport verify_solution(const Instance<R>& inst, const Solution<R>& solution, Exec exec) {
  VerificationReport report;
  const R& tol = inst.tolerance();
  if (static_cast<int>(solution.centers.size()) != solution.k) {
    report.violations.push_back("center count differs from k");
    return report;
  }
  const auto obj = objective(inst, std::span<const GraphPoint<R>>(solution.centers));
  if (tol < abs_value(R(obj.value - solution.lambda))) {
    report.violations.push_back("objective mismatch: centers give " + std::to_string(to_double(obj.value)) +
                                ", reported " + std::to_string(to_double(solution.lambda)));
  }
  if (obj.assignment != solution.assignment) report.violations.push_back("assignment mismatch");
  const auto values = candidate_values(inst, exec);
  const auto idx = find_candidate(values, solution.lambda, tol);
  if (!idx) report.violations.push_back("lambda is not a candidate value");
  if (!feasible_by_candidates(inst, solution.k, solution.lambda, exec)) {
    report.violations.push_back("lambda is infeasible");
  }
  if (idx && *idx > 0 && feasible_by_candidates(inst, solution.k, values[*idx - 1], exec)) {
    report.violations.push_back("preceding candidate value is feasible: lambda is not minimal");
  }
  return report;
}

#define UKC_INSTANTIATE_OPTIMIZER(R)                                                           \
  template CandidateLineSet<R> candidate_lines<R>(const Instance<R>&);                         \
  template std::vector<R> candidate_values<R>(const Instance<R>&, Exec);                       \
  template Solution<R> solve_k_center<R>(const Instance<R>&, int, Engine, Exec);               \
  template VerificationReport verify_solution<R>(const Instance<R>&, const Solution<R>&, Exec);

UKC_INSTANTIATE_OPTIMIZER(double)
UKC_INSTANTIATE_OPTIMIZER(Rational)

}  // namespace ukc
