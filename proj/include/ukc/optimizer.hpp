#ifndef UKC_OPTIMIZER_HPP
#define UKC_OPTIMIZER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ukc/feasibility.hpp"

namespace ukc {

// Per edge, the distinct lines carrying the pieces of every w_i Ed(P_i, .).
template <Scalar R>
struct CandidateLineSet {
  std::vector<std::vector<Line<R>>> per_edge;
};

template <Scalar R>
CandidateLineSet<R> candidate_lines(const Instance<R>& inst);

// Every value lambda* can take: breakpoint heights of the weighted functions,
// heights of pairwise intersections of the lines on each edge, and the values
// of those lines at both edge ends. Negative values are dropped; the rest is
// sorted and deduplicated within the instance tolerance, keeping the largest
// value of each cluster.
template <Scalar R>
std::vector<R> candidate_values(const Instance<R>& inst, Exec exec = Exec::kParallel);

struct Diagnostics {
  std::string method;
  std::size_t candidate_count = 0;
  std::size_t feasibility_calls = 0;
};

template <Scalar R>
struct Solution {
  int k = 1;
  R lambda{0};
  std::vector<GraphPoint<R>> centers;
  std::vector<int> assignment;
  Diagnostics diagnostics;
};

// Binary search over candidate_values with the chosen feasibility engine;
// centers come from the candidate engine at the optimum.
template <Scalar R>
Solution<R> solve_k_center(const Instance<R>& inst, int k, Engine engine = Engine::kCandidates,
                           Exec exec = Exec::kParallel);

struct VerificationReport {
  std::vector<std::string> violations;
  bool consistent() const { return violations.empty(); }
};

// Recomputes the objective from scratch, checks that lambda is a candidate
// value, feasible, and that the preceding candidate is not.
template <Scalar R>
VerificationReport verify_solution(const Instance<R>& inst, const Solution<R>& solution,
                                   Exec exec = Exec::kParallel);

}  // namespace ukc

#endif  // UKC_OPTIMIZER_HPP
