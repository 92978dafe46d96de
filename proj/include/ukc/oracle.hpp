#ifndef UKC_ORACLE_HPP
#define UKC_ORACLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ukc/feasibility.hpp"
#include "ukc/klee.hpp"
#include "ukc/uncertain.hpp"

// Brute-force references for the solver. They work in double precision on
// their own code paths (direct distance sums, sampling, enumeration) and are
// only meant for small instances.
namespace ukc::oracle {

struct GridSpec {
  double step = 1e-3;
  // Upper bound on the number of k-combinations of coverage classes examined.
  std::size_t max_combinations = 50'000'000;
};

// Offsets {0, step, 2 step, ..., length}; the last gap may be shorter.
std::vector<double> grid_offsets(double length, double step);

struct GridResult {
  double lambda = 0;
  std::vector<GraphPoint<double>> centers;
  std::size_t grid_points = 0;
};

// Minimum of the objective over all k-tuples of grid points. Since every
// Ed is Lipschitz along edges, lambda* <= result <= lambda* + max_w * step / 2.
// Throws SizeGuardError when the enumeration is too large.
GridResult grid_k_center(const Instance<double>& inst, int k, const GridSpec& spec = {});

// Is there a k-subset of grid points covering every uncertain point under
// lambda? A "feasible" verdict is always right; "infeasible" is right only
// when lambda is below lambda* by more than max_w * step / 2.
bool feasibility_oracle(const Instance<double>& inst, int k, double lambda, const GridSpec& spec = {});

// Union volume by inclusion-exclusion over all non-empty subsets (M <= 20).
double inclusion_exclusion_volume(std::span<const KBox<double>> boxes);

// Does the union of the boxes B_i (products of forbidden segments, open except
// at closed domain boundaries) leave some point of the closed box Gamma'
// uncovered? Checked on the grid of the edge ends, all segment endpoints and
// endpoints +- delta / 2 in every dimension.
bool open_box_oracle_feasible(const LocalProblem<double>& local);

}  // namespace ukc::oracle

#endif  // UKC_ORACLE_HPP
