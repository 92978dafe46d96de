#ifndef UKC_GENERATE_HPP
#define UKC_GENERATE_HPP

#include <cstdint>

#include "ukc/instance_io.hpp"

namespace ukc {

// Random connected instances for tests and benchmarks. Every number is a
// dyadic rational (lengths in steps of 1/4, offsets in 1/16 of the edge,
// probabilities in 1/16, weights in 1/4), so the double and rational
// instantiations see exactly the same input.
struct GeneratorSpec {
  int vertices = 5;
  int edges = 7;  // clamped to [vertices - 1, vertices (vertices - 1) / 2]
  int points = 4;
  int locations = 3;
  int max_length_quarters = 16;  // lengths in {1/4, ..., max/4}
  bool unit_weights = false;
  // Snap offsets to {0, 1/2, 1} of the edge to provoke ties.
  bool coarse_offsets = false;
};

InstanceData<double> generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

template <Scalar R>
Instance<R> make_instance(const InstanceData<double>& data, Exec exec = Exec::kParallel);

}  // namespace ukc

#endif  // UKC_GENERATE_HPP
