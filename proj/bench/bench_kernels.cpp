// Serial reference path vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "ukc/generate.hpp"
#include "ukc/one_center.hpp"
#include "ukc/optimizer.hpp"

namespace {

using namespace ukc;

InstanceData<double> data_for(int edges, int points, int locations) {
  GeneratorSpec spec;
  spec.vertices = std::max(4, edges / 2);
  spec.edges = edges;
  spec.points = points;
  spec.locations = locations;
  return generate_instance(spec, 12345);
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_ExpectedDistanceTable(benchmark::State& state) {
  const auto data = data_for(30, 20, 10);
  for (auto _ : state) benchmark::DoNotOptimize(make_instance<double>(data, exec_of(state)));
}

void BM_CandidateValues(benchmark::State& state) {
  const auto inst = make_instance<double>(data_for(20, 10, 4));
  for (auto _ : state) benchmark::DoNotOptimize(candidate_values(inst, exec_of(state)));
}

void BM_OneCenter(benchmark::State& state) {
  const auto inst = make_instance<double>(data_for(30, 20, 10));
  for (auto _ : state) benchmark::DoNotOptimize(solve_one_center(inst, exec_of(state)));
}

void BM_CandidateEngine(benchmark::State& state) {
  const auto inst = make_instance<double>(data_for(10, 6, 3));
  const auto values = candidate_values(inst);
  const double lambda = values[values.size() / 3];
  for (auto _ : state) benchmark::DoNotOptimize(feasible_by_candidates(inst, 2, lambda, exec_of(state)));
}

void BM_BoxEngine(benchmark::State& state) {
  const auto inst = make_instance<double>(data_for(10, 6, 3));
  const auto values = candidate_values(inst);
  const double lambda = values[values.size() / 3];
  for (auto _ : state) benchmark::DoNotOptimize(feasible_by_boxes(inst, 2, lambda, exec_of(state)));
}

void BM_SolveTwoCenter(benchmark::State& state) {
  const auto inst = make_instance<double>(data_for(8, 5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(solve_k_center(inst, 2, Engine::kCandidates, exec_of(state)));
}

}  // namespace

// Argument 0 runs the serial reference path, 1 the OpenMP kernel.
BENCHMARK(BM_ExpectedDistanceTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CandidateValues)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneCenter)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CandidateEngine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxEngine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveTwoCenter)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
