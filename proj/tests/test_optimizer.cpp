#include <doctest.h>

#include "fixtures.hpp"
#include "ukc/one_center.hpp"
#include "ukc/optimizer.hpp"

using namespace ukc;

namespace {

bool contains(const std::vector<double>& values, double x) {
  return std::any_of(values.begin(), values.end(), [x](double v) { return std::abs(v - x) < 1e-12; });
}

}  // namespace

TEST_CASE("candidate values on the triangle") {
  const auto inst = fixtures::triangle_instance();
  const auto values = candidate_values(inst);
  CHECK(contains(values, 0.5));
  CHECK(contains(values, 1.0));
  CHECK(std::is_sorted(values.begin(), values.end()));
  CHECK(values.front() >= 0);
}

TEST_CASE("constant expected distance is a candidate") {
  // Locations at both ends of a single edge with equal mass: Ed = 1/2 * length everywhere.
  const Graph<double> g(2, {{0, 1, 2}});
  const Instance<double> inst(g, {{1.0, {{{0, 0.0}, 0.5}, {{0, 2.0}, 0.5}}}});
  CHECK(contains(candidate_values(inst), 1.0));
}

TEST_CASE("triangle optimum for one and two centers") {
  const auto inst = fixtures::triangle_instance();
  for (auto engine : {Engine::kCandidates, Engine::kBoxes}) {
    auto sol = solve_k_center(inst, 1, engine);
    CHECK(sol.lambda == doctest::Approx(1).epsilon(1e-9));
    sol = solve_k_center(inst, 2, engine);
    CHECK(sol.lambda == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sol.centers.size() == 2);
    CHECK(verify_solution(inst, sol).consistent());
  }
  CHECK_THROWS_AS(solve_k_center(inst, 0), ValidationError);
}

TEST_CASE("k equal to n deterministic points gives zero") {
  const auto inst = fixtures::triangle_instance();
  const auto sol = solve_k_center(inst, 3);
  CHECK(sol.lambda == 0);
  const auto exact = solve_k_center(fixtures::triangle_instance<Rational>(), 3);
  CHECK(exact.lambda == 0);
}

TEST_CASE("verification flags tampered solutions") {
  const auto inst = fixtures::triangle_instance();
  auto sol = solve_k_center(inst, 2);
  CHECK(verify_solution(inst, sol).consistent());

  auto low = sol;
  low.lambda -= 2 * inst.tolerance() + 0.01;
  const auto r1 = verify_solution(inst, low);
  CHECK_FALSE(r1.consistent());
  CHECK(std::find(r1.violations.begin(), r1.violations.end(), "lambda is infeasible") != r1.violations.end());

  auto moved = sol;
  moved.centers[1].t = moved.centers[1].t > 0.3 ? 0.1 : 0.9;
  const auto r2 = verify_solution(inst, moved);
  CHECK_FALSE(r2.consistent());
  CHECK(r2.violations.front().rfind("objective mismatch", 0) == 0);
}

TEST_CASE("solutions are consistent on random instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = make_instance<double>(fixtures::random_data(seed, 5, 7, 4, 3));
    for (int k = 1; k <= 2; ++k) {
      const auto sol = solve_k_center(inst, k);
      const auto report = verify_solution(inst, sol);
      CHECK_MESSAGE(report.consistent(), "seed " << seed << " k " << k);
      CHECK(objective(inst, std::span<const GraphPoint<double>>(sol.centers)).value ==
            doctest::Approx(sol.lambda).epsilon(1e-9));
    }
  }
}

TEST_CASE("solutions are consistent on non-dyadic instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = make_instance<double>(fixtures::irregular(fixtures::random_data(seed, 5, 7, 4, 3), seed));
    for (int k = 1; k <= 2; ++k) CHECK_MESSAGE(verify_solution(inst, solve_k_center(inst, k)).consistent(), "seed " << seed);
  }
}

TEST_CASE("optimum is non-increasing in k") {
  for (std::uint64_t seed = 30; seed < 45; ++seed) {
    const auto inst = make_instance<double>(fixtures::random_data(seed, 5, 6, 4, 2));
    double prev = solve_k_center(inst, 1).lambda;
    for (int k = 2; k <= 3; ++k) {
      const double cur = solve_k_center(inst, k).lambda;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("serial and parallel solves agree exactly") {
  for (std::uint64_t seed = 60; seed < 75; ++seed) {
    const auto inst = make_instance<double>(fixtures::random_data(seed, 5, 7, 4, 3));
    for (int k = 1; k <= 2; ++k) {
      const auto a = solve_k_center(inst, k, Engine::kCandidates, Exec::kSerial);
      const auto b = solve_k_center(inst, k, Engine::kCandidates, Exec::kParallel);
      CHECK(a.lambda == b.lambda);
      CHECK(a.centers == b.centers);
      CHECK(a.diagnostics.feasibility_calls == b.diagnostics.feasibility_calls);
    }
  }
}

TEST_CASE("rational and double optima agree on dyadic instances") {
  for (std::uint64_t seed = 90; seed < 100; ++seed) {
    const auto data = fixtures::random_data(seed, 4, 5, 3, 2);
    for (int k = 1; k <= 2; ++k) {
      const auto d = solve_k_center(make_instance<double>(data), k);
      const auto q = solve_k_center(make_instance<Rational>(data), k);
      CHECK(d.lambda == doctest::Approx(to_double(q.lambda)).epsilon(1e-9));
      const auto inst = make_instance<Rational>(data);
      CHECK(verify_solution(inst, q).consistent());
    }
  }
}
