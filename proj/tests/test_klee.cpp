#include <doctest.h>

#include <random>

#include "ukc/klee.hpp"
#include "ukc/oracle.hpp"

using namespace ukc;

namespace {

std::vector<KBox<double>> random_boxes(std::mt19937_64& rng, int count, int dim) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<KBox<double>> boxes;
  for (int b = 0; b < count; ++b) {
    KBox<double> box;
    for (int s = 0; s < dim; ++s) {
      double x = u(rng);
      double y = u(rng);
      if (y < x) std::swap(x, y);
      box.lo.push_back(x);
      box.hi.push_back(y);
    }
    boxes.push_back(box);
  }
  return boxes;
}

}  // namespace

TEST_CASE("rectangle unions") {
  const std::vector<KBox<double>> two{{{0, 0}, {1, 1}}, {{0.5, 0}, {1.5, 1}}};
  CHECK(klee_measure<double>(two, 2) == 1.5);
  const std::vector<KBox<double>> one{{{0, 1, 2}, {2, 4, 3}}};
  CHECK(klee_measure<double>(one, 3) == 6);
  CHECK(klee_measure<double>({}, 2) == 0);
  const std::vector<KBox<double>> bad{{{0, 0}, {1, 1}}, {{0}, {1}}};
  CHECK_THROWS_AS(klee_measure<double>(bad, 2), ValidationError);
}

TEST_CASE("klee measure equals inclusion-exclusion on random boxes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + trial % 4;
    const int count = 1 + trial % 12;
    const auto boxes = random_boxes(rng, count, dim);
    CHECK(std::abs(klee_measure<double>(boxes, dim) - oracle::inclusion_exclusion_volume(boxes)) <= 1e-9);
  }
}

TEST_CASE("uncovered measure complements the union inside the universe") {
  std::mt19937_64 rng(12);
  const KBox<double> universe{{0.1, 0.1}, {0.9, 0.8}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto boxes = random_boxes(rng, 1 + trial % 8, 2);
    std::vector<KBox<double>> clipped;
    for (auto b : boxes) {
      for (int s = 0; s < 2; ++s) {
        b.lo[s] = std::clamp(b.lo[s], universe.lo[s], universe.hi[s]);
        b.hi[s] = std::clamp(b.hi[s], universe.lo[s], universe.hi[s]);
      }
      clipped.push_back(b);
    }
    const double expect = box_volume(universe) - oracle::inclusion_exclusion_volume(clipped);
    CHECK(uncovered_measure<double>(boxes, universe) == doctest::Approx(expect).epsilon(1e-9));
  }
  const std::vector<KBox<double>> whole{universe};
  CHECK(uncovered_measure<double>(whole, universe) == 0);
}

TEST_CASE("rational klee measure is exact") {
  const std::vector<KBox<Rational>> boxes{{{Rational(0), Rational(0)}, {Rational(1, 3), Rational(1)}},
                                          {{Rational(1, 6), Rational(1, 2)}, {Rational(1, 2), Rational(3, 2)}}};
  // 1/3 + 1/3 * 1 - 1/6 * 1/2
  CHECK(klee_measure<Rational>(boxes, 2) == Rational(7, 12));
}

TEST_CASE("inclusion-exclusion size guard") {
  std::vector<KBox<double>> many(21, KBox<double>{{0}, {1}});
  CHECK_THROWS_AS(oracle::inclusion_exclusion_volume(many), SizeGuardError);
}
