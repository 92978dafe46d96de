#include <doctest.h>

#include "fixtures.hpp"

using namespace ukc;

namespace {

UncertainPoint<double> ab_point() { return {1.0, {{{0, 0.0}, 0.5}, {{0, 1.0}, 0.5}}}; }

}  // namespace

TEST_CASE("expected distance on the triangle") {
  const auto tri = fixtures::unit_triangle();
  const auto ed = expected_distance_function(tri, ab_point(), 2);
  const auto& bps = ed.function.breakpoints();
  REQUIRE(bps.size() == 3);
  CHECK(bps[0] == Breakpoint<double>{0, 0.5});
  CHECK(bps[1].t == doctest::Approx(0.5));
  CHECK(bps[1].y == doctest::Approx(1));
  CHECK(bps[2] == Breakpoint<double>{1, 1});
  CHECK(expected_distance_at(tri, ab_point(), GraphPoint<double>{1, 1.0}) == doctest::Approx(1));
}

TEST_CASE("single location at an edge end") {
  const auto tri = fixtures::unit_triangle();
  const UncertainPoint<double> p{1.0, {{{0, 0.0}, 1.0}}};
  const auto ed = expected_distance_function(tri, p, 0);
  CHECK(ed.function.piece_count() == 1);
  CHECK(ed.function.piece(0) == Line<double>{1, 0});
  CHECK(expected_distance_at(tri, p, GraphPoint<double>{0, 0.0}) == 0);
}

TEST_CASE("validation names the offending field") {
  const auto tri = fixtures::unit_triangle();
  Settings<double> settings;
  auto message = [&](const UncertainPoint<double>& p) {
    try {
      validate_uncertain_point(tri, p, settings, 3);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({1.0, {{{0, 0.0}, -0.5}, {{0, 1.0}, 1.5}}}) == "points[3].locations[0].probability: must be non-negative");
  CHECK(message({-1.0, {{{0, 0.0}, 1.0}}}) == "points[3].weight: must be non-negative");
  CHECK(message({1.0, {{{0, 0.0}, 0.3}}}) == "points[3].locations: probabilities must sum to 1");
  CHECK(message({1.0, {{{9, 0.0}, 1.0}}}).rfind("points[3].locations[0]", 0) == 0);
  settings.enforce_probability_sum = false;
  CHECK(message({1.0, {{{0, 0.0}, 0.3}}}).empty());
}

TEST_CASE("objective") {
  const auto tri = fixtures::unit_triangle();
  const auto pts = fixtures::vertex_points();
  const std::vector<GraphPoint<double>> a{{0, 0.0}};
  auto r = objective<double>(tri, pts, a);
  CHECK(r.value == 1);
  const std::vector<GraphPoint<double>> a_mid{{0, 0.0}, {2, 0.5}};
  r = objective<double>(tri, pts, a_mid);
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.assignment == std::vector<int>{0, 1, 1});
  CHECK_THROWS_AS(objective<double>(tri, pts, {}), ValidationError);

  // A zero-weight point contributes nothing.
  const std::vector<UncertainPoint<double>> zero{{0.0, {{{0, 0.0}, 0.5}, {{2, 0.5}, 0.5}}}};
  CHECK(objective<double>(tri, zero, a).value == 0);
}

TEST_CASE("sweep matches the pointwise sum on random instances") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto data = fixtures::random_data(seed);
    const fixtures::BruteDistances brute(data);
    const auto inst = make_instance<double>(data);
    const std::size_t m = data.points.front().locations.size();
    for (int i = 0; i < inst.num_points(); ++i) {
      for (int e = 0; e < inst.graph().num_edges(); ++e) {
        const auto& ed = inst.ed(i, e);
        CHECK(ed.function.piece_count() <= 3 * m + 2);
        CHECK(ed.turning_points.front() == 0);
        CHECK(ed.turning_points.back() == inst.graph().edge(e).length);
        CHECK(ed.segments.size() + 1 == ed.turning_points.size());
        const double len = inst.graph().edge(e).length;
        for (int s = 0; s <= 100; ++s) {
          const double t = len * s / 100;
          const double want = brute.expected(data.points[static_cast<std::size_t>(i)], {e, t});
          CHECK(std::abs(ed.function.evaluate(t) - want) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("serial and parallel tables agree") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const auto data = fixtures::random_data(seed);
    const auto serial = make_instance<double>(data, Exec::kSerial);
    const auto parallel = make_instance<double>(data, Exec::kParallel);
    for (int i = 0; i < serial.num_points(); ++i) {
      for (int e = 0; e < serial.graph().num_edges(); ++e) {
        CHECK(serial.ed(i, e).function.breakpoints() == parallel.ed(i, e).function.breakpoints());
      }
    }
  }
}

TEST_CASE("rational sweep equals the double sweep on dyadic input") {
  for (std::uint64_t seed = 400; seed < 415; ++seed) {
    const auto data = fixtures::random_data(seed);
    const auto d = make_instance<double>(data);
    const auto q = make_instance<Rational>(data);
    for (int i = 0; i < d.num_points(); ++i) {
      for (int e = 0; e < d.graph().num_edges(); ++e) {
        const double len = d.graph().edge(e).length;
        for (int s = 0; s <= 16; ++s) {
          const double t = len * s / 16;
          CHECK(d.ed(i, e).function.evaluate(t) ==
                doctest::Approx(to_double(q.ed(i, e).function.evaluate(Rational(t)))).epsilon(1e-12));
        }
      }
    }
  }
}
