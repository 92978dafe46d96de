// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "ukc/instance_io.hpp"
#include "ukc/one_center.hpp"
#include "ukc/optimizer.hpp"
#include "ukc/oracle.hpp"

using namespace ukc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (pass) detail << what;
    pass = false;
  }
};

// Odd seeds use dyadic data, even seeds the same shape with non-dyadic scaling.
InstanceData<double> mixed_data(std::uint64_t seed, int v, int e, int n, int m) {
  auto data = fixtures::random_data(seed, v, e, n, m);
  return seed % 2 == 0 ? fixtures::irregular(std::move(data), seed) : data;
}

double max_weighted_value(const Instance<double>& inst) {
  double m = 0;
  for (int i = 0; i < inst.num_points(); ++i) {
    for (int e = 0; e < inst.graph().num_edges(); ++e) m = std::max(m, inst.weighted(i, e).max_value());
  }
  return m;
}

// Level sets worth probing: every candidate value, the midpoints between
// neighbours, and a few values outside the range.
std::vector<double> probe_levels(const Instance<double>& inst, std::size_t limit) {
  const auto values = candidate_values(inst);
  std::vector<double> out{-0.5, 0.0};
  const std::size_t stride = std::max<std::size_t>(1, values.size() / limit);
  for (std::size_t c = 0; c < values.size(); c += stride) {
    out.push_back(values[c]);
    if (c + 1 < values.size()) out.push_back((values[c] + values[c + 1]) / 2);
  }
  out.push_back(max_weighted_value(inst) + 1);
  return out;
}

Outcome pwl_correctness() {
  Outcome o;
  const auto start = Clock::now();
  int instances = 0;
  std::size_t samples = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; instances < 200; ++seed) {
    const auto data = fixtures::random_data(seed, 8, 12, 5, 4);
    const fixtures::BruteDistances brute(data);
    const auto inst = make_instance<double>(data);
    ++instances;
    for (int i = 0; i < inst.num_points(); ++i) {
      const std::size_t m = data.points[static_cast<std::size_t>(i)].locations.size();
      for (int e = 0; e < inst.graph().num_edges(); ++e) {
        const auto& f = inst.ed(i, e).function;
        if (f.piece_count() > 3 * m + 2) o.fail("piece count above 3m+2 at seed " + std::to_string(seed));
        const double len = inst.graph().edge(e).length;
        for (int s = 0; s < 200; ++s) {
          const double t = len * s / 199;
          const double err = std::abs(f.evaluate(t) - brute.expected(data.points[static_cast<std::size_t>(i)], {e, t}));
          worst = std::max(worst, err);
          ++samples;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (worst > 1e-12) o.fail("max error above 1e-12");
  if (elapsed >= 10) o.fail("runtime not under 10 s");
  o.detail << (o.pass ? "" : "; ") << instances << " instances, " << samples << " samples, max error " << worst
           << ", " << elapsed << " s";
  return o;
}

Outcome klee_measure_check() {
  Outcome o;
  const std::vector<KBox<double>> two{{{0, 0}, {1, 1}}, {{0.5, 0}, {1.5, 1}}};
  if (klee_measure<double>(two, 2) != 1.5) o.fail("overlap rectangle case");
  const std::vector<KBox<double>> single{{{0.5, 1}, {2, 3.5}}};
  if (klee_measure<double>(single, 2) != 1.5 * 2.5) o.fail("single box case");

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  int trials = 0;
  for (int dim = 1; dim <= 4; ++dim) {
    for (int count = 1; count <= 12; ++count) {
      for (int rep = 0; rep < 10; ++rep, ++trials) {
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
        worst = std::max(worst, std::abs(klee_measure<double>(boxes, dim) - oracle::inclusion_exclusion_volume(boxes)));
      }
    }
  }
  if (worst > 1e-9) o.fail("difference above 1e-9");
  o.detail << (o.pass ? "" : "; ") << trials << " random unions, max difference " << worst << ", rectangle cases exact";
  return o;
}

Outcome engine_agreement() {
  Outcome o;
  int small_k = 0;
  int k3 = 0;
  for (std::uint64_t seed = 1; small_k < 200 || k3 < 50; ++seed) {
    const bool want_k3 = k3 < 50 && seed % 2 == 0;
    const auto data = want_k3 ? mixed_data(seed / 2, 5, 6, 4, 2) : mixed_data(seed, 6, 8, 4, 3);
    const auto inst = make_instance<double>(data);
    for (double lambda : probe_levels(inst, 6)) {
      for (int k : want_k3 ? std::vector<int>{3} : std::vector<int>{1, 2}) {
        const bool a = feasible_by_candidates(inst, k, lambda).has_value();
        const bool b = feasible_by_boxes(inst, k, lambda);
        if (a != b) {
          o.fail("disagreement at seed " + std::to_string(seed) + ", k " + std::to_string(k) + ", lambda " +
                 std::to_string(lambda));
        }
        (k == 3 ? k3 : small_k) += 1;
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << small_k << " triples with k <= 2, " << k3 << " with k = 3";
  return o;
}

Outcome monotone_feasibility() {
  Outcome o;
  int instances = 0;
  for (std::uint64_t seed = 500; seed < 560; ++seed, ++instances) {
    const auto inst = make_instance<double>(mixed_data(seed, 6, 8, 4, 3));
    const double top = max_weighted_value(inst);
    for (int k = 1; k <= 2; ++k) {
      bool seen_a = false;
      bool seen_b = false;
      for (int step = 0; step < 20; ++step) {
        const double lambda = top * step / 19;
        const bool a = feasible_by_candidates(inst, k, lambda).has_value();
        const bool b = feasible_by_boxes(inst, k, lambda);
        if ((seen_a && !a) || (seen_b && !b)) o.fail("verdict flipped back at seed " + std::to_string(seed));
        seen_a = seen_a || a;
        seen_b = seen_b || b;
      }
      if (!seen_a || !seen_b) o.fail("top of the ladder infeasible at seed " + std::to_string(seed));
    }
  }
  o.detail << (o.pass ? "" : "; ") << instances << " instances x k in {1, 2} x 20-step ladders, both engines";
  return o;
}

Outcome optimality_sandwich() {
  Outcome o;
  oracle::GridSpec spec;
  spec.step = 1e-3;
  int small = 0;
  int large = 0;
  double worst_gap = 0;
  auto check = [&](const Instance<double>& inst, int k, std::uint64_t seed) {
    const double solver = solve_k_center(inst, k).lambda;
    const double grid = oracle::grid_k_center(inst, k, spec).lambda;
    const double bound = inst.max_weight() * spec.step / 2;
    // Rounding slack of the geometric tolerance on both sides.
    if (grid < solver - 1e-9 || grid > solver + bound + 1e-9) {
      o.fail("sandwich violated at seed " + std::to_string(seed) + ", k " + std::to_string(k));
    }
    worst_gap = std::max(worst_gap, (grid - solver) / std::max(bound, 1e-300));
  };
  for (std::uint64_t seed = 700; small < 50; ++seed, ++small) {
    const auto inst = make_instance<double>(mixed_data(seed, 5, 7, 4, 3));
    for (int k = 1; k <= 2; ++k) check(inst, k, seed);
  }
  for (std::uint64_t seed = 800; large < 10; ++seed, ++large) {
    const auto inst = make_instance<double>(mixed_data(seed, 4, 5, 4, 2));
    check(inst, 3, seed);
  }
  o.detail << (o.pass ? "" : "; ") << small << " instances with k in {1, 2}, " << large
           << " with k = 3; largest gap " << worst_gap << " of the Lipschitz bound";
  return o;
}

Outcome closed_form_fixtures() {
  Outcome o;
  const auto inst = fixtures::triangle_instance();
  for (auto engine : {Engine::kCandidates, Engine::kBoxes}) {
    if (std::abs(solve_k_center(inst, 1, engine).lambda - 1) > 1e-9) o.fail("k = 1 value");
    if (std::abs(solve_k_center(inst, 2, engine).lambda - 0.5) > 1e-9) o.fail("k = 2 value");
    if (solve_k_center(inst, 3, engine).lambda != 0) o.fail("k = n value not exactly 0");
  }
  if (std::abs(solve_one_center(inst).lambda - 1) > 1e-9) o.fail("one-center value");
  const auto exact = fixtures::triangle_instance<Rational>();
  if (solve_k_center(exact, 1).lambda != 1 || solve_k_center(exact, 2).lambda != Rational(1, 2) ||
      solve_k_center(exact, 3).lambda != 0) {
    o.fail("rational values");
  }
  o.detail << (o.pass ? "" : "; ") << "triangle: 1 (k = 1), 0.5 (k = 2), 0 (k = n), both engines and exact mode";
  return o;
}

Outcome one_center_consistency() {
  Outcome o;
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed, ++compared) {
    const auto inst = make_instance<double>(mixed_data(seed, 8, 12, 5, 4));
    const double a = solve_one_center(inst).lambda;
    const double b = solve_k_center(inst, 1).lambda;
    if (std::abs(a - b) > inst.tolerance()) o.fail("mismatch at seed " + std::to_string(seed));
  }
  int exact = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed, ++exact) {
    const auto inst = make_instance<Rational>(fixtures::random_data(seed, 5, 7, 4, 3));
    if (solve_one_center(inst).lambda != solve_k_center(inst, 1).lambda) {
      o.fail("exact mismatch at seed " + std::to_string(seed));
    }
  }
  GeneratorSpec big;
  big.vertices = 16;
  big.edges = 30;
  big.points = 20;
  big.locations = 10;
  const auto inst = make_instance<double>(generate_instance(big, 99));
  const auto start = Clock::now();
  const auto sol = solve_one_center(inst);
  const double elapsed = seconds_since(start);
  if (elapsed >= 5) o.fail("large instance took " + std::to_string(elapsed) + " s");
  o.detail << (o.pass ? "" : "; ") << compared << " instances equal within the geometric tolerance, " << exact
           << " exact-mode instances identical; |E| = 30, n = 20, m = 10 in " << elapsed << " s (lambda "
           << sol.lambda << ")";
  return o;
}

Outcome local_test_equivalence() {
  Outcome o;
  std::mt19937_64 rng(77);
  int tests = 0;
  int feasible = 0;
  for (std::uint64_t seed = 900; tests < 300; ++seed) {
    const auto inst = make_instance<double>(mixed_data(seed, 5, 7, 4, 3));
    const int edges = inst.graph().num_edges();
    std::vector<int> all(static_cast<std::size_t>(inst.num_points()));
    for (int i = 0; i < inst.num_points(); ++i) all[static_cast<std::size_t>(i)] = i;
    for (double lambda : probe_levels(inst, 4)) {
      const int k = 1 + static_cast<int>(rng() % 2);
      std::vector<int> chosen;
      for (int s = 0; s < k; ++s) chosen.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(edges)));
      std::sort(chosen.begin(), chosen.end());
      const auto local = build_local_problem<double>(inst, chosen, lambda, all);
      const bool boxes = local_feasible(local);
      const bool open = oracle::open_box_oracle_feasible(local);
      if (boxes != open) o.fail("disagreement at seed " + std::to_string(seed));
      feasible += boxes;
      ++tests;
    }
  }
  o.detail << (o.pass ? "" : "; ") << tests << " local tests (" << feasible << " feasible), k <= 2";
  return o;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(UKC_CLI_PATH) + " " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

Outcome determinism() {
  Outcome o;
  int files = 0;
  for (std::uint64_t seed : {3, 17, 42}) {
    GeneratorSpec spec;
    spec.vertices = 7;
    spec.edges = 10;
    spec.points = 5;
    spec.locations = 3;
    const std::string path = std::string(UKC_TEST_TMP) + "/determinism_" + std::to_string(seed) + ".json";
    std::ofstream(path, std::ios::binary) << dump_json(instance_to_json(generate_instance(spec, seed)));
    ++files;
    for (const char* extra : {"--k 1", "--k 2", "--k 2 --engine boxes", "--k 2 --exact-rational"}) {
      const std::string base = std::string("solve ") + extra + " --input " + path;
      const auto first = run_cli(base + " --threads 1");
      if (first.find("<exit") != std::string::npos) o.fail("solve failed: " + base);
      for (const char* threads : {" --threads 1", " --threads 2", " --threads 4", " --threads 4"}) {
        if (run_cli(base + threads) != first) o.fail(std::string("output differs for ") + base + threads);
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << files << " inputs x 4 solve modes, byte-identical across runs with 1, 2 and 4 threads";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"PWL correctness", pwl_correctness},
      {"Klee's measure", klee_measure_check},
      {"feasibility engine agreement", engine_agreement},
      {"monotone feasibility", monotone_feasibility},
      {"optimality sandwich", optimality_sandwich},
      {"closed-form fixtures", closed_form_fixtures},
      {"one-center consistency", one_center_consistency},
      {"shrunk-box local test equivalence", local_test_equivalence},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    failures += !result.pass;
    std::cout << "criterion " << index << " (" << name << "): " << (result.pass ? "PASS" : "FAIL") << " - "
              << result.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
