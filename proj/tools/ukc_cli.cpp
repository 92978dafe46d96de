// ukc: command-line front end for the uncertain k-center solver.
#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ukc/generate.hpp"
#include "ukc/instance_io.hpp"
#include "ukc/one_center.hpp"
#include "ukc/optimizer.hpp"
#include "ukc/oracle.hpp"

namespace {

using namespace ukc;

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kDisconnected = 3, kSizeGuard = 4 };

struct Common {
  std::string input;
  std::string output;
  std::optional<std::string> tolerance;
  bool exact = false;
  bool no_prob_check = false;
  int threads = 0;

  LoadOptions load() const {
    LoadOptions o;
    o.tolerance = tolerance;
    o.no_probability_check = no_prob_check;
    if (exact) o.arithmetic = Arithmetic::kRational;
    return o;
  }
  Exec exec() const { return threads == 1 ? Exec::kSerial : Exec::kParallel; }
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ValidationError(c.output + ": cannot open for writing");
  out << text;
}

std::optional<Engine> engine_of(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "candidates") return Engine::kCandidates;
  return Engine::kBoxes;
}

template <Scalar R>
int run_solve(const Common& c, const Json& doc, int k, const std::string& engine_name, bool verify) {
  const auto inst = instance_from_json<R>(doc, c.load(), c.exec());
  const auto engine = engine_of(engine_name);
  const auto sol =
      (k == 1 && !engine) ? solve_one_center(inst, c.exec()) : solve_k_center(inst, k, engine.value_or(Engine::kCandidates), c.exec());
  Json out = solution_to_json(inst, sol);
  int code = kOk;
  if (verify) {
    const auto report = verify_solution(inst, sol, c.exec());
    out["verification"] = {{"consistent", report.consistent()}, {"violations", report.violations}};
    if (!report.consistent()) code = kFailure;
  }
  emit(c, dump_json(out));
  return code;
}

template <Scalar R>
int run_feasible(const Common& c, const Json& doc, int k, const std::string& lambda_text,
                 const std::string& engine_name) {
  const auto inst = instance_from_json<R>(doc, c.load(), c.exec());
  R lambda;
  try {
    lambda = parse_scalar<R>(lambda_text);
  } catch (const ValidationError& err) {
    throw ValidationError(std::string("--lambda: ") + err.what());
  }
  const auto engine = engine_of(engine_name).value_or(Engine::kCandidates);
  Json out = {{"k", k}, {"lambda", scalar_json(lambda)}, {"engine", engine == Engine::kCandidates ? "candidates" : "boxes"}};
  if (engine == Engine::kCandidates) {
    const auto witness = feasible_by_candidates(inst, k, lambda, c.exec());
    out["feasible"] = witness.has_value();
    if (witness) {
      Json centers = Json::array();
      for (const auto& p : *witness) centers.push_back(point_json(inst.graph(), p, inst.tolerance()));
      out["witness"] = std::move(centers);
    }
  } else {
    out["feasible"] = feasible_by_boxes(inst, k, lambda, c.exec());
  }
  emit(c, dump_json(out));
  return kOk;
}

template <Scalar R>
int run_dump_ed(const Common& c, const Json& doc, int edge, int point) {
  const auto inst = instance_from_json<R>(doc, c.load(), c.exec());
  if (edge < 0 || edge >= inst.graph().num_edges()) throw ValidationError("--edge: edge id out of range");
  if (point < 0 || point >= inst.num_points()) throw ValidationError("--point-id: point id out of range");
  const auto& f = inst.ed(point, edge).function;
  std::string text = "t\ty\tslope\tintercept\n";
  const auto& bps = f.breakpoints();
  for (std::size_t b = 0; b < bps.size(); ++b) {
    // Coefficients of the piece starting here; the last row repeats the last piece.
    const auto line = f.piece(std::min(b, f.piece_count() - 1));
    text += scalar_text(bps[b].t) + "\t" + scalar_text(bps[b].y) + "\t" + scalar_text(line.slope) + "\t" +
            scalar_text(line.intercept) + "\n";
  }
  emit(c, text);
  return kOk;
}

int run_oracle(const Common& c, const Json& doc, int k, double eps) {
  LoadOptions o = c.load();
  o.arithmetic = Arithmetic::kDouble;
  const auto inst = instance_from_json<double>(doc, o, c.exec());
  oracle::GridSpec spec;
  spec.step = eps;
  const auto res = oracle::grid_k_center(inst, k, spec);
  Json centers = Json::array();
  for (const auto& p : res.centers) centers.push_back(point_json(inst.graph(), p, inst.tolerance()));
  const Json out = {{"k", k},
                    {"eps", eps},
                    {"lambda_grid", res.lambda},
                    {"lipschitz_bound", inst.max_weight() * eps / 2},
                    {"grid_points", res.grid_points},
                    {"centers", std::move(centers)}};
  emit(c, dump_json(out));
  return kOk;
}

Json load_input(const Common& c) {
  if (c.input.empty() || c.input == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
  }
  return read_json_file(c.input);
}

template <class F>
int dispatch(const Common& c, F&& body) {
  const Json doc = load_input(c);
  if (arithmetic_of(doc, c.load()) == Arithmetic::kRational) return body(Rational{}, doc);
  return body(0.0, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact k-center for uncertain points on graphs"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&c](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", c.input, "instance JSON file ('-' for stdin)");
    if (needs_input) in->required();
    sub->add_option("--output,-o", c.output, "output file (default stdout)");
    sub->add_option("--tolerance", c.tolerance, "geometric tolerance (overrides the file)");
    sub->add_flag("--exact-rational", c.exact, "exact rational arithmetic");
    sub->add_flag("--no-prob-check", c.no_prob_check, "do not require probabilities to sum to 1");
    sub->add_option("--threads", c.threads, "OpenMP threads (1 = serial path)")->check(CLI::NonNegativeNumber);
  };

  int k = 1;
  std::string engine;
  std::string lambda;
  bool verify = false;
  int edge = 0;
  int point = 0;
  double eps = 1e-3;
  std::uint64_t seed = 1;
  GeneratorSpec gen;

  auto* solve = app.add_subcommand("solve", "compute an optimal k-center");
  add_common(solve, true);
  solve->add_option("--k", k, "number of centers")->required()->check(CLI::PositiveNumber);
  solve->add_option("--engine", engine, "feasibility engine")->check(CLI::IsMember({"candidates", "boxes"}));
  solve->add_flag("--verify", verify, "re-check the solution and report violations");

  auto* feasible = app.add_subcommand("feasible", "decide whether lambda is feasible");
  add_common(feasible, true);
  feasible->add_option("--k", k, "number of centers")->required()->check(CLI::PositiveNumber);
  feasible->add_option("--lambda", lambda, "objective bound")->required();
  feasible->add_option("--engine", engine, "feasibility engine")->check(CLI::IsMember({"candidates", "boxes"}));

  auto* dump = app.add_subcommand("dump-ed", "print the expected distance function of a point on an edge");
  add_common(dump, true);
  dump->add_option("--edge", edge, "edge id")->required();
  dump->add_option("--point-id", point, "uncertain point index")->required();

  auto* orc = app.add_subcommand("oracle", "brute-force grid k-center");
  add_common(orc, true);
  orc->add_option("--k", k, "number of centers")->required()->check(CLI::PositiveNumber);
  orc->add_option("--eps", eps, "grid step")->check(CLI::PositiveNumber);

  auto* gen_cmd = app.add_subcommand("gen", "write a random connected instance");
  add_common(gen_cmd, false);
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--vertices", gen.vertices)->check(CLI::Range(2, 1 << 16));
  gen_cmd->add_option("--edges", gen.edges)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--points", gen.points)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--locations", gen.locations)->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--unit-weights", gen.unit_weights);
  gen_cmd->add_flag("--coarse-offsets", gen.coarse_offsets, "offsets at edge ends and midpoints only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (c.threads > 0) omp_set_num_threads(c.threads);

  try {
    if (solve->parsed()) {
      return dispatch(c, [&](auto zero, const Json& doc) { return run_solve<decltype(zero)>(c, doc, k, engine, verify); });
    }
    if (feasible->parsed()) {
      return dispatch(c, [&](auto zero, const Json& doc) {
        return run_feasible<decltype(zero)>(c, doc, k, lambda, engine);
      });
    }
    if (dump->parsed()) {
      return dispatch(c, [&](auto zero, const Json& doc) { return run_dump_ed<decltype(zero)>(c, doc, edge, point); });
    }
    if (orc->parsed()) return run_oracle(c, load_input(c), k, eps);
    if (gen_cmd->parsed()) {
      emit(c, dump_json(instance_to_json(generate_instance(gen, seed))));
      return kOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const DisconnectedGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDisconnected;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
