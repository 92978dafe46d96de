#include "ukc/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace ukc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

int integer_field(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -(1LL << 30) || x > (1LL << 30)) fail(path, "integer out of range");
  return static_cast<int>(x);
}

template <Scalar R>
R scalar_field(const Json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_scalar<R>(v.get<std::string>());
    if (v.is_number_integer()) return R(v.get<long long>());
    if (v.is_number_float()) {
      const double d = v.get<double>();
      return ScalarTraits<R>::from_double(d);
    }
  } catch (const ValidationError& err) {
    fail(path, err.what());
  }
  fail(path, "expected a number or a numeric string");
}

bool bool_field(const Json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw ValidationError(std::string("invalid JSON: ") + err.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Arithmetic arithmetic_of(const Json& doc, const LoadOptions& options) {
  if (options.arithmetic) return *options.arithmetic;
  if (!doc.is_object() || !doc.contains("settings")) return Arithmetic::kDouble;
  const auto& settings = doc["settings"];
  if (!settings.is_object() || !settings.contains("arithmetic")) return Arithmetic::kDouble;
  const auto& a = settings["arithmetic"];
  if (a == "double") return Arithmetic::kDouble;
  if (a == "rational") return Arithmetic::kRational;
  fail("settings.arithmetic", "expected \"double\" or \"rational\"");
}

template <Scalar R>
InstanceData<R> instance_data_from_json(const Json& doc, const LoadOptions& options) {
  InstanceData<R> out;
  if (!doc.is_object()) fail("$", "expected an object");

  const auto& graph = require(doc, "graph", "$");
  out.num_vertices = integer_field(require(graph, "vertices", "graph"), "graph.vertices");
  if (out.num_vertices < 1) fail("graph.vertices", "must be at least 1");
  const auto& edges = require(graph, "edges", "graph");
  if (!edges.is_array()) fail("graph.edges", "expected an array");
  std::vector<int> anchor(static_cast<std::size_t>(out.num_vertices), -1);
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const std::string path = "graph.edges[" + std::to_string(id) + "]";
    Edge<R> e;
    e.u = integer_field(require(edges[id], "u", path), path + ".u");
    e.v = integer_field(require(edges[id], "v", path), path + ".v");
    e.length = scalar_field<R>(require(edges[id], "length", path), path + ".length");
    for (int x : {e.u, e.v}) {
      if (x < 0 || x >= out.num_vertices) fail(path, "vertex id out of range");
      if (anchor[static_cast<std::size_t>(x)] < 0) anchor[static_cast<std::size_t>(x)] = static_cast<int>(id);
    }
    if (!(R(0) < e.length)) fail(path + ".length", "must be positive");
    out.edges.push_back(std::move(e));
  }

  if (doc.contains("settings")) {
    const auto& s = doc["settings"];
    if (!s.is_object()) fail("settings", "expected an object");
    if (s.contains("tolerance")) out.settings.tolerance = scalar_field<R>(s["tolerance"], "settings.tolerance");
    if (s.contains("probability_tolerance")) {
      out.settings.probability_tolerance = scalar_field<R>(s["probability_tolerance"], "settings.probability_tolerance");
    }
    if (s.contains("enforce_probability_sum")) {
      out.settings.enforce_probability_sum = bool_field(s["enforce_probability_sum"], "settings.enforce_probability_sum");
    }
  }
  if (options.tolerance) {
    try {
      out.settings.tolerance = parse_scalar<R>(*options.tolerance);
    } catch (const ValidationError& err) {
      fail("--tolerance", err.what());
    }
  }
  if (out.settings.tolerance < R(0)) fail("settings.tolerance", "must be non-negative");
  if (options.no_probability_check) out.settings.enforce_probability_sum = false;

  const auto& points = require(doc, "points", "$");
  if (!points.is_array()) fail("points", "expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = "points[" + std::to_string(i) + "]";
    UncertainPoint<R> p;
    if (!points[i].is_object()) fail(path, "expected an object");
    if (points[i].contains("weight")) p.weight = scalar_field<R>(points[i]["weight"], path + ".weight");
    const auto& locs = require(points[i], "locations", path);
    if (!locs.is_array()) fail(path + ".locations", "expected an array");
    for (std::size_t j = 0; j < locs.size(); ++j) {
      const std::string lp = path + ".locations[" + std::to_string(j) + "]";
      const auto& loc = locs[j];
      Location<R> l;
      l.probability = scalar_field<R>(require(loc, "probability", lp), lp + ".probability");
      if (loc.contains("vertex")) {
        if (loc.contains("edge") || loc.contains("t")) fail(lp, "give either a vertex or an (edge, t) pair");
        const int v = integer_field(loc["vertex"], lp + ".vertex");
        if (v < 0 || v >= out.num_vertices) fail(lp + ".vertex", "vertex id out of range");
        const int e = anchor[static_cast<std::size_t>(v)];
        if (e < 0) fail(lp + ".vertex", "vertex has no incident edge");
        const auto& edge = out.edges[static_cast<std::size_t>(e)];
        l.point = {e, edge.u == v ? R(0) : edge.length};
      } else {
        l.point.edge = integer_field(require(loc, "edge", lp), lp + ".edge");
        l.point.t = scalar_field<R>(require(loc, "t", lp), lp + ".t");
      }
      p.locations.push_back(std::move(l));
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

template <Scalar R>
Instance<R> instance_from_json(const Json& doc, const LoadOptions& options, Exec exec) {
  auto data = instance_data_from_json<R>(doc, options);
  std::optional<Graph<R>> graph;
  try {
    graph.emplace(data.num_vertices, std::move(data.edges));
  } catch (const ValidationError& err) {
    throw ValidationError(std::string("graph.") + err.what());
  }
  return Instance<R>(std::move(*graph), std::move(data.points), data.settings, exec);
}

Json instance_to_json(const InstanceData<double>& data) {
  Json edges = Json::array();
  for (const auto& e : data.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"length", e.length}});
  Json points = Json::array();
  for (const auto& p : data.points) {
    Json locs = Json::array();
    for (const auto& l : p.locations) {
      locs.push_back({{"edge", l.point.edge}, {"t", l.point.t}, {"probability", l.probability}});
    }
    points.push_back({{"weight", p.weight}, {"locations", std::move(locs)}});
  }
  return {{"graph", {{"vertices", data.num_vertices}, {"edges", std::move(edges)}}},
          {"points", std::move(points)},
          {"settings",
           {{"tolerance", data.settings.tolerance},
            {"enforce_probability_sum", data.settings.enforce_probability_sum},
            {"arithmetic", "double"}}}};
}

template <>
Json scalar_json<double>(const double& v) {
  return v;
}

template <>
Json scalar_json<Rational>(const Rational& v) {
  return v.convert_to<double>();
}

template <>
std::string scalar_text<double>(const double& v) {
  return Json(v).dump();
}

template <>
std::string scalar_text<Rational>(const Rational& v) {
  return v.str();
}

template <Scalar R>
Json point_json(const Graph<R>& g, const GraphPoint<R>& p, const R& tol) {
  Json out = {{"edge", p.edge}, {"t", scalar_json(p.t)}};
  if constexpr (ScalarTraits<R>::kExact) out["t_exact"] = scalar_text(p.t);
  if (auto v = vertex_of(g, p, tol)) out["vertex"] = *v;
  return out;
}

template <Scalar R>
Json solution_to_json(const Instance<R>& inst, const Solution<R>& sol) {
  Json centers = Json::array();
  for (const auto& c : sol.centers) centers.push_back(point_json(inst.graph(), c, inst.tolerance()));
  Json out = {{"k", sol.k},
              {"arithmetic", ScalarTraits<R>::kExact ? "rational" : "double"},
              {"lambda", scalar_json(sol.lambda)}};
  if constexpr (ScalarTraits<R>::kExact) out["lambda_exact"] = scalar_text(sol.lambda);
  out["centers"] = std::move(centers);
  out["assignment"] = sol.assignment;
  out["diagnostics"] = {{"method", sol.diagnostics.method},
                        {"candidate_count", sol.diagnostics.candidate_count},
                        {"feasibility_calls", sol.diagnostics.feasibility_calls}};
  return out;
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

#define UKC_INSTANTIATE_IO(R)                                                                          \
  template InstanceData<R> instance_data_from_json<R>(const Json&, const LoadOptions&);              \
  template Instance<R> instance_from_json<R>(const Json&, const LoadOptions&, Exec);                 \
  template Json point_json<R>(const Graph<R>&, const GraphPoint<R>&, const R&);                      \
  template Json solution_to_json<R>(const Instance<R>&, const Solution<R>&);

UKC_INSTANTIATE_IO(double)
UKC_INSTANTIATE_IO(Rational)

}  // namespace ukc
