#ifndef UKC_INSTANCE_IO_HPP
#define UKC_INSTANCE_IO_HPP

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ukc/optimizer.hpp"

// JSON instance files and solution records.
//
//   {
//     "graph": {"vertices": 3, "edges": [{"u": 0, "v": 1, "length": 1}, ...]},
//     "points": [
//       {"weight": 1, "locations": [{"edge": 0, "t": 0.25, "probability": 0.5},
//                                   {"vertex": 2, "probability": "1/2"}]}
//     ],
//     "settings": {"tolerance": 1e-9, "enforce_probability_sum": true,
//                  "arithmetic": "double"}
//   }
//
// Offsets t are absolute lengths from the edge's u end. Any number may be
// given as a string ("1/3", "0.1") to keep it exact in rational mode.
namespace ukc {

using Json = nlohmann::json;

enum class Arithmetic { kDouble, kRational };

// Command-line overrides applied on top of the file's settings block.
struct LoadOptions {
  std::optional<std::string> tolerance;
  bool no_probability_check = false;
  std::optional<Arithmetic> arithmetic;
};

// Throws ValidationError (with the line/column for syntax errors).
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

// Arithmetic requested by the options, else the file, else double.
Arithmetic arithmetic_of(const Json& doc, const LoadOptions& options = {});

// Graph and points as plain data, before the Ed table is built.
template <Scalar R>
struct InstanceData {
  int num_vertices = 0;
  std::vector<Edge<R>> edges;
  std::vector<UncertainPoint<R>> points;
  Settings<R> settings;
};

// Throws ValidationError naming the offending field, e.g.
// "points[1].locations[0].probability: must be non-negative".
template <Scalar R>
InstanceData<R> instance_data_from_json(const Json& doc, const LoadOptions& options = {});

// Also validates the points against the graph; DisconnectedGraphError when
// the graph is not connected.
template <Scalar R>
Instance<R> instance_from_json(const Json& doc, const LoadOptions& options = {}, Exec exec = Exec::kParallel);

Json instance_to_json(const InstanceData<double>& data);

// Numbers as JSON numbers; in rational mode the exact value is added as a
// "p/q" string under the *_exact keys.
template <Scalar R>
Json scalar_json(const R& v);
template <Scalar R>
std::string scalar_text(const R& v);
template <>
Json scalar_json<double>(const double& v);
template <>
Json scalar_json<Rational>(const Rational& v);
template <>
std::string scalar_text<double>(const double& v);
template <>
std::string scalar_text<Rational>(const Rational& v);

template <Scalar R>
Json point_json(const Graph<R>& g, const GraphPoint<R>& p, const R& tol);

template <Scalar R>
Json solution_to_json(const Instance<R>& inst, const Solution<R>& sol);

// Stable textual form: two-space indent and a trailing newline.
std::string dump_json(const Json& doc);

}  // namespace ukc

#endif  // UKC_INSTANCE_IO_HPP
