#pragma once

// JSON text formats. Output is deterministic: object keys keep insertion
// order and polynomial terms are written in grlex order, largest first.
//
//   seed           {"indices": [...], "frozen": [...], "eps": [[...], ...]}
//   polynomial     [[[e1, e2, ...], "p/q"], ...]
//   function       {"vars": [...], "num": polynomial, "den": polynomial}
//   map            {"source": [...], "target": [...],
//                   "pullback": [[name, {"num": ..., "den": ...}], ...]}
//   triangulation  {"vertices": [...], "triangles": [[v, v, v], ...],
//                   "gluings": [[[t, side], [t, side]], ...],
//                   "boundary": [[t, side], ...]}
//   configuration  triangulation fields plus
//                   "front": [{"flag": "p/q" | "inf", "lift": ["x", "y"]}, ...]
//                   "back":  [{"lift": ["x", "y"]}, ...]   (optional)
//                  one entry per vertex; "lift" is optional in "front"
//   coordinates    {"B": {edge: "p/q", ...}, "X": {edge: "p/q", ...}}
//
// Every reader throws ParseError on malformed input.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterdouble/cluster_map.hpp"
#include "clusterdouble/flagconfig.hpp"
#include "clusterdouble/ratfunc.hpp"
#include "clusterdouble/seed.hpp"
#include "clusterdouble/surface.hpp"

namespace clusterdouble {

using Json = nlohmann::ordered_json;

// Parses JSON text, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

Json to_json(const Seed& seed);
Seed seed_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, const VarSet& vars);

Json to_json(const RationalFunction& f);
RationalFunction ratfunc_from_json(const Json& j);

Json to_json(const ClusterMap& f);
ClusterMap cluster_map_from_json(const Json& j);

Json to_json(const IdealTriangulation& t);
IdealTriangulation triangulation_from_json(const Json& j);

struct ConfigFile {
  IdealTriangulation triangulation;
  std::vector<ProjectivePoint> flags;
  std::optional<std::vector<Vec2>> front_lifts;
  std::optional<std::vector<Vec2>> back_lifts;  // on the mirrored triangulation
};

ConfigFile config_from_json(const Json& j);
Json to_json(const FramedPolygonConfig& c);
Json to_json(const DoubleConfig& d);

Json to_json(const DoubleCoordinates& c);
Json to_json(const EdgeValues& values);
DoubleCoordinates coordinates_from_json(const Json& j);

}  // namespace clusterdouble
