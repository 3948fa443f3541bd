#include "clusterdouble/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "clusterdouble/cluster_map.hpp"
#include "clusterdouble/errors.hpp"
#include "clusterdouble/flagconfig.hpp"
#include "clusterdouble/serialize.hpp"
#include "clusterdouble/surface.hpp"
#include "clusterdouble/verify.hpp"

namespace clusterdouble {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

std::string percent(std::size_t part, std::size_t whole) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / whole);
  return buf;
}

void print_verdict(const VerificationReport& r, std::ostream& out, std::ostream& err) {
  out << "verdict property=" << r.property << " status=" << (r.passed() ? "pass" : "fail") << " trials=" << r.trials
      << " skipped=" << r.skipped << " failures=" << r.failures.size() << " fingerprint=" << r.fingerprint << "\n";
  for (const auto& f : r.failures) {
    out << "failure property=" << r.property << " trial=" << f.trial << " message=" << Json(f.message).dump()
        << " input=" << f.counterexample.dump() << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
  err << "time property=" << r.property << " seconds=" << buf << "\n";
}

int print_summary(const std::vector<VerificationReport>& reports, std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& r : reports) {
    out << r.property << ": " << (r.trials - r.skipped) << " of " << r.trials << " trials checked, " << r.skipped
        << " skipped (" << percent(r.skipped, r.trials) << "), " << r.failures.size() << " failed\n";
    if (!r.passed()) ++failed;
  }
  if (failed == 0) {
    out << "all " << reports.size() << " properties passed\n";
    return kExitOk;
  }
  out << failed << " of " << reports.size() << " properties failed\n";
  return kExitPropertyFailed;
}

std::vector<std::string> expand_properties(const std::vector<std::string>& requested,
                                           const std::vector<std::string>& known) {
  std::vector<std::string> out;
  for (const auto& p : requested) {
    if (p == "all") {
      out.insert(out.end(), known.begin(), known.end());
    } else if (std::find(known.begin(), known.end(), p) != known.end()) {
      out.push_back(p);
    } else {
      throw ArgumentError("unknown property '" + p + "'");
    }
  }
  return out;
}

struct Options {
  std::string file;
  std::vector<std::string> files;
  std::vector<std::string> ks;
  std::string k;
  std::string edge;
  std::string triangulation;
  std::vector<std::string> properties;
  std::size_t rank = 3;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_nodes = 1000;
  std::size_t n = 0;
  int m = 2;
  bool serial = false;
};

Execution execution_of(const Options& o) { return o.serial ? Execution::Serial : Execution::Parallel; }

Json class_json(const MutationClassGraph& g) {
  Json out = Json::object();
  out["size"] = g.nodes.size();
  out["truncated"] = g.truncated;
  Json nodes = Json::array();
  for (const auto& node : g.nodes) nodes.push_back(Json{{"mutable", node.mutable_count}, {"eps", node.eps.rows()}});
  out["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.from, e.direction, e.to}));
  out["edges"] = std::move(edges);
  return out;
}

IdealTriangulation fan_polygon(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> diagonals;
  for (std::size_t k = 2; k + 1 < n; ++k) diagonals.emplace_back(0, k);
  return polygon_triangulation(n, diagonals);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cluster-variety computations: seeds, cluster maps, triangulations, flag coordinates."};
  app.name("clusterdouble");
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  // seed
  auto* seed_cmd = app.add_subcommand("seed", "Seed mutation and mutation classes");
  seed_cmd->require_subcommand(1);
  auto* seed_mutate = seed_cmd->add_subcommand("mutate", "Mutate a seed along a sequence of directions");
  seed_mutate->add_option("--file", o.file, "Seed file")->required();
  seed_mutate->add_option("--k", o.ks, "Direction (repeatable, applied left to right)")->required();
  on(seed_mutate, [&] {
    out << to_json(apply_mutation_sequence(seed_from_json(read_json_file(o.file)), o.ks)).dump(2) << "\n";
    return kExitOk;
  });
  auto* seed_class = seed_cmd->add_subcommand("class", "Enumerate the mutation class up to isomorphism");
  seed_class->add_option("--file", o.file, "Seed file")->required();
  seed_class->add_option("--max-nodes", o.max_nodes, "Stop after this many classes")->check(CLI::PositiveNumber);
  seed_class->add_flag("--serial", o.serial, "Use the serial reference path");
  on(seed_class, [&] {
    const Seed s = seed_from_json(read_json_file(o.file));
    out << class_json(enumerate_mutation_class(s, o.max_nodes, execution_of(o))).dump(2) << "\n";
    return kExitOk;
  });

  // map
  auto* map_cmd = app.add_subcommand("map", "Cluster transformations as pullback maps");
  map_cmd->require_subcommand(1);
  for (auto [name, kind] : {std::pair{"mutate-a", TorusKind::A}, std::pair{"mutate-x", TorusKind::X},
                            std::pair{"mutate-d", TorusKind::D}}) {
    auto* sub = map_cmd->add_subcommand(name, std::string("Mutation map on the ") +
                                                  (kind == TorusKind::A ? "A" : kind == TorusKind::X ? "X" : "D") +
                                                  "-torus");
    sub->add_option("--file", o.file, "Seed file")->required();
    sub->add_option("--k", o.k, "Mutation direction")->required();
    on(sub, [&, kind = kind] {
      out << to_json(mutation(seed_from_json(read_json_file(o.file)), o.k, kind)).dump(2) << "\n";
      return kExitOk;
    });
  }
  auto* map_compose = map_cmd->add_subcommand("compose", "Compose maps: the first file's map, then the next, ...");
  map_compose->add_option("--file", o.files, "Map file (repeatable)")->required();
  on(map_compose, [&] {
    ClusterMap acc = cluster_map_from_json(read_json_file(o.files.at(0)));
    for (std::size_t i = 1; i < o.files.size(); ++i) {
      const ClusterMap next = cluster_map_from_json(read_json_file(o.files[i]));
      if (!(next.source_vars() == acc.target_vars())) {
        throw ArgumentError("map '" + o.files[i] + "' does not start where the previous one ends");
      }
      acc = compose(acc, next);
    }
    out << to_json(acc).dump(2) << "\n";
    return kExitOk;
  });
  auto* map_verify = map_cmd->add_subcommand("verify", "Check map identities on random seeds");
  map_verify->add_option("--property", o.properties, "involutivity|pentagon|iota|phi-pi|j-diagonal|naturality|all")
      ->required();
  map_verify->add_option("--rank", o.rank, "Maximum seed size")->check(CLI::PositiveNumber);
  map_verify->add_option("--trials", o.trials, "Number of trials");
  map_verify->add_option("--seed", o.seed, "Pseudo-random seed");
  map_verify->add_flag("--serial", o.serial, "Use the serial reference path");
  on(map_verify, [&] {
    std::vector<VerificationReport> reports;
    for (const auto& p : expand_properties(o.properties, kMapProperties)) {
      reports.push_back(verify_map_property(p, o.rank, o.trials, o.seed, execution_of(o)));
      print_verdict(reports.back(), out, err);
    }
    return print_summary(reports, out);
  });

  // surface
  auto* surface_cmd = app.add_subcommand("surface", "Ideal triangulations and their seeds");
  surface_cmd->require_subcommand(1);
  auto* surface_seed = surface_cmd->add_subcommand("seed", "Seed of the m-triangulation");
  surface_seed->add_option("--file", o.file, "Triangulation file")->required();
  surface_seed->add_option("--m", o.m, "Subdivision order (at least 2)");
  on(surface_seed, [&] {
    out << to_json(m_triangulation_seed(triangulation_from_json(read_json_file(o.file)), o.m)).dump(2) << "\n";
    return kExitOk;
  });
  auto* surface_flip = surface_cmd->add_subcommand("flip", "Flip an internal edge");
  surface_flip->add_option("--file", o.file, "Triangulation file")->required();
  surface_flip->add_option("--edge", o.edge, "Edge name")->required();
  on(surface_flip, [&] {
    const FlipResult r = flip(triangulation_from_json(read_json_file(o.file)), o.edge);
    Json j = Json::object();
    j["triangulation"] = to_json(r.triangulation);
    Json corr = Json::object();
    for (const auto& [from, to] : r.correspondence) corr[from] = to;
    j["correspondence"] = std::move(corr);
    out << j.dump(2) << "\n";
    return kExitOk;
  });
  auto* surface_check = surface_cmd->add_subcommand("check-flip", "Compare flipped seeds with mutated seeds");
  surface_check->add_option("--file", o.file, "Triangulation file")->required();
  surface_check->add_option("--m", o.m, "Subdivision order (only 2 is supported)");
  surface_check->add_option("--edge", o.edge, "Check only this edge");
  on(surface_check, [&] {
    const IdealTriangulation t = triangulation_from_json(read_json_file(o.file));
    const std::vector<std::string> edges = o.edge.empty() ? t.internal_edges() : std::vector<std::string>{o.edge};
    std::size_t failed = 0;
    for (const auto& e : edges) {
      const FlipCheckVerdict v = flip_mutation_check(t, e, o.m);
      out << "verdict property=flip-mutation edge=" << e << " status=" << (v.equal ? "pass" : "fail") << "\n";
      if (!v.equal) {
        ++failed;
        out << "failure property=flip-mutation edge=" << e << " message=" << Json(v.discrepancy).dump() << "\n";
      }
    }
    out << "flip-mutation: " << edges.size() - failed << " of " << edges.size() << " edges agree\n";
    return failed == 0 ? kExitOk : kExitPropertyFailed;
  });
  auto* surface_polygon = surface_cmd->add_subcommand("polygon", "Fan triangulation of a convex polygon");
  surface_polygon->add_option("--n", o.n, "Number of vertices (at least 3)")->required();
  on(surface_polygon, [&] {
    out << to_json(fan_polygon(o.n)).dump(2) << "\n";
    return kExitOk;
  });

  // coords
  auto* coords_cmd = app.add_subcommand("coords", "Coordinates of flag configurations on polygons");
  coords_cmd->require_subcommand(1);
  auto* coords_compute = coords_cmd->add_subcommand("compute", "Coordinates of a configuration");
  coords_compute->add_option("--file", o.file, "Configuration file")->required();
  on(coords_compute, [&] {
    const ConfigFile c = config_from_json(read_json_file(o.file));
    if (c.front_lifts && c.back_lifts) {
      const DoubleConfig d(DecoratedPolygonConfig(c.triangulation, *c.front_lifts),
                           DecoratedPolygonConfig(c.triangulation.mirrored(), *c.back_lifts));
      out << to_json(double_coords(d)).dump(2) << "\n";
    } else {
      if (c.back_lifts) throw ArgumentError("back lifts need front lifts");
      Json j = Json::object();
      if (c.front_lifts) j["A"] = to_json(a_coords(DecoratedPolygonConfig(c.triangulation, *c.front_lifts)));
      j["X"] = to_json(x_coords(FramedPolygonConfig(c.triangulation, c.flags)));
      out << j.dump(2) << "\n";
    }
    return kExitOk;
  });
  auto* coords_reconstruct = coords_cmd->add_subcommand("reconstruct", "Configuration with given coordinates");
  coords_reconstruct->add_option("--file", o.file, "Coordinate file")->required();
  coords_reconstruct->add_option("--triangulation", o.triangulation, "Triangulation file")->required();
  on(coords_reconstruct, [&] {
    const Json j = read_json_file(o.file);
    const DoubleCoordinates c = coordinates_from_json(j);
    const IdealTriangulation t = triangulation_from_json(read_json_file(o.triangulation));
    if (j.contains("B")) {
      out << to_json(reconstruct_double(t, c.B, c.X)).dump(2) << "\n";
    } else {
      out << to_json(reconstruct_framed(t, c.X)).dump(2) << "\n";
    }
    return kExitOk;
  });
  auto* coords_roundtrip = coords_cmd->add_subcommand("roundtrip", "Reconstruct then recompute random coordinates");
  coords_roundtrip->add_option("--file", o.file, "Triangulation file")->required();
  coords_roundtrip->add_option("--trials", o.trials, "Number of trials");
  coords_roundtrip->add_option("--seed", o.seed, "Pseudo-random seed");
  coords_roundtrip->add_flag("--serial", o.serial, "Use the serial reference path");
  on(coords_roundtrip, [&] {
    const IdealTriangulation t = triangulation_from_json(read_json_file(o.file));
    std::vector<VerificationReport> reports{verify_polygon_property("roundtrip", t, o.trials, o.seed, execution_of(o))};
    print_verdict(reports.back(), out, err);
    return print_summary(reports, out);
  });
  auto* coords_verify = coords_cmd->add_subcommand("verify", "Check coordinate identities on random configurations");
  coords_verify->add_option("--file", o.file, "Triangulation file")->required();
  coords_verify->add_option("--property", o.properties, "roundtrip|rescale|p-map|mirror|flip-naturality|all")
      ->required();
  coords_verify->add_option("--trials", o.trials, "Number of trials");
  coords_verify->add_option("--seed", o.seed, "Pseudo-random seed");
  coords_verify->add_flag("--serial", o.serial, "Use the serial reference path");
  on(coords_verify, [&] {
    const IdealTriangulation t = triangulation_from_json(read_json_file(o.file));
    std::vector<VerificationReport> reports;
    for (const auto& p : expand_properties(o.properties, kPolygonProperties)) {
      reports.push_back(verify_polygon_property(p, t, o.trials, o.seed, execution_of(o)));
      print_verdict(reports.back(), out, err);
    }
    return print_summary(reports, out);
  });

  std::vector<std::string> argv_storage{"clusterdouble"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return app.exit(CLI::CallForHelp(), out, err);
  } catch (const CLI::CallForAllHelp&) {
    return app.exit(CLI::CallForAllHelp(), out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitMalformedInput;
  }

  try {
    return action ? action() : kExitMalformedInput;
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const ArgumentError& e) {
    err << "error: invalid argument: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: degenerate input: " << e.what() << "\n";
  }
  return kExitMalformedInput;
}

}  // namespace clusterdouble
