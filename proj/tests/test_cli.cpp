#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clusterdouble/cli.hpp"
#include "clusterdouble/serialize.hpp"
#include "clusterdouble/surface.hpp"

using namespace clusterdouble;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(std::filesystem::temp_directory_path() / ("clusterdouble-cli-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

 private:
  std::filesystem::path dir_;
};

const std::string kSquare = to_json(polygon_triangulation(4, {{0, 2}})).dump();
const std::string kPentagon = to_json(polygon_triangulation(5, {{0, 2}, {0, 3}})).dump();

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("map verify on iota") {
    const Run r = run({"map", "verify", "--property", "iota", "--rank", "3", "--trials", "50", "--seed", "7"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict property=iota status=pass trials=50") != std::string::npos);
    CHECK(r.out.find("all 1 properties passed") != std::string::npos);
    CHECK(r.err.find("time property=iota seconds=") != std::string::npos);
  }

  TEST_CASE("surface check-flip on the square") {
    const Scratch s;
    const Run r = run({"surface", "check-flip", "--m", "2", "--file", s.write("square.json", kSquare)});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict property=flip-mutation edge=p1-p3 status=pass") != std::string::npos);
    const Run m3 = run({"surface", "check-flip", "--m", "3", "--file", s.write("square.json", kSquare)});
    CHECK(m3.code == kExitMalformedInput);
  }

  TEST_CASE("coords roundtrip on the pentagon") {
    const Scratch s;
    const Run r = run({"coords", "roundtrip", "--file", s.write("pentagon.json", kPentagon), "--trials", "100", "--seed", "7"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict property=roundtrip status=pass trials=100") != std::string::npos);
  }

  TEST_CASE("output is reproducible") {
    const Scratch s;
    const std::string pentagon = s.write("pentagon.json", kPentagon);
    const std::vector<std::string> verify{"map", "verify", "--property", "all", "--rank", "3", "--trials", "20", "--seed", "3"};
    CHECK(run(verify).out == run(verify).out);
    std::vector<std::string> serial = verify;
    serial.push_back("--serial");
    CHECK(run(serial).out == run(verify).out);
    const std::vector<std::string> coords{"coords", "verify", "--file", pentagon, "--property", "all", "--trials", "10"};
    const Run first = run(coords);
    CHECK(first.code == kExitOk);
    CHECK(first.out == run(coords).out);
  }

  TEST_CASE("seed and map commands") {
    const Scratch s;
    const std::string seed = s.write("a2.json", R"({"indices": ["1", "2"], "frozen": [], "eps": [[0, 1], [-1, 0]]})");
    Run r = run({"seed", "mutate", "--file", seed, "--k", "1", "--k", "1"});
    CHECK(r.code == kExitOk);
    CHECK(seed_from_json(parse_json(r.out)) == seed_from_json(parse_json(R"({"indices": ["1", "2"], "frozen": [],
                                                                              "eps": [[0, 1], [-1, 0]]})")));
    r = run({"seed", "class", "--file", seed});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out)["size"] == 1);

    r = run({"map", "mutate-a", "--file", seed, "--k", "1"});
    REQUIRE(r.code == kExitOk);
    const std::string map = s.write("mu1.json", r.out);
    r = run({"map", "compose", "--file", map, "--file", map});
    REQUIRE(r.code == kExitOk);
    const ClusterMap twice = cluster_map_from_json(parse_json(r.out));
    CHECK(twice.source_vars() == twice.target_vars());
    for (std::size_t i = 0; i < twice.pullbacks().size(); ++i) {
      CHECK(twice.pullback(i) == RationalFunction::variable(twice.source_vars(), twice.target_vars().names()[i]));
    }
    r = run({"map", "mutate-x", "--file", seed, "--k", "1"});
    const std::string xmap = s.write("x1.json", r.out);
    CHECK(run({"map", "compose", "--file", map, "--file", xmap}).code == kExitMalformedInput);
  }

  TEST_CASE("surface and coords commands") {
    const Scratch s;
    const std::string square = s.write("square.json", kSquare);
    Run r = run({"surface", "seed", "--file", square});
    CHECK(r.code == kExitOk);
    CHECK(seed_from_json(parse_json(r.out)).size() == 5);
    r = run({"surface", "flip", "--file", square, "--edge", "p1-p3"});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out)["correspondence"]["p1-p3"] == "p2-p4");
    r = run({"surface", "polygon", "--n", "6"});
    CHECK(triangulation_from_json(parse_json(r.out)).internal_edges().size() == 3);

    const std::string config = s.write("config.json", "{" + kSquare.substr(1, kSquare.size() - 2) +
                                                          R"(, "front": [{"flag": "0"}, {"flag": "-1"}, {"flag": "inf"}, {"flag": "1"}]})");
    r = run({"coords", "compute", "--file", config});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out)["X"]["p1-p3"] == "1/1");

    const std::string coords = s.write("coords.json", R"({"B": {"p1-p3": "3"}, "X": {"p1-p3": "2"}})");
    r = run({"coords", "reconstruct", "--file", coords, "--triangulation", square});
    REQUIRE(r.code == kExitOk);
    const std::string rebuilt = s.write("rebuilt.json", r.out);
    r = run({"coords", "compute", "--file", rebuilt});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out)["B"]["p1-p3"] == "3/1");
    CHECK(parse_json(r.out)["X"]["p1-p3"] == "2/1");
  }

  TEST_CASE("malformed input exits with code 2") {
    const Scratch s;
    CHECK(run({}).code == kExitMalformedInput);
    CHECK(run({"seed", "mutate", "--file", "/nonexistent/seed.json", "--k", "1"}).code == kExitMalformedInput);
    const std::string broken = s.write("broken.json", "{\"indices\": [");
    const Run r = run({"seed", "mutate", "--file", broken, "--k", "1"});
    CHECK(r.code == kExitMalformedInput);
    CHECK(r.err.rfind("error: malformed input:", 0) == 0);
    CHECK(run({"map", "verify", "--property", "bogus"}).code == kExitMalformedInput);
    CHECK(run({"map", "verify", "--property", "iota", "--rank", "0"}).code == kExitMalformedInput);
    const std::string square = s.write("square.json", kSquare);
    CHECK(run({"surface", "flip", "--file", square, "--edge", "p1-p2"}).code == kExitMalformedInput);
    const std::string zero = s.write("zero.json", R"({"X": {"p1-p3": "0"}})");
    CHECK(run({"coords", "reconstruct", "--file", zero, "--triangulation", square}).code == kExitMalformedInput);
    CHECK(run({"frobnicate"}).code == kExitMalformedInput);
  }
}
