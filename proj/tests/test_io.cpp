#include <catch_amalgamated.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>

#include "twistcvx/io.hpp"

using namespace twistcvx;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("twistcvx_io_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("cloud CSV layout and round trip") {
  SampleCloud cloud;
  cloud.points.push_back({{0.1, 1.0 / 3.0}, 0, 42, 0, false});
  cloud.points.push_back({{5e-324, 0.30000000000000004}, 3, 18446744073709551615ull, 7, true});
  const auto text = cloud_csv(cloud);
  CHECK(text.find('\r') == std::string::npos);
  const auto lines = split(text, '\n');
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "worker,seed,coord1,coord2,refined");
  CHECK(lines[3].empty());
  for (std::size_t i = 0; i < 2; ++i) {
    const auto f = split(lines[i + 1], ',');
    REQUIRE(f.size() == 5);
    CHECK(std::stoul(f[0]) == cloud.points[i].worker);
    CHECK(std::stoull(f[1]) == cloud.points[i].seed);
    for (int k = 0; k < 2; ++k) {
      double x = 0;
      std::from_chars(f[2 + k].data(), f[2 + k].data() + f[2 + k].size(), x);
      CHECK(x == cloud.points[i].coords[k]);
    }
    CHECK(f[4] == (cloud.points[i].refined ? "1" : "0"));
  }
  CHECK(cloud_csv(SampleCloud{}) == "worker,seed,refined\n");
}

TEST_CASE("alcove JSON for the SU(3) flip") {
  const auto d = parse_group("A2");
  const auto tw = parse_twist(d, "flip");
  const auto alc = build_twisted_alcove(tw);
  const auto j = alcove_json(tw, alc);
  CHECK(j["rank"] == 2);
  CHECK(j["twist_order"] == 2);
  CHECK(j["node_permutation"] == Json::array({2, 1}));
  CHECK(j["dimension"] == 1);
  CHECK(j["vertices"].size() == 2);
  CHECK(j["halfspaces"].size() == 2);
  std::vector<std::string> vc;
  for (const auto& v : j["vertices"]) vc.push_back(v["coords"][0].get<std::string>());
  std::sort(vc.begin(), vc.end());
  CHECK(vc == std::vector<std::string>{"0", "1/2"});
  // exact entries are emitted as rational strings
  for (const auto& h : j["halfspaces"]) CHECK(h["offset"].is_string());
  // round trip through text
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("polygon JSON") {
  const auto p = hull_2d(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
  const auto j = polygon_json(p);
  CHECK(j["kind"] == "polygon");
  CHECK(j["vertices"].size() == 3);
  CHECK(j["halfspaces"].size() == 3);
  const auto back = Json::parse(j.dump());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back["vertices"][i][0].get<double>() == p.vertices[i][0]);
    CHECK(back["halfspaces"][i]["offset"].get<double>() == p.halfspaces[i].offset);
  }
}

TEST_CASE("matrix JSON round trip is exact") {
  Rng rng(3);
  const CMatrix m = haar_matrix(4, rng);
  const auto back = matrix_from_json(Json::parse(matrix_json(m).dump()));
  CHECK(back == m);
  // real entries may be given as plain numbers
  const auto r = matrix_from_json(Json::parse(R"({"matrix": [[1, 0], [0, [1, 0]]]})"));
  CHECK(r == CMatrix::Identity(2, 2));
}

TEST_CASE("malformed inputs raise input errors") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"m": []})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"matrix": []})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"matrix": [[1, 0]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"matrix": [["a"]]})")), InputError);
  const auto dir = scratch("bad");
  write_text(dir / "bad.json", "{\"matrix\": [");
  CHECK_THROWS_AS(read_json(dir / "bad.json"), InputError);
  CHECK_THROWS_AS(read_text(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("write_text creates parents and reports unwritable paths") {
  const auto dir = scratch("write");
  write_text(dir / "a" / "b" / "c.txt", "hello\n");
  CHECK(read_text(dir / "a" / "b" / "c.txt") == "hello\n");
  // a regular file in the way of a directory
  write_text(dir / "blocker", "x");
  CHECK_THROWS_AS(write_text(dir / "blocker" / "f.txt", "y"), ConfigError);
  std::filesystem::remove_all(dir);
}
