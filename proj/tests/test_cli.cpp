#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "lpa/cache.hpp"
#include "lpa/cli.hpp"
#include "lpa/errors.hpp"

using namespace lpa;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path temp_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("lpa_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cache_key({{"a", 1}}) == cache_key(nlohmann::json::parse(R"({"a":1})")));
  CHECK(cache_key({{"a", 1}}) != cache_key({{"a", 2}}));
}

TEST_CASE("cache roundtrip and corruption") {
  auto dir = temp_dir("cache");
  Cache c(dir.string());
  nlohmann::json v = {{"x", {1, 2, 3}}, {"s", "t"}};
  int calls = 0;
  auto f = [&] {
    ++calls;
    return v;
  };
  CHECK(c.get_or_compute("k1", f) == v);
  CHECK(c.last_status() == Cache::Status::miss);
  CHECK(c.get_or_compute("k1", f) == v);
  CHECK(c.last_status() == Cache::Status::hit);
  CHECK(calls == 1);
  std::ofstream(c.path("k1")) << "{ not json";
  CHECK(c.get_or_compute("k1", f) == v);
  CHECK(c.last_status() == Cache::Status::corrupt);
  CHECK(calls == 2);
  CHECK(c.load("k1") == v);

  Cache off("");
  CHECK(off.get_or_compute("k1", f) == v);
  CHECK(off.last_status() == Cache::Status::disabled);
  fs::remove_all(dir);
}

TEST_CASE("cli bracket and grade") {
  auto r = run({"--no-cache", "--basis", "coords", "bracket", "q11", "q21"});
  // --basis belongs to the subcommand.
  CHECK(r.code == 2);
  r = run({"--no-cache", "bracket", "--basis", "coords", "q11", "q21"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["text"] == "1/4*i*s3");
  r = run({"--no-cache", "grade", "d1"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["grading"].size() == 4);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"frobnicate"}).code == 2);
  auto r = run({"--no-cache", "bracket", "C2", "Q7"});
  CHECK(r.code == static_cast<int>(ErrorKind::unknown_name));
  auto err = nlohmann::json::parse(r.err);
  CHECK(err["error"]["kind"] == "unknown-name");
  CHECK(run({"--no-cache", "bracket", "C2", "(D2"}).code == static_cast<int>(ErrorKind::parse));
  CHECK(run({"--no-cache", "--algebra", "/nonexistent.json", "grade", "s1"}).code == static_cast<int>(ErrorKind::io));
  CHECK(run({"--no-cache", "commutant", "--degree", "0"}).code == static_cast<int>(ErrorKind::usage));
}

TEST_CASE("cli algebra file") {
  auto dir = temp_dir("alg");
  auto path = (dir / "bad.json").string();
  std::ofstream(path) << R"({"name":"x","dim":2,"names":["a","b"],"structure":[{"i":0,"j":1,"k":0,"re":"1"},{"i":1,"j":0,"k":0,"re":"1"}]})";
  auto r = run({"--no-cache", "--algebra", path, "grade", "--basis", "coords", "a"});
  CHECK(r.code == static_cast<int>(ErrorKind::invalid_algebra));
  auto good = (dir / "good.json").string();
  std::ofstream(good) << R"({"name":"x","dim":2,"names":["a","b"],"structure":[{"i":0,"j":1,"k":0,"re":"1"}]})";
  r = run({"--no-cache", "--algebra", good, "bracket", "--basis", "coords", "a^2", "b"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["text"] == "2*a^2");
  CHECK(run({"--no-cache", "--algebra", good, "grade", "a"}).code == static_cast<int>(ErrorKind::usage));
  fs::remove_all(dir);
}

TEST_CASE("cli commutant uses the cache") {
  auto dir = temp_dir("cli");
  auto a = run({"--cache-dir", dir.string(), "commutant", "--degree", "3"});
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["basis"].size() == 2);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json";
  CHECK(files == 1);
  auto b = run({"--cache-dir", dir.string(), "commutant", "--degree", "3"});
  CHECK(b.out == a.out);
  fs::remove_all(dir);
}

TEST_CASE("cli expand, relations and verify") {
  auto r = run({"--no-cache", "expand", "C2", "D2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["terms"].size() == 2);
  r = run({"--no-cache", "relations", "--degree", "8"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["relations"].size() == 1);
  r = run({"--no-cache", "verify", "--relations", "fixtures/su4_degree6.json"});
  CHECK(r.code == 0);
  CHECK(r.err.find("identities hold") != std::string::npos);

  auto dir = temp_dir("verify");
  auto path = (dir / "rels.json").string();
  std::ofstream(path) << R"({"basis":"barred","relations":["{C2, D2} = -2 i F1"]})";
  CHECK(run({"--no-cache", "verify", "--relations", path}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("cli output file and thread determinism") {
  auto dir = temp_dir("out");
  auto p1 = (dir / "a.json").string(), p2 = (dir / "b.json").string();
  REQUIRE(run({"--no-cache", "--threads", "1", "-o", p1, "close", "--max-degree", "7"}).code == 0);
  REQUIRE(run({"--no-cache", "--threads", "4", "-o", p2, "close", "--max-degree", "7"}).code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(!slurp(p1).empty());
  CHECK(slurp(p1) == slurp(p2));
  fs::remove_all(dir);
}
