#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <fstream>
#include <set>
#include <sstream>

#include "wmf/cache.hpp"
#include "wmf/preset.hpp"

using namespace wmf;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path;
  ScratchDir() {
    path = fs::temp_directory_path() / ("wmf-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

nlohmann::json n5_json() {
  return nlohmann::json::parse(slurp(preset_dir() / "N5.json"));
}

}  // namespace

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("grid json round trip is byte identical") {
  Session s(load_preset("N5"));
  const Grid& g = s.grid(0, parse_sign_vector(s.chi(), "+1"), 9);
  nlohmann::json j = grid_to_json(g);
  Grid back = grid_from_json(j);
  CHECK(back == g);
  CHECK(grid_to_json(back).dump() == j.dump());
}

TEST_CASE("cache keys separate every parameter") {
  QuadCharacter c15(15);
  auto all = all_sign_vectors(c15);
  std::set<std::string> keys;
  for (const auto& e : all) {
    for (int k : {-1, 3}) {
      for (long m : {0L, 11L}) keys.insert(cache_key("N15", k, e, m, 100));
    }
  }
  keys.insert(cache_key("N15", 3, all[0], 0, 101));
  keys.insert(cache_key("N13", 3, all[0], 0, 100));
  CHECK(keys.size() == all.size() * 4 + 2);
  CHECK(cache_key("N15", 3, all[0], 0, 100) == cache_key("N15", 3, all[0], 0, 100));
}

TEST_CASE("store, load, corrupt, tamper") {
  ScratchDir dir;
  Session s(load_preset("N5"));
  const Grid& g = s.grid(0, parse_sign_vector(s.chi(), "+1"), 9);
  GridCache cache(dir.path);
  const std::string key = cache_key("N5", 0, g.eps, 9, g.precision);
  std::string why;
  CHECK_FALSE(cache.load(key, &why));
  cache.store(key, g);
  auto loaded = cache.load(key, &why);
  REQUIRE(loaded);
  CHECK(*loaded == g);
  const std::string bytes = slurp(cache.file_for(key));
  cache.store(key, *loaded);
  CHECK(slurp(cache.file_for(key)) == bytes);

  // Truncated file: unreadable, reported as a miss.
  spit(cache.file_for(key), bytes.substr(0, bytes.size() / 2));
  CHECK_FALSE(cache.load(key, &why));
  CHECK_FALSE(why.empty());

  // Edited coefficient with the old checksum.
  nlohmann::json j = nlohmann::json::parse(bytes);
  std::string text = j.dump();
  const auto pos = text.find("-216");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, "-215");
  spit(cache.file_for(key), text);
  CHECK_FALSE(cache.load(key, &why));
  GridCache lax(dir.path, false);
  auto tampered = lax.load(key, &why);
  REQUIRE(tampered);
  CHECK_FALSE(stability_check(*tampered, g).pass);
}

TEST_CASE("sessions recompute when the cache is damaged") {
  ScratchDir dir;
  {
    Session s(load_preset("N5"), dir.path);
    s.grid(2, parse_sign_vector(s.chi(), "+1"), 0);
    CHECK(s.stats().computed == 1);
  }
  {
    Session s(load_preset("N5"), dir.path);
    s.grid(2, parse_sign_vector(s.chi(), "+1"), 0);
    CHECK(s.stats().cache_hits == 1);
    CHECK(s.stats().computed == 0);
  }
  for (const auto& f : fs::directory_iterator(dir.path)) spit(f.path(), "{");
  Session s(load_preset("N5"), dir.path);
  const Grid& g = s.grid(2, parse_sign_vector(s.chi(), "+1"), 0);
  CHECK(s.stats().computed == 1);
  CHECK(g.orders() == std::vector<long>{0});
}

TEST_CASE("preset validation") {
  CHECK(preset_names().size() >= 5);
  for (const auto& name : preset_names()) CHECK_NOTHROW(validate_preset(load_preset(name)));
  CHECK_THROWS_AS(load_preset("N999"), PresetError);

  nlohmann::json bad_pole = n5_json();
  bad_pole["ascent"]["pole"] = 2;
  CHECK_THROWS_AS(validate_preset(parse_preset(bad_pole)), PresetError);

  nlohmann::json bad_weight = n5_json();
  bad_weight["ascent"]["eta"] = {{"1", 5}, {"5", -6}};
  CHECK_THROWS_AS(validate_preset(parse_preset(bad_weight)), PresetError);

  nlohmann::json bad_level = n5_json();
  bad_level["level"] = 7;
  CHECK_THROWS_AS(validate_preset(parse_preset(bad_level)), PresetError);

  nlohmann::json missing = n5_json();
  missing.erase("grids");
  CHECK_THROWS_AS(parse_preset(missing), PresetError);
}

TEST_CASE("expected orders in a preset are enforced") {
  nlohmann::json j = n5_json();
  for (auto& g : j["grids"]) {
    if (g["weight"] == 2 && g["max_pole"] == 0) g["expected_orders"]["+1"] = {0, 1};
  }
  Session s(parse_preset(j));
  CHECK_THROWS(s.grid(2, parse_sign_vector(s.chi(), "+1"), 0));
}
