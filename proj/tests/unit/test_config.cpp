#include <doctest.h>

#include <filesystem>

#include "test_support.hpp"
#include "walkrag/config.hpp"
#include "walkrag/errors.hpp"

using namespace walkrag;

namespace {

std::string write_ini(testing::scratch_dir const& dir, std::string const& body) {
  auto const path = dir.file("walkrag.ini");
  testing::write_file(path, body);
  return path;
}

std::string const kMinimal = "[data]\nmap = m.osm\ngazetteer = g.csv\ncorpus = c.jsonl\n";

}  // namespace

TEST_CASE("defaults") {
  service_config c;
  CHECK(c.k == 3);
  CHECK(c.tau == 5.0);
  for (auto const w : c.weights.w) {
    CHECK(w == 0.25);
  }
  CHECK(c.alternatives == 3);
  CHECK(c.poi_buffer_m == 200.0);
  CHECK(c.llm_mode == "mock");
  CHECK(c.index_mode == retrieval::index_mode::exact);
}

TEST_CASE("bundled fixture config loads") {
  auto const c = load_config(testing::data_file("walkrag.ini"), {});
  CHECK(std::filesystem::exists(c.map_path));
  CHECK(std::filesystem::exists(c.corpus_path));
  CHECK(c.tau == 5.0);
  CHECK(c.k == 3);
  CHECK(c.alternatives == 3);
}

TEST_CASE("file values and relative paths") {
  testing::scratch_dir dir;
  auto const path = write_ini(dir, kMinimal +
                                       "[walkability]\ntau = 4\nweights = 0.4, 0.2, 0.2, 0.2\n"
                                       "[retrieval]\nk = 5\nmode = approx\nnprobe = 4\n"
                                       "[server]\nport = 9000\n");
  auto const c = load_config(path, {});
  CHECK(c.tau == 4.0);
  CHECK(c.weights.w[0] == 0.4);
  CHECK(c.weights.w[3] == 0.2);
  CHECK(c.k == 5);
  CHECK(c.index_mode == retrieval::index_mode::approximate);
  CHECK(c.nprobe == 4);
  CHECK(c.port == 9000);
  CHECK(std::filesystem::path{c.map_path} == std::filesystem::absolute(dir.path() / "m.osm"));
}

TEST_CASE("environment beats the file") {
  testing::scratch_dir dir;
  auto const path = write_ini(dir, kMinimal + "[walkability]\ntau = 4\n");
  auto const c = load_config(path, {{"WALKRAG_WALKABILITY_TAU", "6"},
                                    {"WALKRAG_SERVER_PORT", "9100"},
                                    {"WALKRAG_CONFIG", "ignored"},
                                    {"HOME", "/root"}});
  CHECK(c.tau == 6.0);
  CHECK(c.port == 9100);
}

TEST_CASE("unknown keys and bad values are rejected") {
  testing::scratch_dir dir;
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[walkability]\ntaux = 4\n"), {}), config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[walkability]\ntau = -1\n"), {}), config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[walkability]\ntau = abc\n"), {}), config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[walkability]\nweights = 0.5, 0.5, 0.5, 0.5\n"), {}),
                  config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[walkability]\nweights = 0.5, 0.5\n"), {}),
                  config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal + "[llm]\nmode = http\n"), {}), config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, kMinimal), {{"WALKRAG_NOPE_KEY", "1"}}), config_error);
  CHECK_THROWS_AS(load_config(dir.file("missing.ini"), {}), config_error);
  CHECK_THROWS_AS(load_config(write_ini(dir, "[data]\ncorpus = c.jsonl\n"), {}), config_error);
}

TEST_CASE("config_error names the key") {
  testing::scratch_dir dir;
  try {
    load_config(write_ini(dir, kMinimal + "[routing]\npenalty_factor = 0.5\n"), {});
    FAIL("expected config_error");
  } catch (config_error const& e) {
    CHECK(std::string{e.what()}.find("penalty_factor") != std::string::npos);
  }
}
