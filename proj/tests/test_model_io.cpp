#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "tmprune/error.hpp"
#include "tmprune/model_io.hpp"

using namespace tmprune;

TEST_CASE("binary header layout") {
  ModelConfig cfg;
  cfg.num_classes = 3;
  cfg.clauses_per_class = 4;
  cfg.vote_clip_t = 7;
  cfg.specificity_s = 3.5;
  const Model m(cfg, 5, 0x0123456789abcdefull);
  const auto bytes = serialize_model(m);
  REQUIRE(bytes.size() == kModelHeaderBytes + 12 * 10);
  CHECK(std::string(reinterpret_cast<const char*>(bytes.data()), 7) == "TMPRUNE");
  CHECK(bytes[8] == 1);    // version
  CHECK(bytes[12] == 3);   // classes
  CHECK(bytes[16] == 4);   // clauses per class
  CHECK(bytes[20] == 5);   // n
  CHECK(bytes[24] == 0);   // 256 little-endian low byte
  CHECK(bytes[25] == 1);
  CHECK(bytes[28] == 7);   // T
  CHECK(bytes[40] == 0xef);  // fingerprint low byte
  CHECK(bytes[47] == 0x01);
  CHECK(bytes[48] == 127);   // first state
}

TEST_CASE("serialize/deserialize and JSON export are lossless") {
  std::mt19937_64 rng(4);
  ModelConfig cfg;
  cfg.num_classes = 3;
  cfg.clauses_per_class = 6;
  for (int trial = 0; trial < 20; ++trial) {
    const Model m = oracle::random_model(rng, cfg, 1 + rng() % 70, 0.2);
    const Model back = deserialize_model(serialize_model(m));
    CHECK(back == m);
    CHECK(serialize_model(back) == serialize_model(m));
    CHECK(model_from_json(model_to_json(m)) == m);
  }
}

TEST_CASE("corrupt model files are format errors") {
  const Model m(ModelConfig{}, 3, 1);
  auto bytes = serialize_model(m);
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(deserialize_model(truncated), FormatError);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(deserialize_model(bad_magic), FormatError);
  auto bad_version = bytes;
  bad_version[8] = 9;
  CHECK_THROWS_AS(deserialize_model(bad_version), FormatError);
  auto bad_states = bytes;
  bad_states[24] = 3;  // odd num_states
  CHECK_THROWS_AS(deserialize_model(bad_states), FormatError);
  CHECK_THROWS_AS(deserialize_model({}), FormatError);
}

TEST_CASE("save/load through a file") {
  const auto path = std::filesystem::temp_directory_path() / "tmprune_model_io.tm";
  Model m(ModelConfig{}, 4, 77);
  m.set_state(3, 5, 250);
  save_model(m, path);
  CHECK(load_model(path) == m);
  CHECK_THROWS_AS(load_model("/nonexistent/model.tm"), DataError);
}
