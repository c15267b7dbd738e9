#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>

#include "doctest.h"
#include "zk/config.hpp"
#include "zk/evolution.hpp"
#include "zk/field_io.hpp"

using namespace zk;

TEST_CASE("TOML subset parsing") {
  Config c = Config::parse(
      "# run setup\n"
      "dt = 1e-3\n"
      "label = \"run a\"   # trailing comment\n"
      "dealias = true\n"
      "\n"
      "[grid]\n"
      "N1 = 256\n"
      "L1 = 25.6\n");
  CHECK(c.require_num("dt") == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(c.get_str("label", "") == "run a");
  CHECK(c.get_bool("dealias", false));
  CHECK(c.get_int("grid.N1", 0) == 256);
  CHECK(c.get_num("grid.L1", 0) == doctest::Approx(25.6));
  CHECK(c.get_num("missing", 7.5) == 7.5);
  CHECK(c.get_int("missing", 3) == 3);
  CHECK_FALSE(c.has("missing"));
  CHECK_THROWS_AS(c.require_num("missing"), ConfigInvalid);
  CHECK_THROWS_AS(c.require_num("label"), ConfigInvalid);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(Config::parse("dt 1e-3\n"), ConfigInvalid);
  CHECK_THROWS_AS(Config::parse("x = [1, 2]\n"), ConfigInvalid);
  CHECK_THROWS_AS(Config::parse("[unclosed\nx = 1\n"), ConfigInvalid);
}

TEST_CASE("canonical form and hash are reparse stable") {
  Config a = Config::parse("b = 2\na = 1\n[s]\nc = 3\n");
  Config b = Config::parse(a.canonical());
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  b.set("d", "4");
  CHECK(a.hash() != b.hash());
}

TEST_CASE("field files round-trip bitwise") {
  Grid g(12.8, 6.4, 64, 32);
  Field2D f(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      f.at(i, j) = std::sin(0.3 * i) * std::cos(0.7 * j) + 1e-17 * i;
  std::string path = "test_field_tmp.bin";
  write_field(f, path);
  Field2D r = read_field(path);
  CHECK(r.grid.same(g));
  CHECK(std::memcmp(r.v.data(), f.v.data(), f.v.size() * sizeof(double)) == 0);
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
  CHECK_THROWS_AS(read_field(path), ArtifactMissing);
}

TEST_CASE("evolution output is bitwise deterministic") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D u0(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      u0.at(i, j) =
          2.0 * std::exp(-0.5 * (g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j)));
  EvolutionConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.05;
  cfg.snapshot_stride = 10;
  Trajectory a = evolve(u0, cfg);
  Trajectory b = evolve(u0, cfg);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k)
    CHECK(std::memcmp(a.snapshots[k].v.data(), b.snapshots[k].v.data(),
                      a.snapshots[k].v.size() * sizeof(double)) == 0);
}
