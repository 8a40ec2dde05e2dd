#include <fstream>

#include "doctest.h"
#include "matlift/config.hpp"
#include "matlift/error.hpp"
#include "test_util.hpp"

using matlift::Config;
using matlift::errc;
using test_util::code_of;
using test_util::TempDir;

TEST_CASE("sections, types, and lists") {
  Config cfg = Config::parse_string(
      "[experiment]\nkind = mc_norm\ntrials = 2000\nseed = 42\neps = 0.25\n"
      "verbose = true\nC = 1, 10, 100\n\n[base]\ngenerator = petersen\n");
  CHECK(cfg.has("experiment.kind"));
  CHECK_FALSE(cfg.has("experiment.absent"));
  CHECK(cfg.get_string("experiment.kind", "") == "mc_norm");
  CHECK(cfg.get_required("base.generator") == "petersen");
  CHECK(cfg.get_long("experiment.trials", 0) == 2000);
  CHECK(cfg.get_u64("experiment.seed", 0) == 42);
  CHECK(cfg.get_double("experiment.eps", 0) == 0.25);
  CHECK(cfg.get_bool("experiment.verbose", false));
  CHECK(cfg.get_bool("experiment.quiet", true));  // fallback
  CHECK(cfg.get_long("experiment.absent", -7) == -7);

  auto c = cfg.get_double_list("experiment.C");
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[2] == 100.0);
  CHECK(cfg.get_list("experiment.nothing").empty());
}

TEST_CASE("parse failures carry the origin") {
  CHECK(code_of([] { Config::parse_string("key_without_section = 1\n"); }) ==
        errc::config_error);
  CHECK(code_of([] { Config::parse_string("[s]\nnot_an_assignment\n"); }) ==
        errc::config_error);
  CHECK(code_of([] { Config::parse_string("[s]\na = 1\na = 2\n"); }) == errc::config_error);
  CHECK(code_of([] { Config::parse_string("[]\na = 1\n"); }) == errc::config_error);

  try {
    Config::parse_string("[s]\na = 1\na = 2\n", "dup.cfg");
    FAIL("expected ConfigError");
  } catch (const matlift::Error& e) {
    CHECK(std::string(e.what()).find("dup.cfg") != std::string::npos);
    CHECK(std::string(e.what()).find("a") != std::string::npos);
  }
}

TEST_CASE("typed getter failures name the key") {
  Config cfg = Config::parse_string("[s]\nx = banana\n", "typed.cfg");
  CHECK(code_of([&] { cfg.get_long("s.x", 0); }) == errc::config_error);
  CHECK(code_of([&] { cfg.get_double("s.x", 0); }) == errc::config_error);
  CHECK(code_of([&] { cfg.get_bool("s.x", false); }) == errc::config_error);
  try {
    cfg.get_long("s.x", 0);
    FAIL("expected ConfigError");
  } catch (const matlift::Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("s.x") != std::string::npos);
    CHECK(msg.find("typed.cfg") != std::string::npos);
  }
  // trailing junk after a valid prefix is still an error
  Config half = Config::parse_string("[s]\nx = 12abc\n");
  CHECK(code_of([&] { half.get_long("s.x", 0); }) == errc::config_error);
}

TEST_CASE("set overrides and missing required keys") {
  Config cfg = Config::parse_string("[s]\na = 1\n");
  cfg.set("s.a", "2");
  cfg.set("t.fresh", "3");
  CHECK(cfg.get_long("s.a", 0) == 2);
  CHECK(cfg.get_long("t.fresh", 0) == 3);
  CHECK(code_of([&] { cfg.get_required("s.missing"); }) == errc::config_error);
}

TEST_CASE("parse_file matches parse_string and reports io failures") {
  TempDir tmp;
  std::string path = tmp.file("c.cfg");
  {
    std::ofstream out(path);
    out << "[s]\nlist = 1,2 , 3\n";
  }
  Config cfg = Config::parse_file(path);
  auto xs = cfg.get_long_list("s.list");
  REQUIRE(xs.size() == 3);
  CHECK(xs[1] == 2);
  CHECK(code_of([&] { Config::parse_file(tmp.file("absent.cfg")); }) == errc::io_error);
}
