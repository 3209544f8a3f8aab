#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "app.hpp"

using namespace kvol::cli;
using nlohmann::json;

namespace {

RunConfig lshape_config(const std::string& sub, int a, int b) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.lshape = std::make_pair(a, b);
  return cfg;
}

std::size_t count_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  return rows - 1;  // minus the column header
}

}  // namespace

TEST_CASE("info") {
  const RunResult r = run(lshape_config("info", 3, 3));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("volume: 5") != std::string::npos);
  CHECK(r.output.find("angle 6pi") != std::string::npos);
  CHECK_THROWS_AS(run(lshape_config("info", 1, 3)), UsageError);

  const std::string path = "cli_test_torus.txt";
  std::ofstream(path) << "squares: 1\nright: \nup: \n";
  RunConfig cfg;
  cfg.subcommand = "info";
  cfg.origami_path = path;
  const RunResult t = run(cfg);
  CHECK(t.exit_code == 0);
  CHECK(t.diagnostics.find("not in H(2)") != std::string::npos);

  cfg.format = Format::json;
  const json j = json::parse(run(cfg).output);
  CHECK(j["squares"] == 1);
  CHECK(j["in_h2"] == false);
}

TEST_CASE("surface source must be unique") {
  RunConfig cfg = lshape_config("info", 3, 3);
  cfg.origami_path = "x.txt";
  CHECK_THROWS_AS(run(cfg), UsageError);
  cfg = RunConfig{};
  cfg.subcommand = "info";
  CHECK_THROWS_AS(run(cfg), UsageError);
}

TEST_CASE("enumerate csv") {
  RunConfig cfg = lshape_config("enumerate", 3, 3);
  cfg.max_sq_len = 4;
  const RunResult r = run(cfg);
  CHECK(r.output.rfind("# {", 0) == 0);
  CHECK(r.output.find("\"seed\":0") != std::string::npos);
  CHECK(r.output.find("id,kind,p,q,hx,hy,sq_len,c_e2,c_f1,c_e1,c_f2\n") != std::string::npos);
  CHECK(count_rows(r.output) == kvol::curve_pool(kvol::build_l_shape({3, 3}), 4).size());
}

TEST_CASE("kvol report") {
  RunConfig cfg = lshape_config("kvol", 4, 4);
  cfg.max_sq_len = 81;
  const RunResult r = run(cfg);
  const json j = json::parse(r.output);
  CHECK(j["kvol"]["decimal"].get<double>() >= 2.3333333);
  CHECK(j["kvol"]["num_sq"] == 49);
  CHECK(j["kvol"]["den_sq"] == 9);
  CHECK(j["bounds"]["estimate_ge_lower"] == true);
  CHECK(j["bounds"]["estimate_le_upper"] == true);
  CHECK(j["config"]["seed"] == 0);
  CHECK(j.contains("meta"));
  CHECK(j["lemmas"]["inter_e1"]["passed"] == true);
}

TEST_CASE("lemmas and certify exit codes") {
  RunConfig cfg = lshape_config("lemmas", 4, 4);
  cfg.max_sq_len = 64;
  CHECK(run(cfg).exit_code == 0);

  cfg = lshape_config("certify", 4, 4);
  cfg.max_sq_len = 100;
  cfg.trials = 10;
  cfg.seed = 3;
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["summary"]["pairs"] == 10);
  CHECK(j["summary"]["verified"] == 10);

  cfg.pair = std::make_pair(std::string("nope"), std::string("sc:1:0:0"));
  CHECK_THROWS_AS(run(cfg), UsageError);
  CHECK_THROWS_AS(run(lshape_config("certify", 4, 3)), UsageError);
}

TEST_CASE("sweep rows") {
  RunConfig cfg;
  cfg.subcommand = "sweep";
  cfg.n_from = 2;
  cfg.n_to = 4;
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  CHECK(count_rows(r.output) == 3);
  CHECK(r.output.find("n,estimate_decimal,estimate_num_sq,estimate_den_sq,lower_2p1n,upper_U,"
                      "pool_size,all_lemmas_pass\n") != std::string::npos);
  cfg.n_from = 5;
  cfg.n_to = 4;
  CHECK_THROWS_AS(run(cfg), UsageError);
}

TEST_CASE("sommes") {
  RunConfig cfg;
  cfg.subcommand = "sommes";
  cfg.trials = 500;
  cfg.seed = 42;
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 42);
}

TEST_CASE("determinism modulo meta") {
  RunConfig cfg = lshape_config("kvol", 3, 3);
  cfg.max_sq_len = 36;
  json a = json::parse(run(cfg).output);
  json b = json::parse(run(cfg).output);
  a.erase("meta");
  b.erase("meta");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("decimal formatting") {
  CHECK(decimal(2.5L) == "2.5");
  CHECK(decimal(7.0L / 3.0L) == "2.33333333333");
}

TEST_CASE("workers from the environment") {
  ::setenv("KVOL_WORKERS", "3", 1);
  CHECK(workers_from_env(1) == 3);
  ::setenv("KVOL_WORKERS", "zero", 1);
  CHECK_THROWS_AS(workers_from_env(1), UsageError);
  ::unsetenv("KVOL_WORKERS");
  CHECK(workers_from_env(2) == 2);
}
