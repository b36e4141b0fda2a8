#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "nvdressed/config.hpp"
#include "nvdressed/csv.hpp"
#include "nvdressed/errors.hpp"

using namespace nvdressed;

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(R"({
    "constants": {"A_par_MHz": -2.14, "Q_MHz": -5.01},
    "fields": {"B_mT": [1.0, 2.0, 0.1], "Pi_Vcm": [10.0, -20.0, 0.0]}
  })");
  CHECK(cfg.constants.a_par == -2.14);
  CHECK(cfg.constants.quadrupole == -5.01);
  CHECK(cfg.constants.d_gs == 2870.0);
  CHECK(cfg.fields.b_par == 0.1);
  CHECK(cfg.fields.pi_y == -20.0);

  CHECK_THROWS_AS(parse_config(R"({"constant": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"constants": {"A_par": -2.1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"fields": {"B_mT": [1, 2]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"fields": {"B_mT": [1, 2, "x"]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"constants": {"D_gs_MHz": -1}})"), ConfigError);
}

TEST_CASE("config round trip and environment fallback") {
  RunConfig a;
  a.fields = field_preset("supplementary");
  a.constants.a_perp = -2.63;
  const RunConfig b = parse_config(config_to_json(a));
  CHECK(b.constants.a_perp == a.constants.a_perp);
  CHECK(b.fields.b_x == a.fields.b_x);
  CHECK(b.fields.pi_x == a.fields.pi_x);

  ::unsetenv(kConfigEnvVar);
  CHECK_FALSE(resolve_config_path(std::nullopt).has_value());
  ::setenv(kConfigEnvVar, "/tmp/from_env.json", 1);
  CHECK(resolve_config_path(std::nullopt).value() == "/tmp/from_env.json");
  CHECK(resolve_config_path(std::string("mine.json")).value() == "mine.json");
  ::unsetenv(kConfigEnvVar);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("CSV round trip keeps every bit") {
  CsvTable t;
  t.header = {"tau_us", "signal"};
  t.columns = {{0.0, 0.1, 1.0 / 3.0}, {-1e-300, 2.0 / 7.0, 6.02214076e23}};
  const CsvTable back = parse_csv(format_csv(t));
  CHECK(back.header == t.header);
  CHECK(back.columns == t.columns);
  CHECK(back.column("signal")[1] == 2.0 / 7.0);
  CHECK_THROWS_AS(back.column("nope"), std::out_of_range);
}

TEST_CASE("CSV reader tolerates spaces and rejects garbage") {
  const CsvTable t = parse_csv("B_par_mT, D_Iz_0\n 0.1 , 0.5\n\n0.2,0.25\n");
  CHECK(t.header[1] == "D_Iz_0");
  CHECK(t.rows() == 2);
  CHECK(t.column("B_par_mT")[1] == 0.2);
  CHECK_THROWS(parse_csv("a,b\n1,2,3\n"));
  CHECK_THROWS(parse_csv("a,b\n1,x\n"));
  CHECK_THROWS(parse_csv(""));
  CHECK(format_double(0.1) == "0.10000000000000001");
}
