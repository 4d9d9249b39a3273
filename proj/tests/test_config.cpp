#include <doctest.h>

#include <stdexcept>

#include "hsbte/config.hpp"

using namespace hsbte;

TEST_CASE("default config round-trips through its own JSON dump") {
  const auto text = cfg::default_config_json();
  const auto parsed = cfg::parse_config(text);
  const cfg::RunConfig def;
  CHECK(parsed.space.radius == def.space.radius);
  CHECK(parsed.space.Em == def.space.Em);
  CHECK(parsed.kappa_sweep == def.kappa_sweep);
  CHECK(parsed.trial_fields == def.trial_fields);
  CHECK(parsed.pf.panel_count == def.pf.panel_count);
}

TEST_CASE("partial configs override selectively") {
  const auto c = cfg::parse_config(R"({
    "phase_space": {"Em": 6.0},
    "cross_sections": {"c2": 0.0},
    "kappa": 1.5
  })");
  CHECK(c.space.Em == 6.0);
  CHECK(c.space.E0 == 1.0);
  CHECK(c.xs_params.c2 == 0.0);
  CHECK(c.kappa == 1.5);
}

TEST_CASE("malformed configs are rejected with context") {
  CHECK_THROWS_AS(cfg::parse_config("{ not json"), std::runtime_error);
  CHECK_THROWS_AS(cfg::parse_config(R"({"phase_space": {"E0": -1.0}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(cfg::parse_config(R"({"kappa": 0.5})"), std::runtime_error);
  CHECK_THROWS_AS(
      cfg::parse_config(R"({"phase_space": {"sphere": [4]}})"),
      std::runtime_error);
}

TEST_CASE("contexts derive from the config") {
  cfg::RunConfig c;
  c.xs_params.lambda = -1.0;
  CHECK_THROWS_AS(c.collision_context(), std::invalid_argument);
  cfg::RunConfig ok;
  const auto ctx = ok.collision_context();
  CHECK(ctx.space.Em == ok.space.Em);
  CHECK(ctx.circle_nodes == ok.circle_nodes);
  CHECK(ok.trial_battery().size() == ok.trial_fields.size());
}
