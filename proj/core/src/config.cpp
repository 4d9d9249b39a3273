#include "hsbte/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hsbte::cfg {

using nlohmann::json;

coll::CollisionContext RunConfig::collision_context() const {
  coll::CollisionContext ctx;
  ctx.xs = xs::builtin_xs(family, xs_params);
  ctx.space = space;
  ctx.space.validate();
  ctx.circle_nodes = circle_nodes;
  ctx.pf = pf;
  ctx.kr_energy_panels = kr_energy_panels;
  ctx.kr_energy_nodes = kr_energy_nodes;
  ctx.fd_step_E = fd_step_E;
  return ctx;
}

tr::TransportContext RunConfig::transport_context() const {
  tr::TransportContext t;
  t.coll = collision_context();
  t.include_gamma_plus = include_gamma_plus;
  return t;
}

csda::KappaConfig RunConfig::kappa_config() const {
  csda::KappaConfig k;
  k.kappa = kappa;
  k.sweep = kappa_sweep;
  k.validate();
  return k;
}

std::vector<fld::TestField> RunConfig::trial_battery() const {
  std::vector<fld::TestField> out;
  for (const auto& id : trial_fields)
    out.push_back(fld::field_by_id(id, space.E0, space.Em));
  return out;
}

std::vector<fld::TestField> RunConfig::test_battery() const {
  std::vector<fld::TestField> out;
  for (const auto& id : test_fields)
    out.push_back(fld::field_by_id(id, space.E0, space.Em));
  return out;
}

namespace {

template <typename T>
void maybe(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

void parse_phase_space(const json& j, ps::PhaseSpace& s) {
  maybe(j, "radius", s.radius);
  maybe(j, "E0", s.E0);
  maybe(j, "Em", s.Em);
  maybe(j, "n_radial", s.n_radial);
  if (j.contains("sphere")) {
    const auto v = j.at("sphere").get<std::vector<int>>();
    if (v.size() != 2)
      throw std::runtime_error("config: phase_space.sphere wants [n_polar, n_azimuth]");
    s.sphere = {v[0], v[1]};
  }
  if (j.contains("surface")) {
    const auto v = j.at("surface").get<std::vector<int>>();
    if (v.size() != 2)
      throw std::runtime_error("config: phase_space.surface wants [n_polar, n_azimuth]");
    s.surface = {v[0], v[1]};
  }
  maybe(j, "energy_panels_per_half", s.energy_panels_per_half);
  maybe(j, "energy_nodes", s.energy_nodes);
  maybe(j, "trace_polar", s.trace_polar);
  maybe(j, "trace_azimuth", s.trace_azimuth);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: JSON parse error: ") +
                             e.what());
  }
  RunConfig c;
  if (j.contains("phase_space")) parse_phase_space(j.at("phase_space"), c.space);
  if (j.contains("cross_sections")) {
    const auto& x = j.at("cross_sections");
    maybe(x, "family", c.family);
    maybe(x, "c0", c.xs_params.c0);
    maybe(x, "c1", c.xs_params.c1);
    maybe(x, "c2", c.xs_params.c2);
    maybe(x, "beta", c.xs_params.beta);
    maybe(x, "lambda", c.xs_params.lambda);
    maybe(x, "Sigma", c.xs_params.Sigma);
    maybe(x, "M1", c.xs_params.M1);
    maybe(x, "M2", c.xs_params.M2);
  }
  if (j.contains("collision")) {
    const auto& k = j.at("collision");
    maybe(k, "circle_nodes", c.circle_nodes);
    maybe(k, "pf_panels", c.pf.panel_count);
    maybe(k, "pf_nodes", c.pf.nodes_per_panel);
    maybe(k, "pf_grading", c.pf.endpoint_grading);
    maybe(k, "sqrt_substitution", c.pf.sqrt_substitution);
    maybe(k, "kr_energy_panels", c.kr_energy_panels);
    maybe(k, "kr_energy_nodes", c.kr_energy_nodes);
    maybe(k, "fd_step_E", c.fd_step_E);
  }
  if (j.contains("fields")) {
    const auto& f = j.at("fields");
    maybe(f, "trial", c.trial_fields);
    maybe(f, "test", c.test_fields);
  }
  maybe(j, "include_gamma_plus", c.include_gamma_plus);
  maybe(j, "kappa", c.kappa);
  maybe(j, "kappa_sweep", c.kappa_sweep);
  maybe(j, "sweep_grid_points", c.sweep_grid_points);
  maybe(j, "phase_points", c.phase_points);
  maybe(j, "seed", c.seed);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (t.contains("global") && !t.at("global").is_null())
      c.tol_override = t.at("global").get<double>();
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    maybe(o, "csv", c.output_csv);
    maybe(o, "json", c.output_json);
  }

  if (!(c.space.E0 > 0.0))
    throw std::runtime_error("config: E0 must be positive");
  if (!(c.space.Em > c.space.E0))
    throw std::runtime_error("config: Em must exceed E0");
  for (double k : c.kappa_sweep)
    if (!(k > 1.0)) throw std::runtime_error("config: kappa values must be > 1");
  if (!(c.kappa > 1.0)) throw std::runtime_error("config: kappa must be > 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string default_config_json() {
  const RunConfig c;
  json j;
  j["phase_space"] = {{"radius", c.space.radius},
                      {"E0", c.space.E0},
                      {"Em", c.space.Em},
                      {"n_radial", c.space.n_radial},
                      {"sphere", {c.space.sphere.n_polar, c.space.sphere.n_azimuth}},
                      {"surface", {c.space.surface.n_polar, c.space.surface.n_azimuth}},
                      {"energy_panels_per_half", c.space.energy_panels_per_half},
                      {"energy_nodes", c.space.energy_nodes},
                      {"trace_polar", c.space.trace_polar},
                      {"trace_azimuth", c.space.trace_azimuth}};
  j["cross_sections"] = {{"family", c.family},         {"c0", c.xs_params.c0},
                         {"c1", c.xs_params.c1},       {"c2", c.xs_params.c2},
                         {"beta", c.xs_params.beta},   {"lambda", c.xs_params.lambda},
                         {"Sigma", c.xs_params.Sigma}, {"M1", c.xs_params.M1},
                         {"M2", c.xs_params.M2}};
  j["collision"] = {{"circle_nodes", c.circle_nodes},
                    {"pf_panels", c.pf.panel_count},
                    {"pf_nodes", c.pf.nodes_per_panel},
                    {"pf_grading", c.pf.endpoint_grading},
                    {"sqrt_substitution", c.pf.sqrt_substitution},
                    {"kr_energy_panels", c.kr_energy_panels},
                    {"kr_energy_nodes", c.kr_energy_nodes},
                    {"fd_step_E", c.fd_step_E}};
  j["fields"] = {{"trial", c.trial_fields}, {"test", c.test_fields}};
  j["include_gamma_plus"] = c.include_gamma_plus;
  j["kappa"] = c.kappa;
  j["kappa_sweep"] = c.kappa_sweep;
  j["sweep_grid_points"] = c.sweep_grid_points;
  j["phase_points"] = c.phase_points;
  j["seed"] = c.seed;
  j["tolerances"] = {{"global", nullptr}};
  j["output"] = {{"csv", c.output_csv}, {"json", c.output_json}};
  return j.dump(2);
}

}  // namespace hsbte::cfg
