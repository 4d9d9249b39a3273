// Command-line front end: verification suites, operator applications,
// bilinear assemblies and kappa-convergence sweeps with CSV/JSON reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hsbte/config.hpp"
#include "hsbte/csda.hpp"
#include "hsbte/transport.hpp"
#include "hsbte/verify.hpp"

namespace {

using nlohmann::json;
using hsbte::cfg::RunConfig;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

RunConfig load_or_default(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return hsbte::cfg::load_config(path);
}

// Deterministic parallel map: every slot is computed independently and
// written in place, so the gathered output is byte-identical for any
// thread count.
template <typename F>
std::vector<double> parallel_map(std::size_t n, int threads, F&& f) {
  std::vector<double> out(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

int cmd_verify(const std::string& config_path, const std::string& suite,
               std::optional<double> tol) {
  RunConfig config = load_or_default(config_path);
  if (!tol) tol = config.tol_override;
  const auto& names = hsbte::verify::suite_names();
  if (suite != "all" &&
      std::find(names.begin(), names.end(), suite) == names.end()) {
    std::fprintf(stderr,
                 "unknown suite '%s'; expected one of: all finite-part "
                 "geometry collision transport variational csda\n",
                 suite.c_str());
    return kExitUsage;
  }
  bool all_pass = true;
  for (const auto& s : hsbte::verify::run_suites(suite, config, tol)) {
    std::printf("suite %-12s %s  (%.2fs)\n", s.name.c_str(),
                s.pass ? "PASS" : "FAIL", s.seconds);
    for (const auto& c : s.checks)
      std::printf("  [%s] %-58s residual %.3e  tol %.1e\n",
                  c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual,
                  c.tolerance);
    all_pass = all_pass && s.pass;
  }
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_converge(const std::string& config_path, std::string out_path,
                 const std::string& kappa_list, const std::string& field_id) {
  RunConfig config = load_or_default(config_path);
  if (out_path.empty()) out_path = config.output_csv;
  if (!kappa_list.empty()) {
    config.kappa_sweep.clear();
    std::stringstream ss(kappa_list);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) config.kappa_sweep.push_back(std::stod(tok));
  }
  if (config.kappa_sweep.size() < 3) {
    std::fprintf(stderr, "converge: need at least 3 kappa values\n");
    return kExitUsage;
  }
  const std::string id =
      field_id.empty() ? config.trial_fields.at(0) : field_id;
  const auto psi =
      hsbte::fld::field_by_id(id, config.space.E0, config.space.Em);
  auto ctx = config.collision_context();
  auto kcfg = config.kappa_config();
  const auto rep = hsbte::csda::convergence_sweep(
      psi, ctx, kcfg, config.sweep_grid_points, config.seed);

  std::ostringstream csv;
  csv << "kappa,sup_error,l2_error\n";
  char buf[128];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.kappa, r.sup_error,
                  r.l2_error);
    csv << buf;
  }
  std::snprintf(buf, sizeof buf, "# slope=%.17g\n", rep.fitted_slope);
  csv << buf;
  write_text(out_path, csv.str());
  std::printf("slope %.6f  (field %s, %zu kappas, %.2fs)\n", rep.fitted_slope,
              id.c_str(), rep.rows.size(), rep.runtime_seconds);
  return kExitPass;
}

struct PointRow {
  hsbte::sph::Vec3 x;
  hsbte::sph::Vec3 omega;
  double E;
};

std::vector<PointRow> read_points(const std::string& path, double radius) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file '" + path + "'");
  std::vector<PointRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double v[7];
    int got = 0;
    while (got < 7 && (ss >> v[got])) ++got;
    if (got == 0) continue;  // blank line
    if (got != 7)
      throw std::runtime_error("points file row " + std::to_string(lineno) +
                               ": expected 7 numbers (x1 x2 x3 o1 o2 o3 E)");
    PointRow p{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, v[6]};
    if (p.x.norm() > radius)
      throw std::runtime_error("points file row " + std::to_string(lineno) +
                               ": |x| exceeds the domain radius");
    p.omega.normalize();
    rows.push_back(p);
  }
  return rows;
}

int cmd_apply(const std::string& config_path, const std::string& form,
              const std::string& field_id, const std::string& points_path,
              std::string out_path, int threads) {
  RunConfig config = load_or_default(config_path);
  if (out_path.empty()) out_path = config.output_json;
  const std::string id =
      field_id.empty() ? config.trial_fields.at(0) : field_id;
  const auto psi =
      hsbte::fld::field_by_id(id, config.space.E0, config.space.Em);
  const auto points = read_points(points_path, config.space.radius);
  auto tctx = config.transport_context();
  auto ctx = tctx.coll;

  std::function<double(const PointRow&)> op;
  if (form == "csda") {
    const double kappa = config.kappa;
    op = [&, kappa](const PointRow& p) {
      return hsbte::csda::csda_apply(psi, p.x, p.omega, p.E, kappa, ctx);
    };
  } else {
    const auto f = hsbte::tr::form_from_string(form);
    op = [&, f](const PointRow& p) {
      return hsbte::tr::transport_apply(psi, p.x, p.omega, p.E, tctx, f);
    };
  }

  const auto values = parallel_map(points.size(), threads,
                                   [&](std::size_t i) { return op(points[i]); });

  json arr = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    json pt;
    pt["x"] = {points[i].x[0], points[i].x[1], points[i].x[2]};
    pt["omega"] = {points[i].omega[0], points[i].omega[1], points[i].omega[2]};
    pt["E"] = points[i].E;
    arr.push_back({{"point", pt}, {"value", values[i]}});
  }
  write_text(out_path, arr.dump(2) + "\n");
  return kExitPass;
}

int cmd_bilinear(const std::string& config_path, const std::string& form,
                 const std::vector<std::string>& field_ids,
                 std::string out_path) {
  RunConfig config = load_or_default(config_path);
  if (out_path.empty()) out_path = config.output_json;
  auto tctx = config.transport_context();
  const double E0 = config.space.E0, Em = config.space.Em;
  json result;
  result["form"] = form;

  if (form == "residual") {
    if (field_ids.size() != 1) {
      std::fprintf(stderr, "bilinear residual wants exactly one --field\n");
      return kExitUsage;
    }
    const auto psi = hsbte::fld::field_by_id(field_ids[0], E0, Em);
    const auto rep =
        hsbte::tr::variational_residual(psi, config.test_battery(), tctx);
    result["B0"] = rep.B0;
    result["B1"] = rep.B1;
    result["B2"] = rep.B2;
    result["B_total"] = rep.B_total;
    result["F"] = rep.F;
    result["residual"] = rep.residual;
    result["worst_test"] = rep.worst_test;
  } else {
    if (field_ids.size() != 2) {
      std::fprintf(stderr,
                   "bilinear %s wants two --field arguments (psi then v)\n",
                   form.c_str());
      return kExitUsage;
    }
    const auto psi = hsbte::fld::field_by_id(field_ids[0], E0, Em);
    const auto v = hsbte::fld::field_by_id(field_ids[1], E0, Em);
    double value = 0.0;
    if (form == "B0")
      value = hsbte::tr::bilinear_B0(psi, v, tctx);
    else if (form == "B1")
      value = hsbte::tr::bilinear_B1(psi, v, tctx);
    else if (form == "B2")
      value = hsbte::tr::bilinear_B2(psi, v, tctx, hsbte::tr::B2Variant::kHyper);
    else if (form == "B2low")
      value =
          hsbte::tr::bilinear_B2(psi, v, tctx, hsbte::tr::B2Variant::kLowered);
    else if (form == "B")
      value = hsbte::tr::bilinear_B(psi, v, tctx);
    else {
      std::fprintf(stderr, "unknown bilinear form '%s'\n", form.c_str());
      return kExitUsage;
    }
    result["value"] = value;
  }
  write_text(out_path, result.dump(2) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hsbte: hyper-singular Boltzmann transport operator toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, suite = "all", kappa_list, points_path;
  std::string form;
  std::vector<std::string> field_ids;
  std::optional<double> tol;
  int threads = 1;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--config", config_path, "JSON config file");
  verify->add_option("--suite", suite,
                     "finite-part|geometry|collision|transport|variational|"
                     "csda|all");
  double tol_value = -1.0;
  auto* tol_opt =
      verify->add_option("--tol", tol_value, "override every tolerance");

  auto* converge =
      app.add_subcommand("converge", "kappa-convergence sweep to CSV");
  converge->add_option("--config", config_path, "JSON config file");
  converge->add_option("--out", out_path, "CSV output path ('-' = stdout)");
  converge->add_option("--kappa-list", kappa_list,
                       "comma-separated kappa values (> 1)");
  std::string field_single;
  converge->add_option("--field", field_single, "field id for the sweep");

  auto* apply = app.add_subcommand("apply", "apply an operator to points");
  apply->add_option("--config", config_path, "JSON config file");
  apply->add_option("--form", form, "strong|pseudo|refined|csda")
      ->default_val("refined");
  apply->add_option("--field", field_single, "field id");
  apply->add_option("--points", points_path, "points file (x1 x2 x3 o1 o2 o3 E)")
      ->required();
  apply->add_option("--out", out_path, "JSON output path ('-' = stdout)");
  apply->add_option("--threads", threads, "worker threads");

  auto* bilinear =
      app.add_subcommand("bilinear", "assemble a bilinear form value");
  bilinear->add_option("--config", config_path, "JSON config file");
  bilinear->add_option("--form", form, "B0|B1|B2|B2low|B|residual")
      ->required();
  bilinear->add_option("--field", field_ids,
                       "field ids: psi [v] (residual takes psi only)");
  bilinear->add_option("--out", out_path, "JSON output path ('-' = stdout)");

  auto* dump = app.add_subcommand("default-config",
                                  "print the default JSON configuration");
  dump->add_option("--out", out_path, "output path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (tol_opt->count() > 0) tol = tol_value;
      return cmd_verify(config_path, suite, tol);
    }
    if (converge->parsed())
      return cmd_converge(config_path, out_path, kappa_list, field_single);
    if (apply->parsed())
      return cmd_apply(config_path, form, field_single, points_path, out_path,
                       threads);
    if (bilinear->parsed())
      return cmd_bilinear(config_path, form, field_ids, out_path);
    if (dump->parsed()) {
      write_text(out_path, hsbte::cfg::default_config_json() + "\n");
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
