// Acceptance suite: one pass/fail line per criterion, each with its stated
// tolerance and wall-clock budget. Exit code 0 only when every criterion
// holds. Run via ctest or directly:  ./acceptance [--config path]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hsbte/config.hpp"
#include "hsbte/csda.hpp"
#include "hsbte/pointset.hpp"
#include "hsbte/transport.hpp"
#include "hsbte/verify.hpp"

#ifndef HSBTE_CLI_PATH
#define HSBTE_CLI_PATH ""
#endif

namespace {

using hsbte::verify::Check;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<std::vector<Check>()> run;
};

bool run_criterion(int index, const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Check> checks;
  bool threw = false;
  std::string what;
  try {
    checks = c.run();
  } catch (const std::exception& e) {
    threw = true;
    what = e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  bool pass = !threw && secs < c.budget_seconds;
  double worst = 0.0;
  for (const auto& ch : checks) {
    pass = pass && ch.pass;
    worst = std::max(worst, ch.tolerance > 0.0 ? ch.residual / ch.tolerance
                                               : ch.residual);
  }
  std::printf("[%s] criterion %2d: %-52s  %6.2fs/%-5.0fs  worst %.3e\n",
              pass ? "PASS" : "FAIL", index, c.name.c_str(), secs,
              c.budget_seconds, worst);
  if (threw) std::printf("        exception: %s\n", what.c_str());
  if (!pass)
    for (const auto& ch : checks)
      if (!ch.pass)
        std::printf("        failing: %s (residual %.3e, tol %.1e)\n",
                    ch.name.c_str(), ch.residual, ch.tolerance);
  return pass;
}

std::vector<Check> pick(const std::vector<Check>& all,
                        const std::vector<std::string>& needles) {
  std::vector<Check> out;
  for (const auto& c : all)
    for (const auto& n : needles)
      if (c.name.find(n) != std::string::npos) out.push_back(c);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Check> determinism_checks() {
  const std::string cli = HSBTE_CLI_PATH;
  std::vector<Check> out;
  if (cli.empty()) {
    out.push_back({"cli path available", 1.0, 0.0, false});
    return out;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hsbte_acceptance";
  fs::create_directories(dir);
  const auto pts = (dir / "pts.txt").string();
  {
    std::ofstream p(pts);
    p << "0.1 0.2 0.1 0 0 1 2.0\n0.3 0.1 -0.2 1 1 0 2.5\n"
      << "-0.2 0.4 0.1 0 1 0 3.1\n0.0 0.0 0.0 0 0 -1 1.7\n";
  }
  auto sh = [&](const std::string& cmd) { return std::system(cmd.c_str()); };
  const auto c1 = (dir / "c1.csv").string(), c2 = (dir / "c2.csv").string();
  const auto j1 = (dir / "j1.json").string(), j2 = (dir / "j2.json").string();
  int rc = 0;
  rc |= sh(cli + " converge --out " + c1 + " > /dev/null");
  rc |= sh(cli + " converge --out " + c2 + " > /dev/null");
  rc |= sh(cli + " apply --points " + pts + " --form refined --threads 1 --out " +
           j1 + " > /dev/null");
  rc |= sh(cli + " apply --points " + pts + " --form refined --threads 4 --out " +
           j2 + " > /dev/null");
  out.push_back({"cli invocations succeed", rc == 0 ? 0.0 : 1.0, 0.0, rc == 0});
  const bool csv_same = slurp(c1) == slurp(c2) && !slurp(c1).empty();
  const bool json_same = slurp(j1) == slurp(j2) && !slurp(j1).empty();
  out.push_back({"CSV byte-identical across runs", csv_same ? 0.0 : 1.0, 0.0,
                 csv_same});
  out.push_back({"JSON byte-identical across thread counts",
                 json_same ? 0.0 : 1.0, 0.0, json_same});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  hsbte::cfg::RunConfig config;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config")
      config = hsbte::cfg::load_config(argv[i + 1]);

  using hsbte::verify::run_suite;

  // Suites are computed lazily per criterion so each measures its own time.
  std::vector<Criterion> criteria = {
      {"finite-part closed forms (1e-10, 200 intervals)", 1.0,
       [&] {
         return pick(run_suite("finite-part", config).checks,
                     {"pf1(1)", "pf2(1)"});
       }},
      {"derivative identity vs finite differences (1e-6)", 5.0,
       [&] {
         return pick(run_suite("finite-part", config).checks,
                     {"derivative identity"});
       }},
      {"Fubini swap (1e-8) and pf2->pf1 lowering (1e-7)", 10.0,
       [&] {
         return pick(run_suite("finite-part", config).checks,
                     {"Fubini-type swap", "lowering identity"});
       }},
      {"sphere frames, exp/log, Laplace-Beltrami", 10.0,
       [&] {
         return pick(run_suite("geometry", config).checks,
                     {"frame orthonormality", "exp/log", "Laplace-Beltrami"});
       }},
      {"circle/sphere swap residual (1e-6, 10 pairs)", 30.0,
       [&] {
         return pick(run_suite("geometry", config).checks, {"swap residual"});
       }},
      {"triple-form equivalence of T (1e-5, 50 points)", 120.0,
       [&] {
         return pick(run_suite("transport", config).checks, {"triple-form"});
       }},
      {"adjoint pairings K_r, A1, A2, T_kappa (1e-4)", 120.0,
       [&] {
         auto out = pick(run_suite("collision", config).checks,
                         {"K_r adjoint pairing"});
         auto tr_checks = pick(run_suite("transport", config).checks,
                               {"adjoint pairing A1", "adjoint pairing A2"});
         out.insert(out.end(), tr_checks.begin(), tr_checks.end());
         auto cs = pick(run_suite("csda", config).checks,
                        {"adjoint pairing for T_kappa"});
         out.insert(out.end(), cs.begin(), cs.end());
         return out;
       }},
      {"variational identity and B2 lowering (1e-4)", 300.0,
       [&] {
         std::vector<Check> out;
         auto tctx = config.transport_context();
         // every built-in trial field against every built-in test field
         std::vector<hsbte::fld::TestField> trials, tests;
         for (auto& f :
              hsbte::fld::builtin_fields(config.space.E0, config.space.Em)) {
           if (f.vanishing == hsbte::fld::TestField::Vanishing::kAtEm)
             trials.push_back(f);
           else if (f.vanishing == hsbte::fld::TestField::Vanishing::kAtE0)
             tests.push_back(f);
         }
         const auto rep =
             hsbte::tr::variational_residual_all(trials, tests, tctx);
         const double worst = rep.scaled_residual;
         out.push_back({"residual <= 1e-4 (1 + |T psi||v|), " +
                            std::to_string(trials.size() * tests.size()) +
                            " pairs (worst: " + rep.worst_test + ")",
                        worst, 1e-4, worst <= 1e-4});
         const double E0 = config.space.E0, Em = config.space.Em;
         double b2worst = 0.0;
         const std::vector<std::pair<std::string, std::string>> pairs = {
             {"a0*Y00*cm1", "a0*Y00*cp1"},
             {"a1*Y10*cm1", "a1*Y10*cp1"},
             {"a2*Y22*cm2", "a2*Y22*cp2"},
             {"a0*Y10*cx", "a0*Y10*cp2"},
             {"a2*Y00*cm2", "a0*Y00*cp2"},
         };
         for (const auto& [pid, vid] : pairs) {
           const auto psi = hsbte::fld::field_by_id(pid, E0, Em);
           const auto v = hsbte::fld::field_by_id(vid, E0, Em);
           const double hyper = hsbte::tr::bilinear_B2(
               psi, v, tctx, hsbte::tr::B2Variant::kHyper);
           const double lowered = hsbte::tr::bilinear_B2(
               psi, v, tctx, hsbte::tr::B2Variant::kLowered);
           b2worst = std::max(
               b2worst, std::abs(hyper - lowered) / (1.0 + std::abs(hyper)));
         }
         out.push_back({"B2 hyper vs lowered <= 1e-4, 5 pairs", b2worst, 1e-4,
                        b2worst <= 1e-4});
         return out;
       }},
      {"CSDA rate >= 0.45 and zero-kernel exactness", 300.0,
       [&] {
         return pick(run_suite("csda", config).checks,
                     {"kappa sweep slope", "truncation error vanishes"});
       }},
      {"mu identities (exact diagonal, partials 1e-8)", 1.0,
       [&] {
         return pick(run_suite("geometry", config).checks,
                     {"mu frozen", "mu partial-sum", "mu partials"});
       }},
      {"Green identity residual (1e-6)", 10.0,
       [&] {
         std::vector<Check> out;
         const double E0 = config.space.E0, Em = config.space.Em;
         const auto space = config.collision_context().space;
         const auto one = hsbte::fld::uniform_field(1.0);
         const auto x1 = hsbte::fld::field_by_id("a1*Y00*cm1", E0, Em);
         const auto s1 = hsbte::fld::field_by_id("a2*Y10*cm1", E0, Em);
         const auto s2 = hsbte::fld::field_by_id("a1*Y22*cp1", E0, Em);
         const double r1 = hsbte::ps::green_residual(one, one, space);
         const double r2 = hsbte::ps::green_residual(x1, one, space);
         const double r3 = hsbte::ps::green_residual(s1, s2, space);
         out.push_back({"constants", r1, 1e-10, r1 <= 1e-10});
         out.push_back({"x1 pair", r2, 1e-8, r2 <= 1e-8});
         out.push_back({"smooth pair", r3, 1e-6, r3 <= 1e-6});
         return out;
       }},
      {"deterministic CSV/JSON across runs and threads", 60.0,
       [&] { return determinism_checks(); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i)
    all = run_criterion(static_cast<int>(i) + 1, criteria[i]) && all;
  std::printf("%s\n", all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all ? 0 : 1;
}
