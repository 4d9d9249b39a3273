#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsbte/config.hpp"

namespace hsbte::verify {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass = false;
};

/// Suite ids accepted by the CLI: finite-part, geometry, collision,
/// transport, variational, csda.
const std::vector<std::string>& suite_names();

/// Runs one suite. tol_override, when set, replaces every check tolerance.
Suite run_suite(const std::string& name, const cfg::RunConfig& config,
                std::optional<double> tol_override = {});

/// Runs one named suite or all of them for "all".
std::vector<Suite> run_suites(const std::string& name,
                              const cfg::RunConfig& config,
                              std::optional<double> tol_override = {});

}  // namespace hsbte::verify
