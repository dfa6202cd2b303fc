#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracyam/quadrature.hpp"
#include "fracyam/report.hpp"

namespace fracyam {

struct RunConfig {
  bool fast = false;
  std::uint64_t seed = 42;
  bool plots = false;
  std::string plot_dir = ".";
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

/// Deterministic report list for one suite ("all" concatenates every suite in
/// a fixed order). Throws std::invalid_argument for unknown names.
std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const RunConfig& config);

/// Named integrands registered for the CLI `integrate` subcommand.
std::vector<std::string> named_integrands();
IntegralResult run_named_integrand(const std::string& name, const RunConfig& config);

}  // namespace fracyam
