#pragma once

#include <string>

#include "harness/config.hpp"

namespace softqed::harness {

/// Output of one subcommand: the document bytes and the verdict that decides
/// the exit status.
struct CommandOutput {
    std::string text;
    bool ok = true;
};

CommandOutput run_verify(const SuiteConfig& config);
/// CSV: k^0..k^3, Re/Im J^0..J^3, gauge residual |k.J| / |J|_1, one row per grid node.
CommandOutput run_current(const SuiteConfig& config);
/// JSON: pole terms, completeness residual and, with classical photons, the theta table.
CommandOutput run_decompose(const SuiteConfig& config);
/// CSV: k_min, photon_number, norm_factor, phi_cross for each k_min of the ladder.
CommandOutput run_coherent(const SuiteConfig& config);
/// JSON: eta ladder, extrapolated action and self-pair diagnostics; ok iff converged.
CommandOutput run_action(const SuiteConfig& config);

}  // namespace softqed::harness
