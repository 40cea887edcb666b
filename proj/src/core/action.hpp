#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "core/current.hpp"
#include "core/quadrature.hpp"

namespace softqed {

struct ActionOptions {
    /// Charge e; the action scales as e^2.
    double charge = 1.0;
    /// eta ladder in units of eta_scale.
    std::vector<double> eta_factors{1e-1, 3e-2, 1e-2};
    /// Zero means (max Euclidean edge length / 2)^2.
    double eta_scale = 0.0;
    bool exclude_self = true;
    /// Extrapolation accepted when error <= rel_tolerance |value| + abs_tolerance.
    double rel_tolerance = 1e-3;
    double abs_tolerance = 1e-12;
    AdaptiveOptions quadrature{32, 16, 1e-12, 1e-10, 4096};
};

/// z_e.z_f int_0^1 int_0^1 dtau dsigma delta_eta((x_e(tau) - x_f(sigma))^2),
/// delta_eta(s) = (eta/pi)/(s^2 + eta^2).
Estimated<double> edge_pair_integral(const LoopPath& loop, std::size_t e, std::size_t f, double eta,
                                     const AdaptiveOptions& quadrature = ActionOptions{}.quadrature);

/// -e^2/(8 pi) times the sum of edge pair integrals at fixed eta.
double classical_action(const LoopPath& loop, double eta, bool exclude_self, double charge = 1.0,
                        const AdaptiveOptions& quadrature = ActionOptions{}.quadrature);

struct SelfPairReport {
    std::size_t edge = 0;
    /// Integral at each eta of the ladder (without the -e^2/(8 pi) prefactor).
    std::vector<double> values;
    /// Grows without bound as eta -> 0.
    bool divergent = false;
};

struct ActionResult {
    /// Extrapolated eta -> 0 action.
    double value = 0.0;
    double error = 0.0;
    std::vector<double> etas;
    /// Action at each eta.
    std::vector<double> ladder;
    std::vector<SelfPairReport> self_pairs;
    bool self_included = false;
    bool converged = false;
    /// Why the extrapolation was refused; empty when converged.
    std::string diagnostic;
};

/// Same as classical_action_extrapolated but reports a refused extrapolation
/// through `converged` and `diagnostic` instead of throwing.
ActionResult evaluate_action(const LoopPath& loop, const ActionOptions& opts = {});

/// Extrapolated action. Self-edge pairs are always evaluated and reported;
/// when they are included and diverge, when the loop has null corners, or
/// when the extrapolation error exceeds the tolerance, NonConvergent is
/// thrown. Zero charge gives exactly zero.
ActionResult classical_action_extrapolated(const LoopPath& loop, const ActionOptions& opts = {});

double default_eta_scale(const LoopPath& loop);

/// Vertices whose corner cone {s z_in + t z_out : s, t >= 0} contains a
/// light-like direction. Each one makes the cross-edge action diverge
/// logarithmically as eta -> 0.
std::vector<std::size_t> null_corners(const LoopPath& loop);

}  // namespace softqed
