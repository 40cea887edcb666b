#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/action.hpp"
#include "core/current.hpp"

namespace softqed {

struct ModeAmplitude {
    std::size_t node = 0;
    /// 0 or 1, see PhotonModeGrid::polarizations.
    int polarization = 0;
    /// sqrt(weight) eps.J at the node.
    complex alpha;
};

struct CoherentStateData {
    /// <J* . J> over transverse components.
    double photon_number = 0.0;
    /// exp(-photon_number / 2).
    double norm_factor = 1.0;
    /// Cross-edge classical action.
    double phase = 0.0;
    double phase_error = 0.0;
    std::vector<ModeAmplitude> amplitudes;
};

/// J and photon_number carry no charge; only the phase scales (as e^2).
CoherentStateData coherent_state(const LoopPath& loop, const PhotonModeGrid& grid, const ActionOptions& action = {});

/// Photon number and norm factor only (no action).
CoherentStateData coherent_amplitudes(const LoopPath& loop, const PhotonModeGrid& grid);

struct TruncationOptions {
    /// Largest Fock-space dimension (n_max+1)^modes.
    std::size_t max_dimension = 4096;
    /// Accepted truncation bound.
    double tolerance = 1e-8;
};

struct UnitaryReport {
    std::size_t dimension = 0;
    /// max |U^dagger U - I|.
    double unitarity_residual = 0.0;
    /// | ||U|vac>|| - 1 |.
    double vacuum_norm_deviation = 0.0;
    complex vacuum_overlap;
    /// exp(-sum |alpha|^2 / 2 + i phase).
    complex expected_overlap;
    double overlap_deviation = 0.0;
    /// sum over modes of |alpha|^(n_max+1) / sqrt((n_max+1)!).
    double truncation_bound = 0.0;
    Eigen::MatrixXcd u;
};

/// Tail norm bound of a coherent state beyond occupation n_max.
double truncation_bound(complex alpha, std::size_t n_max);

/// exp(alpha a^dagger - alpha* a) on the Fock space truncated at n_max.
Eigen::MatrixXcd displacement(complex alpha, std::size_t n_max);

/// Tensor product of per-mode displacements times e^{i phase}. Throws
/// TruncationInsufficient when the declared bound exceeds the tolerance.
UnitaryReport truncated_U(std::span<const complex> amplitudes, std::size_t n_max, double phase,
                          const TruncationOptions& opts = {});

}  // namespace softqed
