#include "core/coherent.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace softqed {

CoherentStateData coherent_amplitudes(const LoopPath& loop, const PhotonModeGrid& grid) {
    CoherentStateData out;
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& k = grid.nodes()[i];
        const FourVector j = loop_current(loop, k);
        const double root_w = std::sqrt(grid.weights()[i]);
        const auto pols = grid.polarizations(i);
        for (int p = 0; p < 2; ++p) {
            const auto& eps = pols[static_cast<std::size_t>(p)];
            const complex ej = eps.x() * j[1] + eps.y() * j[2] + eps.z() * j[3];
            const complex alpha = root_w * ej;
            out.amplitudes.push_back({i, p, alpha});
            sum += std::norm(alpha);
        }
    }
    out.photon_number = sum;
    out.norm_factor = std::exp(-0.5 * sum);
    return out;
}

CoherentStateData coherent_state(const LoopPath& loop, const PhotonModeGrid& grid, const ActionOptions& action) {
    auto out = coherent_amplitudes(loop, grid);
    ActionOptions opts = action;
    opts.exclude_self = true;
    const auto phi = classical_action_extrapolated(loop, opts);
    out.phase = phi.value;
    out.phase_error = phi.error;
    return out;
}

double truncation_bound(complex alpha, std::size_t n_max) {
    const double n1 = static_cast<double>(n_max + 1);
    // |alpha|^(n+1) / sqrt((n+1)!) in logs
    const double a = std::abs(alpha);
    if (a == 0.0) return 0.0;
    return std::exp(n1 * std::log(a) - 0.5 * std::lgamma(n1 + 1.0));
}

Eigen::MatrixXcd displacement(complex alpha, std::size_t n_max) {
    const Eigen::Index d = static_cast<Eigen::Index>(n_max + 1);
    // alpha a^dagger - alpha* a = i H with H Hermitian
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index n = 0; n + 1 < d; ++n) {
        const double s = std::sqrt(static_cast<double>(n + 1));
        h(n + 1, n) = -complex(0.0, 1.0) * alpha * s;
        h(n, n + 1) = complex(0.0, 1.0) * std::conj(alpha) * s;
    }
    if (alpha == complex{}) return Eigen::MatrixXcd::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd phases = (complex(0.0, 1.0) * es.eigenvalues().cast<complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryReport truncated_U(std::span<const complex> amplitudes, std::size_t n_max, double phase,
                          const TruncationOptions& opts) {
    UnitaryReport out;
    const std::size_t per_mode = n_max + 1;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (dim > opts.max_dimension / per_mode) {
            throw Error(ErrorCode::InvalidArgument,
                        "truncated Fock space exceeds " + std::to_string(opts.max_dimension) + " dimensions");
        }
        dim *= per_mode;
    }
    out.dimension = dim;

    double norm2 = 0.0;
    for (auto a : amplitudes) {
        out.truncation_bound += truncation_bound(a, n_max);
        norm2 += std::norm(a);
    }
    if (out.truncation_bound > opts.tolerance) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "truncation bound " + std::to_string(out.truncation_bound) + " exceeds tolerance at n_max " +
                        std::to_string(n_max));
    }

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
    for (auto a : amplitudes) {
        const Eigen::MatrixXcd d = displacement(a, n_max);
        Eigen::MatrixXcd next(u.rows() * d.rows(), u.cols() * d.cols());
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            for (Eigen::Index j = 0; j < u.cols(); ++j) {
                next.block(i * d.rows(), j * d.cols(), d.rows(), d.cols()) = u(i, j) * d;
            }
        }
        u = std::move(next);
    }
    u *= std::exp(complex(0.0, phase));

    const auto d = static_cast<Eigen::Index>(dim);
    out.unitarity_residual = (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    out.vacuum_norm_deviation = std::abs(u.col(0).norm() - 1.0);
    out.vacuum_overlap = u(0, 0);
    out.expected_overlap = std::exp(complex(-0.5 * norm2, phase));
    out.overlap_deviation = std::abs(out.vacuum_overlap - out.expected_overlap);
    out.u = std::move(u);
    return out;
}

}  // namespace softqed
