#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "core/chain.hpp"
#include "core/quadrature.hpp"

namespace softqed {

enum class DerivativeMode { Analytic, CentralDifference };

struct InsertionOptions {
    AdaptiveOptions quadrature{};
    /// Accept when error <= abs_tolerance + rel_tolerance * |value|.
    double abs_tolerance = 1e-10;
    double rel_tolerance = 1e-8;
    DerivativeMode derivative = DerivativeMode::Analytic;
    /// Central-difference step is step_scale * (1 + |p|).
    double step_scale = 1e-4;
};

struct InsertionResult {
    DiracMatrix value;
    double quadrature_error_estimate = 0.0;
    /// Zero for analytic derivatives.
    double derivative_step = 0.0;
};

/// A matrix-valued function of momentum that can be differentiated along a
/// list of directions. Returned errors are quadrature error estimates.
using ChainFunctional =
    std::function<Estimated<DiracMatrix>(const FourVector& p, std::span<const FourVector> dirs)>;

/// The chain with the given vertex matrices as a differentiable functional.
ChainFunctional chain_functional(const ChainSpec& chain, std::vector<DiracMatrix> vertex_matrices,
                                 const InsertionOptions& opts = {});

/// int_0^1 dlambda O(p -> p + lambda k) (-i d/dp^mu) applied to f.
ChainFunctional c_hat(ChainFunctional f, FourVector k, std::size_t mu, const InsertionOptions& opts = {});

/// Relative residual of (pslash-m)^-1 kslash (pslash+kslash-m)^-1 = (pslash-m)^-1 - (pslash+kslash-m)^-1.
double ward_identity_residual(const FourVector& p, const FourVector& k, double m);

/// max|central difference of -(pslash-m)^-1 along p^mu - (pslash-m)^-1 gamma_mu (pslash-m)^-1|.
/// Throws StepTooSmall when the residual sits at the rounding floor.
double derivative_identity_residual(const FourVector& p, std::size_t mu, double m, double h);

struct ClassicalPhoton {
    FourVector k;
    std::size_t mu = 0;
};

/// C-hat insertion of one classical photon into the chain at momentum p.
InsertionResult apply_C_hat(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                            const FourVector& k, std::size_t mu, const InsertionOptions& opts = {});

/// Successive C-hat insertions; photons[0] acts first (innermost).
InsertionResult apply_C_hat_sequence(const ChainSpec& chain, const FourVector& p,
                                     std::span<const std::size_t> indices,
                                     std::span<const ClassicalPhoton> photons, const InsertionOptions& opts = {});

/// Quantum vertex of momentum k and free index mu inserted before vertex
/// `position` (0..n). Existing vertices keep gamma_{indices[i]}.
InsertionResult apply_Q_tilde(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                              std::size_t position, const FourVector& k, std::size_t mu,
                              const InsertionOptions& opts = {});

/// Generalized propagator with every vertex quantum, evaluated by direct
/// n-fold semi-infinite quadrature of the expanded antisymmetric integrand.
InsertionResult eval_quantum_chain(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                                   const InsertionOptions& opts = {});

/// Throws OnShellCrossing if some prefix shell p_i + lambda k is crossed for
/// lambda in [0, lambda_max] (lambda_max < 0 means unbounded).
void check_shift_path(const ChainSpec& chain, const FourVector& p, const FourVector& k, double lambda_max);

}  // namespace softqed
