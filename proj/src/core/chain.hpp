#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/algebra.hpp"

namespace softqed {

enum class VertexKind { Quantum, Classical, PlainGamma };

const char* vertex_kind_name(VertexKind kind) noexcept;

struct VertexSpec {
    VertexKind kind = VertexKind::PlainGamma;
    FourVector k;
    /// Default Lorentz index; evaluation calls may override it.
    std::size_t lorentz_index = 0;
};

/// Relative distance |p^2 - m^2| / m^2 below which an unregulated (epsilon = 0)
/// propagator refuses to evaluate.
inline constexpr double kOnShellGuard = 1e-8;

/// A charged line with soft-photon vertices inserted in a fixed order.
class ChainSpec {
public:
    ChainSpec(double mass, double epsilon, std::vector<VertexSpec> vertices);

    double mass() const noexcept { return mass_; }
    double epsilon() const noexcept { return epsilon_; }
    const std::vector<VertexSpec>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    /// p_i = p + k_1 + ... + k_i for i = 0..n.
    std::vector<FourVector> prefix_momenta(const FourVector& p) const;
    /// K_i = k_1 + ... + k_i for i = 0..n.
    std::vector<FourVector> cumulative_momenta() const;
    std::vector<std::size_t> default_indices() const;

    ChainSpec with_vertices(std::vector<VertexSpec> vertices) const;

private:
    double mass_;
    double epsilon_;
    std::vector<VertexSpec> vertices_;
};

/// i (pslash + m) / (p^2 - m^2 + i eps).
DiracMatrix propagator(const FourVector& p, double m, double eps);

/// Derivatives indexed by subset bitmask of the direction list: entry S holds
/// the mixed directional derivative along every direction in S.
using Jet = std::vector<DiracMatrix>;

Jet propagator_jet(const FourVector& p, double m, double eps, std::span<const FourVector> dirs);

/// Ordered product R(p+a) V_1 R(p+a+k_1) ... V_n R(p+a+k_1+...+k_n) with the
/// vertex matrices supplied by the caller, differentiated along dirs.
Jet chain_jet(const ChainSpec& chain, const FourVector& p, std::span<const DiracMatrix> vertex_matrices,
              std::span<const FourVector> dirs);

/// Chain value with gamma_{sigma_j} at vertex j.
DiracMatrix eval_chain(const ChainSpec& chain, const FourVector& p, const FourVector& a,
                       std::span<const std::size_t> indices);
DiracMatrix eval_chain(const ChainSpec& chain, const FourVector& p, const FourVector& a);

std::vector<DiracMatrix> gamma_vertices(std::span<const std::size_t> indices);

}  // namespace softqed
