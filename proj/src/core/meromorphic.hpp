#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "core/chain.hpp"
#include "core/quadrature.hpp"

namespace softqed {

/// Sign choice for k_ij = sigma_ij (K_j - K_i) in the pole denominators.
enum class SigmaConvention {
    /// sigma = +1 for j > i, -1 for j < i.
    Provisional,
    /// sigma = +1 for every j.
    Uniform,
};

const char* sigma_convention_name(SigmaConvention c) noexcept;

/// One simple-pole summand N1/D1 * i(pslash_i + m)/(p_i^2 - m^2) * N2/D2.
struct PoleTerm {
    std::size_t index = 0;
    FourVector pole_momentum;
    DiracMatrix n1;
    DiracMatrix n2;
    complex d1{1.0};
    complex d2{1.0};
    /// p_i^2 - m^2 + i eps.
    complex shell{1.0};
    double mass = 1.0;

    DiracMatrix value() const;
};

struct PoleDecompositionOptions {
    /// |p_i^2 - p_j^2| below this times m^2 counts as coincident shells.
    double degenerate_tolerance = 1e-6;
    /// Relative completeness bound used to validate the sign convention.
    double completeness_tolerance = 1e-8;
};

struct PoleDecomposition {
    std::vector<PoleTerm> terms;
    SigmaConvention convention = SigmaConvention::Uniform;
    /// max|sum of terms - chain| / max|chain|.
    double completeness_residual = 0.0;
};

DiracMatrix sum_terms(std::span<const PoleTerm> terms);

/// Pole terms for an arbitrary vertex-matrix list and sign convention.
std::vector<PoleTerm> pole_terms_with(const ChainSpec& chain, const FourVector& p,
                                      std::span<const DiracMatrix> vertex_matrices, SigmaConvention convention,
                                      const PoleDecompositionOptions& opts = {});

/// Decomposition of the gamma-vertex chain. The provisional sign convention is
/// tried first; if the completeness check fails the uniform one is used. Throws
/// DegeneratePoles for coincident shells.
PoleDecomposition pole_terms(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                             const PoleDecompositionOptions& opts = {});

/// gamma_mu - p_mu kslash / (p.k): the quantum vertex after replacing the
/// lambda integral and derivative by p_rho / (p.k).
DiracMatrix replaced_quantum_vertex(const FourVector& pole_momentum, const FourVector& k, std::size_t mu);

/// Vertex matrices seen by pole i: quantum vertices replaced at p_i, other kinds gamma_mu.
std::vector<DiracMatrix> pole_vertex_matrices(const ChainSpec& chain, const FourVector& pole_momentum,
                                              std::span<const std::size_t> indices);

/// Dominant singularity of the quantum chain on p_i^2 = m^2, evaluated at base
/// momentum p (pole momentum p + K_i).
DiracMatrix dominant_singularity(const ChainSpec& chain, std::size_t i, const FourVector& p,
                                 std::span<const std::size_t> indices);

/// (p_i^2 - m^2) times the dominant singularity, at an on-shell pole momentum.
DiracMatrix dominant_residue(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                             std::span<const std::size_t> indices);

/// Residue numerator N1 i(pslash_i + m) N2 with replaced vertices (no D factors).
DiracMatrix residue_numerator(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                              std::span<const std::size_t> indices);

/// Extrapolates (p_i^2 - m^2) * full(p_i) to the shell along
/// p_i(t) = sqrt(1 + t) * pole_momentum, i.e. p_i^2 = m^2 (1 + t).
Estimated<DiracMatrix> extract_residue(const std::function<DiracMatrix(const FourVector&)>& full,
                                       const FourVector& pole_momentum, double mass, std::span<const double> t_values);

struct ScalingFit {
    double alpha = 0.0;
    /// Max deviation of log|residue| from the fitted line.
    double max_log_deviation = 0.0;
};

/// Fits |residue_numerator| ~ t^alpha while the momenta of the vertices listed
/// in `scaled` (1-based vertex numbers) are multiplied by t.
ScalingFit residue_soft_scaling(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                                std::span<const std::size_t> indices, std::span<const std::size_t> scaled,
                                std::span<const double> t_values);

/// Number of scaled vertices adjacent to pole i (vertices i and i+1).
std::size_t adjacent_scaled_count(std::size_t i, std::span<const std::size_t> scaled);

/// sum_{rho,sigma} (delta_mu^sigma k^rho - delta_mu^rho k^sigma) S_{sigma rho}.
complex antisymmetric_contraction(const FourVector& k, const std::array<std::array<complex, 4>, 4>& s,
                                  std::size_t mu);

/// i p_mu / (p.k).
complex classical_factor(const FourVector& p, const FourVector& k, std::size_t mu);

struct ThetaVector {
    std::vector<int> bits;

    int sign() const noexcept;
    FourVector shift(std::span<const FourVector> ks) const;
};

/// All 2^N theta vectors, bit j of the enumeration index giving Theta_j.
std::vector<ThetaVector> enumerate_theta(std::size_t n_classical);

struct ClassicalInsertion {
    FourVector k;
    std::size_t mu = 0;
};

struct ThetaTerm {
    ThetaVector theta;
    int sign = 1;
    FourVector shift;
    /// Pole terms at the shifted momenta with replaced quantum vertices.
    std::vector<PoleTerm> poles;
    /// prod_j i p^Theta_{i mu_j} / (p^Theta_i . k_j) for each pole i.
    std::vector<complex> classical_factors;
    /// sign * sum_i classical_factors[i] * poles[i].value().
    DiracMatrix value;
};

/// Meromorphic part after C-hat insertion of every classical photon.
std::vector<ThetaTerm> classical_meromorphic_expansion(const ChainSpec& chain, const FourVector& p,
                                                       std::span<const std::size_t> indices,
                                                       std::span<const ClassicalInsertion> classical,
                                                       const PoleDecompositionOptions& opts = {});

DiracMatrix theta_sum(std::span<const ThetaTerm> terms);

}  // namespace softqed
