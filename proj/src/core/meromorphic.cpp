#include "core/meromorphic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace softqed {

namespace {

constexpr complex kI{0.0, 1.0};

// Neumaier summation per entry; makes totals independent of small reorderings.
class CompensatedMatrixSum {
public:
    CompensatedMatrixSum() {
        sum_.fill(0.0);
        comp_.fill(0.0);
    }

    void add(const DiracMatrix& m) {
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                add_scalar(2 * (4 * r + c), m(r, c).real());
                add_scalar(2 * (4 * r + c) + 1, m(r, c).imag());
            }
        }
    }

    DiracMatrix total() const {
        DiracMatrix out;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const int k = 2 * (4 * r + c);
                out(r, c) = complex(sum_[k] + comp_[k], sum_[k + 1] + comp_[k + 1]);
            }
        }
        return out;
    }

private:
    void add_scalar(int k, double x) {
        const double t = sum_[k] + x;
        if (std::abs(sum_[k]) >= std::abs(x)) {
            comp_[k] += (sum_[k] - t) + x;
        } else {
            comp_[k] += (x - t) + sum_[k];
        }
        sum_[k] = t;
    }

    std::array<double, 32> sum_;
    std::array<double, 32> comp_;
};

DiracMatrix numerator_factor(const FourVector& q, double m) {
    return kI * (slash(q) + m * identity4());
}

void check_pole_index(const ChainSpec& chain, std::size_t i) {
    if (i > chain.size()) throw Error(ErrorCode::InvalidArgument, "pole index out of range");
}

}  // namespace

const char* sigma_convention_name(SigmaConvention c) noexcept {
    return c == SigmaConvention::Provisional ? "provisional" : "uniform";
}

DiracMatrix PoleTerm::value() const {
    return (n1 / d1) * (numerator_factor(pole_momentum, mass) / shell) * (n2 / d2);
}

DiracMatrix sum_terms(std::span<const PoleTerm> terms) {
    CompensatedMatrixSum acc;
    for (const auto& t : terms) acc.add(t.value());
    return acc.total();
}

std::vector<PoleTerm> pole_terms_with(const ChainSpec& chain, const FourVector& p,
                                      std::span<const DiracMatrix> vertex_matrices, SigmaConvention convention,
                                      const PoleDecompositionOptions& opts) {
    const std::size_t n = chain.size();
    if (vertex_matrices.size() != n) throw Error(ErrorCode::InvalidArgument, "vertex matrix count mismatch");
    const double m = chain.mass();
    const double m2 = m * m;
    const auto prefixes = chain.prefix_momenta(p);
    const auto cumulative = chain.cumulative_momenta();

    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            const double gap = std::abs(minkowski(prefixes[i], prefixes[i]) - minkowski(prefixes[j], prefixes[j]));
            if (gap < opts.degenerate_tolerance * m2) {
                throw Error(ErrorCode::DegeneratePoles, "coincident shells for prefixes " + std::to_string(i) +
                                                            " and " + std::to_string(j));
            }
        }
    }

    std::vector<DiracMatrix> factors;
    for (const auto& q : prefixes) factors.push_back(numerator_factor(q, m));

    std::vector<PoleTerm> out;
    for (std::size_t i = 0; i <= n; ++i) {
        PoleTerm t;
        t.index = i;
        t.mass = m;
        t.pole_momentum = prefixes[i];
        t.shell = minkowski(prefixes[i], prefixes[i]) - m2 + complex(0.0, chain.epsilon());
        t.n1 = identity4();
        for (std::size_t l = 0; l < i; ++l) t.n1 = t.n1 * factors[l] * vertex_matrices[l];
        t.n2 = identity4();
        for (std::size_t l = i + 1; l <= n; ++l) t.n2 = t.n2 * vertex_matrices[l - 1] * factors[l];
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            const double sigma = (convention == SigmaConvention::Provisional && j < i) ? -1.0 : 1.0;
            const FourVector kij = sigma * (cumulative[j] - cumulative[i]);
            const complex d = 2.0 * minkowski(prefixes[i], kij) + minkowski(kij, kij);
            (j < i ? t.d1 : t.d2) *= d;
        }
        out.push_back(std::move(t));
    }
    return out;
}

PoleDecomposition pole_terms(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                             const PoleDecompositionOptions& opts) {
    const auto verts = gamma_vertices(indices);
    const DiracMatrix reference = chain_jet(chain, p, verts, {})[0];
    const double scale = std::max(max_abs(reference), 1e-300);

    PoleDecomposition best;
    bool have = false;
    for (auto convention : {SigmaConvention::Provisional, SigmaConvention::Uniform}) {
        auto terms = pole_terms_with(chain, p, verts, convention, opts);
        const double residual = max_abs(sum_terms(terms) - reference) / scale;
        if (!have || residual < best.completeness_residual) {
            best = PoleDecomposition{std::move(terms), convention, residual};
            have = true;
        }
        if (residual <= opts.completeness_tolerance) break;
    }
    return best;
}

DiracMatrix replaced_quantum_vertex(const FourVector& pole_momentum, const FourVector& k, std::size_t mu) {
    const complex pk = minkowski(pole_momentum, k);
    if (std::abs(pk) < 1e-14 * std::max(1.0, pole_momentum.euclidean_norm() * k.euclidean_norm())) {
        throw Error(ErrorCode::SoftCollinear, "p_i . k_j vanishes");
    }
    return gamma_lower(mu) - (pole_momentum.lower(mu) / pk) * slash(k);
}

std::vector<DiracMatrix> pole_vertex_matrices(const ChainSpec& chain, const FourVector& pole_momentum,
                                              std::span<const std::size_t> indices) {
    if (indices.size() != chain.size()) throw Error(ErrorCode::InvalidArgument, "index count mismatch");
    std::vector<DiracMatrix> out;
    for (std::size_t j = 0; j < chain.size(); ++j) {
        const auto& v = chain.vertices()[j];
        out.push_back(v.kind == VertexKind::Quantum ? replaced_quantum_vertex(pole_momentum, v.k, indices[j])
                                                    : gamma_lower(indices[j]));
    }
    return out;
}

DiracMatrix dominant_singularity(const ChainSpec& chain, std::size_t i, const FourVector& p,
                                 std::span<const std::size_t> indices) {
    check_pole_index(chain, i);
    const FourVector pole = chain.prefix_momenta(p)[i];
    const auto verts = pole_vertex_matrices(chain, pole, indices);
    return pole_terms_with(chain, p, verts, SigmaConvention::Uniform)[i].value();
}

DiracMatrix dominant_residue(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                             std::span<const std::size_t> indices) {
    check_pole_index(chain, i);
    const FourVector p = pole_momentum - chain.cumulative_momenta()[i];
    const auto verts = pole_vertex_matrices(chain, pole_momentum, indices);
    const auto term = pole_terms_with(chain, p, verts, SigmaConvention::Uniform)[i];
    return (term.n1 / term.d1) * numerator_factor(pole_momentum, chain.mass()) * (term.n2 / term.d2);
}

DiracMatrix residue_numerator(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                              std::span<const std::size_t> indices) {
    check_pole_index(chain, i);
    const FourVector p = pole_momentum - chain.cumulative_momenta()[i];
    const auto verts = pole_vertex_matrices(chain, pole_momentum, indices);
    const auto prefixes = chain.prefix_momenta(p);
    DiracMatrix out = identity4();
    for (std::size_t l = 0; l < prefixes.size(); ++l) {
        if (l > 0) out = out * verts[l - 1];
        out = out * numerator_factor(prefixes[l], chain.mass());
    }
    return out;
}

Estimated<DiracMatrix> extract_residue(const std::function<DiracMatrix(const FourVector&)>& full,
                                       const FourVector& pole_momentum, double mass, std::span<const double> t_values) {
    std::vector<DiracMatrix> samples;
    for (double t : t_values) {
        const FourVector q = std::sqrt(1.0 + t) * pole_momentum;
        const complex shell = minkowski(q, q) - mass * mass;
        samples.push_back(shell * full(q));
    }
    return extrapolate_to_zero<DiracMatrix>(t_values, samples);
}

std::size_t adjacent_scaled_count(std::size_t i, std::span<const std::size_t> scaled) {
    std::size_t count = 0;
    for (auto j : scaled) {
        if (j == i || j == i + 1) ++count;
    }
    return count;
}

ScalingFit residue_soft_scaling(const ChainSpec& chain, std::size_t i, const FourVector& pole_momentum,
                                std::span<const std::size_t> indices, std::span<const std::size_t> scaled,
                                std::span<const double> t_values) {
    if (t_values.size() < 2) throw Error(ErrorCode::FitFailure, "need at least two scale factors");
    const auto [tmin, tmax] = std::minmax_element(t_values.begin(), t_values.end());
    if (!(*tmin > 0.0) || *tmax / *tmin < 10.0) {
        throw Error(ErrorCode::FitFailure, "scale factors span less than one decade");
    }
    std::vector<double> xs, ys;
    for (double t : t_values) {
        auto vertices = chain.vertices();
        for (auto j : scaled) {
            if (j == 0 || j > vertices.size()) throw Error(ErrorCode::InvalidArgument, "scaled vertex out of range");
            vertices[j - 1].k = t * vertices[j - 1].k;
        }
        const double norm = max_abs(residue_numerator(chain.with_vertices(std::move(vertices)), i, pole_momentum, indices));
        if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::FitFailure, "residue vanished or diverged");
        xs.push_back(std::log(t));
        ys.push_back(std::log(norm));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    ScalingFit fit;
    fit.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - fit.alpha * sx) / n;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        fit.max_log_deviation = std::max(fit.max_log_deviation, std::abs(ys[k] - intercept - fit.alpha * xs[k]));
    }
    return fit;
}

complex antisymmetric_contraction(const FourVector& k, const std::array<std::array<complex, 4>, 4>& s,
                                  std::size_t mu) {
    if (mu > 3) throw Error(ErrorCode::InvalidArgument, "Lorentz index out of range");
    complex first{}, second{};
    for (std::size_t r = 0; r < 4; ++r) first += k[r] * s[mu][r];
    for (std::size_t r = 0; r < 4; ++r) second += k[r] * s[r][mu];
    return first - second;
}

complex classical_factor(const FourVector& p, const FourVector& k, std::size_t mu) {
    const complex pk = minkowski(p, k);
    if (pk == 0.0) throw Error(ErrorCode::SoftCollinear, "p . k vanishes in classical factor");
    return kI * p.lower(mu) / pk;
}

int ThetaVector::sign() const noexcept {
    int s = 1;
    for (int b : bits) {
        if (b) s = -s;
    }
    return s;
}

FourVector ThetaVector::shift(std::span<const FourVector> ks) const {
    FourVector out;
    for (std::size_t j = 0; j < bits.size() && j < ks.size(); ++j) {
        if (bits[j]) out += ks[j];
    }
    return out;
}

std::vector<ThetaVector> enumerate_theta(std::size_t n_classical) {
    if (n_classical > 20) throw Error(ErrorCode::InvalidArgument, "too many classical photons");
    std::vector<ThetaVector> out;
    for (std::size_t code = 0; code < (std::size_t{1} << n_classical); ++code) {
        ThetaVector t;
        for (std::size_t j = 0; j < n_classical; ++j) t.bits.push_back((code >> j) & 1u ? 1 : 0);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ThetaTerm> classical_meromorphic_expansion(const ChainSpec& chain, const FourVector& p,
                                                       std::span<const std::size_t> indices,
                                                       std::span<const ClassicalInsertion> classical,
                                                       const PoleDecompositionOptions& opts) {
    std::vector<FourVector> ks;
    for (const auto& c : classical) ks.push_back(c.k);
    std::vector<ThetaTerm> out;
    for (auto& theta : enumerate_theta(classical.size())) {
        ThetaTerm term;
        term.sign = theta.sign();
        term.shift = theta.shift(ks);
        const FourVector shifted = p + term.shift;
        const auto prefixes = chain.prefix_momenta(shifted);
        CompensatedMatrixSum acc;
        for (std::size_t i = 0; i < prefixes.size(); ++i) {
            std::vector<PoleTerm> poles;
            try {
                const auto verts = pole_vertex_matrices(chain, prefixes[i], indices);
                poles = pole_terms_with(chain, shifted, verts, SigmaConvention::Uniform, opts);
                const double x = std::abs(poles[i].shell);
                if (chain.epsilon() == 0.0 && x < kOnShellGuard * chain.mass() * chain.mass()) {
                    throw Error(ErrorCode::SingularMatrix, "shifted prefix on shell");
                }
            } catch (const Error& e) {
                std::string bits;
                for (int b : theta.bits) bits += static_cast<char>('0' + b);
                throw Error(e.code() == ErrorCode::SingularMatrix ? ErrorCode::OnShellCrossing : e.code(),
                            "theta=" + bits + ", pole " + std::to_string(i) + ": " + e.what());
            }
            complex factor = 1.0;
            for (const auto& c : classical) factor *= classical_factor(prefixes[i], c.k, c.mu);
            term.poles.push_back(poles[i]);
            term.classical_factors.push_back(factor);
            acc.add(static_cast<double>(term.sign) * factor * poles[i].value());
        }
        term.value = acc.total();
        term.theta = std::move(theta);
        out.push_back(std::move(term));
    }
    return out;
}

DiracMatrix theta_sum(std::span<const ThetaTerm> terms) {
    CompensatedMatrixSum acc;
    for (const auto& t : terms) acc.add(t.value);
    return acc.total();
}

}  // namespace softqed
