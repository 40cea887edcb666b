#include "core/chain.hpp"

#include <cmath>
#include <string>

namespace softqed {

const char* vertex_kind_name(VertexKind kind) noexcept {
    switch (kind) {
        case VertexKind::Quantum: return "quantum";
        case VertexKind::Classical: return "classical";
        case VertexKind::PlainGamma: return "plain";
    }
    return "unknown";
}

ChainSpec::ChainSpec(double mass, double epsilon, std::vector<VertexSpec> vertices)
    : mass_(mass), epsilon_(epsilon), vertices_(std::move(vertices)) {
    if (!(mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "chain mass must be positive");
    if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "chain epsilon must be >= 0");
    for (const auto& v : vertices_) {
        if (v.lorentz_index > 3) throw Error(ErrorCode::InvalidArgument, "vertex Lorentz index out of range");
    }
}

std::vector<FourVector> ChainSpec::cumulative_momenta() const {
    std::vector<FourVector> out;
    out.reserve(vertices_.size() + 1);
    FourVector acc;
    out.push_back(acc);
    for (const auto& v : vertices_) {
        acc += v.k;
        out.push_back(acc);
    }
    return out;
}

std::vector<FourVector> ChainSpec::prefix_momenta(const FourVector& p) const {
    auto out = cumulative_momenta();
    for (auto& q : out) q = p + q;
    return out;
}

std::vector<std::size_t> ChainSpec::default_indices() const {
    std::vector<std::size_t> out;
    for (const auto& v : vertices_) out.push_back(v.lorentz_index);
    return out;
}

ChainSpec ChainSpec::with_vertices(std::vector<VertexSpec> vertices) const {
    return ChainSpec(mass_, epsilon_, std::move(vertices));
}

namespace {

complex denominator(const FourVector& p, double m, double eps) {
    const complex p2 = minkowski(p, p);
    const complex d = p2 - m * m;
    if (eps == 0.0 && std::abs(d) < kOnShellGuard * m * m) {
        throw Error(ErrorCode::SingularMatrix,
                    "propagator evaluated on shell (|p^2-m^2|/m^2 = " + std::to_string(std::abs(d) / (m * m)) + ")");
    }
    return d + complex(0.0, eps);
}

// Sum over partitions of the direction subset S into blocks of size one or two.
// A singleton {s} contributes dD/dd_s = 2 p.d_s, a pair {s,t} contributes
// 2 d_s.d_t. Returns the coefficient of (-1)^b b! / D^(b+1) for each block
// count b.
void partitions(unsigned mask, std::span<const complex> single, const std::vector<std::vector<complex>>& pair,
                std::size_t blocks, complex product, std::vector<complex>& by_blocks) {
    if (mask == 0) {
        by_blocks[blocks] += product;
        return;
    }
    unsigned first = 0;
    while (!(mask & (1u << first))) ++first;
    const unsigned rest = mask & ~(1u << first);
    partitions(rest, single, pair, blocks + 1, product * single[first], by_blocks);
    for (unsigned j = first + 1; (1u << j) <= rest; ++j) {
        if (rest & (1u << j)) {
            partitions(rest & ~(1u << j), single, pair, blocks + 1, product * pair[first][j], by_blocks);
        }
    }
}

Jet multiply(const Jet& a, const Jet& b) {
    Jet out(a.size(), DiracMatrix::Zero());
    for (unsigned s = 0; s < out.size(); ++s) {
        // Enumerate T subset of S, including empty and S itself.
        unsigned t = s;
        while (true) {
            out[s].noalias() += a[t] * b[s & ~t];
            if (t == 0) break;
            t = (t - 1) & s;
        }
    }
    return out;
}

}  // namespace

DiracMatrix propagator(const FourVector& p, double m, double eps) {
    const complex d = denominator(p, m, eps);
    const complex I{0.0, 1.0};
    return (I / d) * (slash(p) + m * identity4());
}

Jet propagator_jet(const FourVector& p, double m, double eps, std::span<const FourVector> dirs) {
    const std::size_t nd = dirs.size();
    if (nd > 8) throw Error(ErrorCode::InvalidArgument, "too many derivative directions");
    const complex d = denominator(p, m, eps);
    const complex I{0.0, 1.0};

    std::vector<complex> single(nd);
    std::vector<std::vector<complex>> pair(nd, std::vector<complex>(nd));
    std::vector<DiracMatrix> dir_slash(nd);
    for (std::size_t s = 0; s < nd; ++s) {
        single[s] = 2.0 * minkowski(p, dirs[s]);
        dir_slash[s] = slash(dirs[s]);
        for (std::size_t t = 0; t < nd; ++t) pair[s][t] = 2.0 * minkowski(dirs[s], dirs[t]);
    }

    // Derivatives of 1/D for every subset.
    const std::size_t count = std::size_t{1} << nd;
    std::vector<complex> inv_d(count);
    std::vector<complex> by_blocks(nd + 1);
    for (unsigned s = 0; s < count; ++s) {
        std::fill(by_blocks.begin(), by_blocks.end(), complex{});
        partitions(s, single, pair, 0, 1.0, by_blocks);
        complex total{};
        double factorial = 1.0;
        complex power = 1.0 / d;
        for (std::size_t b = 0; b <= nd; ++b) {
            if (b > 0) {
                factorial *= static_cast<double>(b);
                power /= d;
            }
            const double sign = (b % 2 == 0) ? 1.0 : -1.0;
            total += sign * factorial * power * by_blocks[b];
        }
        inv_d[s] = total;
    }

    const DiracMatrix numerator = slash(p) + m * identity4();
    Jet out(count);
    for (unsigned s = 0; s < count; ++s) {
        DiracMatrix v = inv_d[s] * numerator;
        for (std::size_t t = 0; t < nd; ++t) {
            if (s & (1u << t)) v += inv_d[s & ~(1u << t)] * dir_slash[t];
        }
        out[s] = I * v;
    }
    return out;
}

Jet chain_jet(const ChainSpec& chain, const FourVector& p, std::span<const DiracMatrix> vertex_matrices,
              std::span<const FourVector> dirs) {
    if (vertex_matrices.size() != chain.size()) {
        throw Error(ErrorCode::InvalidArgument, "vertex matrix count does not match chain length");
    }
    const auto prefixes = chain.prefix_momenta(p);
    Jet acc;
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        Jet factor;
        try {
            factor = propagator_jet(prefixes[i], chain.mass(), chain.epsilon(), dirs);
        } catch (const Error& e) {
            throw Error(e.code(), "prefix " + std::to_string(i) + ": " + e.what());
        }
        if (i == 0) {
            acc = std::move(factor);
            continue;
        }
        for (auto& m : acc) m = m * vertex_matrices[i - 1];
        acc = multiply(acc, factor);
    }
    return acc;
}

std::vector<DiracMatrix> gamma_vertices(std::span<const std::size_t> indices) {
    std::vector<DiracMatrix> out;
    out.reserve(indices.size());
    for (auto mu : indices) out.push_back(gamma_lower(mu));
    return out;
}

DiracMatrix eval_chain(const ChainSpec& chain, const FourVector& p, const FourVector& a,
                       std::span<const std::size_t> indices) {
    const auto vertices = gamma_vertices(indices);
    return chain_jet(chain, p + a, vertices, {})[0];
}

DiracMatrix eval_chain(const ChainSpec& chain, const FourVector& p, const FourVector& a) {
    const auto idx = chain.default_indices();
    return eval_chain(chain, p, a, idx);
}

}  // namespace softqed
