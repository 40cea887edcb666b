#include "core/insertion.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace softqed {

namespace {

constexpr complex kI{0.0, 1.0};

double step_for(const FourVector& p, const InsertionOptions& opts) {
    return opts.step_scale * (1.0 + p.euclidean_norm());
}

DiracMatrix central_difference(const ChainSpec& chain, std::span<const DiracMatrix> verts, const FourVector& p,
                               std::span<const FourVector> dirs, double h) {
    const std::size_t nd = dirs.size();
    DiracMatrix acc = DiracMatrix::Zero();
    const std::size_t count = std::size_t{1} << nd;
    for (std::size_t s = 0; s < count; ++s) {
        FourVector q = p;
        double sign = 1.0;
        for (std::size_t t = 0; t < nd; ++t) {
            if (s & (std::size_t{1} << t)) {
                q -= h * dirs[t];
                sign = -sign;
            } else {
                q += h * dirs[t];
            }
        }
        acc += sign * chain_jet(chain, q, verts, {})[0];
    }
    return acc / std::pow(2.0 * h, static_cast<double>(nd));
}

void check_accuracy(const Estimated<DiracMatrix>& r, const InsertionOptions& opts, const char* what) {
    const double bound = opts.abs_tolerance + opts.rel_tolerance * max_abs(r.value);
    if (!(r.error <= bound)) {
        throw Error(ErrorCode::QuadratureTolerance, std::string(what) + ": quadrature error estimate " +
                                                        std::to_string(r.error) + " exceeds " + std::to_string(bound));
    }
}

template <class F>
QuadratureResult<DiracMatrix> guarded(F&& integrate) {
    try {
        return integrate();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) {
            throw Error(ErrorCode::OnShellCrossing, std::string("integration path hits a pole: ") + e.what());
        }
        throw;
    }
}

}  // namespace

ChainFunctional chain_functional(const ChainSpec& chain, std::vector<DiracMatrix> vertex_matrices,
                                 const InsertionOptions& opts) {
    return [chain, verts = std::move(vertex_matrices), opts](const FourVector& p,
                                                             std::span<const FourVector> dirs) {
        if (opts.derivative == DerivativeMode::Analytic || dirs.empty()) {
            return Estimated<DiracMatrix>{chain_jet(chain, p, verts, dirs).back(), 0.0};
        }
        return Estimated<DiracMatrix>{central_difference(chain, verts, p, dirs, step_for(p, opts)), 0.0};
    };
}

ChainFunctional c_hat(ChainFunctional f, FourVector k, std::size_t mu, const InsertionOptions& opts) {
    const FourVector e_mu = FourVector::unit(mu);
    return [f = std::move(f), k, e_mu, opts](const FourVector& p, std::span<const FourVector> dirs) {
        std::vector<FourVector> inner_dirs(dirs.begin(), dirs.end());
        inner_dirs.push_back(e_mu);
        auto r = guarded([&] {
            return integrate_adaptive<DiracMatrix>(
                [&](double lambda) { return f(p + lambda * k, inner_dirs); }, 0.0, 1.0, opts.quadrature);
        });
        if (!r.converged) {
            throw Error(ErrorCode::QuadratureTolerance, "C-hat quadrature did not converge");
        }
        return Estimated<DiracMatrix>{DiracMatrix(-kI * r.value), r.error};
    };
}

double ward_identity_residual(const FourVector& p, const FourVector& k, double m) {
    const DiracMatrix a = dirac_inverse(slash(p) - m * identity4());
    const DiracMatrix b = dirac_inverse(slash(p + k) - m * identity4());
    const DiracMatrix lhs = a * slash(k) * b;
    const DiracMatrix rhs = a - b;
    const double scale = std::max(max_abs(a), max_abs(b));
    return max_abs(lhs - rhs) / scale;
}

double derivative_identity_residual(const FourVector& p, std::size_t mu, double m, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "derivative step must be positive");
    const FourVector e = FourVector::unit(mu);
    const DiracMatrix mass = m * identity4();
    const DiracMatrix a = dirac_inverse(slash(p) - mass);
    const DiracMatrix plus = dirac_inverse(slash(p + h * e) - mass);
    const DiracMatrix minus = dirac_inverse(slash(p - h * e) - mass);
    const DiracMatrix fd = -(plus - minus) / (2.0 * h);
    const DiracMatrix exact = a * gamma_lower(mu) * a;
    const double residual = max_abs(fd - exact);
    // Rounding in the difference quotient is about eps * |A| / h.
    const double floor = std::numeric_limits<double>::epsilon() * max_abs(a) / h;
    if (residual < 10.0 * floor) {
        throw Error(ErrorCode::StepTooSmall, "finite-difference residual " + std::to_string(residual) +
                                                 " is at the rounding floor " + std::to_string(floor));
    }
    return residual;
}

void check_shift_path(const ChainSpec& chain, const FourVector& p, const FourVector& k, double lambda_max) {
    if (chain.epsilon() > 0.0) return;
    const double m2 = chain.mass() * chain.mass();
    const auto prefixes = chain.prefix_momenta(p);
    const double a = minkowski(k, k).real();
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        const double x = minkowski(prefixes[i], prefixes[i]).real() - m2;
        const double b = 2.0 * minkowski(prefixes[i], k).real();
        auto inside = [&](double lambda) {
            return lambda >= 0.0 && (lambda_max < 0.0 || lambda <= lambda_max);
        };
        bool hit = false;
        if (std::abs(a) < 1e-300) {
            if (b != 0.0) hit = inside(-x / b);
        } else {
            const double disc = b * b - 4.0 * a * x;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                hit = inside((-b - sq) / (2.0 * a)) || inside((-b + sq) / (2.0 * a));
            }
        }
        if (hit) {
            throw Error(ErrorCode::OnShellCrossing,
                        "shift path crosses the mass shell of prefix " + std::to_string(i));
        }
    }
}

InsertionResult apply_C_hat(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                            const FourVector& k, std::size_t mu, const InsertionOptions& opts) {
    const ClassicalPhoton photon{k, mu};
    return apply_C_hat_sequence(chain, p, indices, std::span(&photon, 1), opts);
}

InsertionResult apply_C_hat_sequence(const ChainSpec& chain, const FourVector& p,
                                     std::span<const std::size_t> indices,
                                     std::span<const ClassicalPhoton> photons, const InsertionOptions& opts) {
    if (photons.size() == 1) check_shift_path(chain, p, photons[0].k, 1.0);
    ChainFunctional f = chain_functional(chain, gamma_vertices(indices), opts);
    for (const auto& photon : photons) f = c_hat(std::move(f), photon.k, photon.mu, opts);
    const auto r = f(p, {});
    check_accuracy(r, opts, "C-hat insertion");
    const double h = opts.derivative == DerivativeMode::Analytic ? 0.0 : step_for(p, opts);
    return {r.value, r.error, h};
}

namespace {

// lambda over which p + lambda k moves by about |p| + m.
double lambda_scale(const FourVector& p, const FourVector& k, double m) {
    const double kn = k.euclidean_norm();
    return kn > 0.0 ? std::max(1.0, (p.euclidean_norm() + m) / kn) : 1.0;
}

}  // namespace

InsertionResult apply_Q_tilde(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                              std::size_t position, const FourVector& k, std::size_t mu,
                              const InsertionOptions& opts) {
    if (position > chain.size()) throw Error(ErrorCode::InvalidArgument, "insertion position out of range");
    if (indices.size() != chain.size()) throw Error(ErrorCode::InvalidArgument, "index count mismatch");

    auto vertices = chain.vertices();
    vertices.insert(vertices.begin() + static_cast<std::ptrdiff_t>(position),
                    VertexSpec{VertexKind::Quantum, k, mu});
    const ChainSpec inserted = chain.with_vertices(std::move(vertices));
    check_shift_path(inserted, p, k, -1.0);

    std::vector<DiracMatrix> with_gamma = gamma_vertices(indices);
    with_gamma.insert(with_gamma.begin() + static_cast<std::ptrdiff_t>(position), gamma_lower(mu));
    std::vector<DiracMatrix> with_kslash = gamma_vertices(indices);
    with_kslash.insert(with_kslash.begin() + static_cast<std::ptrdiff_t>(position), slash(k));

    const ChainFunctional p_mu = chain_functional(inserted, with_gamma, opts);
    const ChainFunctional p_k = chain_functional(inserted, with_kslash, opts);
    const FourVector e_mu = FourVector::unit(mu);
    const FourVector dir_k[1] = {k};
    const FourVector dir_mu[1] = {e_mu};

    // k^rho (-d_rho) P_mu  -  (-d_mu) (k^sigma P_sigma), integrated over lambda in [0, inf).
    auto integrand = [&](double lambda) {
        const FourVector q = p + lambda * k;
        const auto a = p_mu(q, dir_k);
        const auto b = p_k(q, dir_mu);
        return Estimated<DiracMatrix>{DiracMatrix(b.value - a.value), a.error + b.error};
    };
    const double scale = lambda_scale(p, k, chain.mass());
    const auto r =
        guarded([&] { return integrate_semi_infinite<DiracMatrix>(integrand, opts.quadrature, scale); });
    if (!r.converged) throw Error(ErrorCode::QuadratureTolerance, "Q-tilde quadrature did not converge");
    const Estimated<DiracMatrix> est{r.value, r.error};
    check_accuracy(est, opts, "Q-tilde insertion");
    const double h = opts.derivative == DerivativeMode::Analytic ? 0.0 : step_for(p, opts);
    return {r.value, r.error, h};
}

InsertionResult eval_quantum_chain(const ChainSpec& chain, const FourVector& p, std::span<const std::size_t> indices,
                                   const InsertionOptions& opts) {
    const std::size_t n = chain.size();
    if (indices.size() != n) throw Error(ErrorCode::InvalidArgument, "index count mismatch");
    if (n > 4) throw Error(ErrorCode::InvalidArgument, "eval_quantum_chain supports at most 4 vertices");
    for (const auto& v : chain.vertices()) {
        if (v.kind != VertexKind::Quantum) {
            throw Error(ErrorCode::InvalidArgument, "eval_quantum_chain requires quantum vertices only");
        }
    }
    if (n == 0) return {chain_jet(chain, p, {}, {})[0], 0.0, 0.0};

    const auto& vs = chain.vertices();
    // Expanded integrand: per vertex either (gamma_mu, direction -k) or
    // (kslash, direction +e_mu).
    auto integrand = [&](const FourVector& shifted) {
        DiracMatrix total = DiracMatrix::Zero();
        std::vector<DiracMatrix> verts(n);
        std::vector<FourVector> dirs(n);
        for (std::size_t choice = 0; choice < (std::size_t{1} << n); ++choice) {
            double sign = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (choice & (std::size_t{1} << j)) {
                    verts[j] = slash(vs[j].k);
                    dirs[j] = FourVector::unit(indices[j]);
                } else {
                    verts[j] = gamma_lower(indices[j]);
                    dirs[j] = vs[j].k;
                    sign = -sign;
                }
            }
            if (opts.derivative == DerivativeMode::Analytic) {
                total += sign * chain_jet(chain, shifted, verts, dirs).back();
            } else {
                total += sign * central_difference(chain, verts, shifted, dirs, step_for(shifted, opts));
            }
        }
        return total;
    };

    std::function<Estimated<DiracMatrix>(std::size_t, const FourVector&)> nested =
        [&](std::size_t dim, const FourVector& shift) -> Estimated<DiracMatrix> {
        if (dim == n) return {integrand(p + shift), 0.0};
        const auto r = integrate_semi_infinite<DiracMatrix>(
            [&](double lambda) { return nested(dim + 1, shift + lambda * vs[dim].k); }, opts.quadrature,
            lambda_scale(p, vs[dim].k, chain.mass()));
        if (!r.converged) throw Error(ErrorCode::QuadratureTolerance, "quantum-chain quadrature did not converge");
        return {r.value, r.error};
    };
    Estimated<DiracMatrix> r;
    try {
        r = nested(0, FourVector{});
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) {
            throw Error(ErrorCode::OnShellCrossing, std::string("integration path hits a pole: ") + e.what());
        }
        throw;
    }
    check_accuracy(r, opts, "quantum chain");
    const double h = opts.derivative == DerivativeMode::Analytic ? 0.0 : step_for(p, opts);
    return {r.value, r.error, h};
}

}  // namespace softqed
