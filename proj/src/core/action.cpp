#include "core/action.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace softqed {

namespace {

// log(1 + w), principal branch.
complex log1p_c(complex w) {
    if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
    return std::log(1.0 + w);
}

// int_0^1 dsigma / (A sigma^2 + B sigma + C), Im C != 0. Along real sigma the
// factors sigma - r keep the sign of their imaginary part, so
// log(1 - r) - log(-r) = log(1 - 1/r) on the principal branch.
complex quadratic_reciprocal_integral(double a, double b, complex c) {
    if (a == 0.0) {
        if (b == 0.0) return 1.0 / c;
        return log1p_c(b / c) / b;
    }
    const complex disc = std::sqrt(complex(b * b) - 4.0 * a * c);
    const complex q = (b * disc.real() >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    const complex r1 = q / a;
    const complex r2 = c / q;
    const complex l1 = log1p_c(-1.0 / r1);
    const complex l2 = log1p_c(-1.0 / r2);
    return (l1 - l2) / (q - a * c / q);
}

}  // namespace

Estimated<double> edge_pair_integral(const LoopPath& loop, std::size_t e, std::size_t f, double eta,
                                     const AdaptiveOptions& quadrature) {
    if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
    const FourVector xe = loop.vertex(e);
    const FourVector ze = loop.edge(e);
    const FourVector xf = loop.vertex(f);
    const FourVector zf = loop.edge(f);
    const double a = minkowski(zf, zf).real();
    const double pi = std::numbers::pi;
    auto inner = [&](double tau) {
        const FourVector d = xe + tau * ze - xf;
        const double b = -2.0 * minkowski(d, zf).real();
        const complex c(minkowski(d, d).real(), -eta);
        return quadratic_reciprocal_integral(a, b, c).imag() / pi;
    };
    const auto r = integrate_adaptive<double>(inner, 0.0, 1.0, quadrature);
    const double zz = minkowski(ze, zf).real();
    return {zz * r.value, std::abs(zz) * r.error};
}

double default_eta_scale(const LoopPath& loop) {
    const double half = 0.5 * loop.max_edge_length();
    return half * half;
}

std::vector<std::size_t> null_corners(const LoopPath& loop) {
    std::vector<std::size_t> out;
    const std::size_t v = loop.size();
    for (std::size_t i = 0; i < v; ++i) {
        const FourVector in = loop.edge((i + v - 1) % v);
        const FourVector out_edge = loop.edge(i);
        const double a = minkowski(in, in).real();
        const double b = minkowski(in, out_edge).real();
        const double d = minkowski(out_edge, out_edge).real();
        // a + 2 b t + d t^2 = 0 for some t >= 0
        if (a * d <= 0.0 || (b * b >= a * d && b * d < 0.0)) out.push_back(i);
    }
    return out;
}

namespace {

double prefactor(double charge) { return -(charge * charge) / (8.0 * std::numbers::pi); }

}  // namespace

double classical_action(const LoopPath& loop, double eta, bool exclude_self, double charge,
                        const AdaptiveOptions& quadrature) {
    double sum = 0.0;
    for (std::size_t e = 0; e < loop.size(); ++e) {
        for (std::size_t f = 0; f < loop.size(); ++f) {
            if (e == f && exclude_self) continue;
            sum += edge_pair_integral(loop, e, f, eta, quadrature).value;
        }
    }
    return prefactor(charge) * sum + 0.0;
}

ActionResult evaluate_action(const LoopPath& loop, const ActionOptions& opts) {
    if (opts.eta_factors.size() < 2) throw Error(ErrorCode::InvalidArgument, "eta ladder needs at least 2 values");
    const double scale = opts.eta_scale > 0.0 ? opts.eta_scale : default_eta_scale(loop);
    ActionResult out;
    out.self_included = !opts.exclude_self;
    for (double f : opts.eta_factors) {
        if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta factors must be positive");
        out.etas.push_back(f * scale);
    }

    if (opts.charge == 0.0) {
        out.ladder.assign(out.etas.size(), 0.0);
        out.converged = true;
        return out;
    }
    const auto cusps = null_corners(loop);
    if (!cusps.empty()) {
        std::ostringstream msg;
        msg << "cross-edge action diverges: corner cone contains a light-like direction at vertex";
        for (auto c : cusps) msg << ' ' << c;
        out.diagnostic = msg.str();
        return out;
    }

    const std::size_t v = loop.size();
    std::vector<double> cross(out.etas.size(), 0.0);
    out.self_pairs.resize(v);
    for (std::size_t e = 0; e < v; ++e) out.self_pairs[e].edge = e;
    for (std::size_t i = 0; i < out.etas.size(); ++i) {
        for (std::size_t e = 0; e < v; ++e) {
            for (std::size_t f = 0; f < v; ++f) {
                const double val = edge_pair_integral(loop, e, f, out.etas[i], opts.quadrature).value;
                if (e == f) {
                    out.self_pairs[e].values.push_back(val);
                } else {
                    cross[i] += val;
                }
            }
        }
    }

    // A convergent pair moves by O(eta); a self pair grows like eta^-1/2 or faster.
    const double eta_ratio = out.etas.front() / out.etas.back();
    bool any_divergent = false;
    for (auto& s : out.self_pairs) {
        const double first = std::abs(s.values.front());
        const double last = std::abs(s.values.back());
        s.divergent = last > first * std::pow(eta_ratio, 0.25);
        any_divergent = any_divergent || s.divergent;
    }

    const double pre = prefactor(opts.charge);
    for (std::size_t i = 0; i < out.etas.size(); ++i) {
        double total = cross[i];
        if (out.self_included) {
            for (const auto& s : out.self_pairs) total += s.values[i];
        }
        out.ladder.push_back(pre * total + 0.0);
    }

    if (out.self_included && any_divergent) {
        std::ostringstream msg;
        msg << "self-edge pairs diverge as eta -> 0:";
        for (const auto& s : out.self_pairs) {
            if (s.divergent) msg << " edge " << s.edge;
        }
        out.diagnostic = msg.str();
        return out;
    }

    const auto ex = extrapolate_to_zero<double>(out.etas, out.ladder);
    out.value = ex.value + 0.0;
    out.error = ex.error;
    if (!(out.error <= opts.rel_tolerance * std::abs(out.value) + opts.abs_tolerance)) {
        std::ostringstream msg;
        msg << "eta extrapolation did not converge (value " << out.value << ", error " << out.error << ")";
        out.diagnostic = msg.str();
        return out;
    }
    out.converged = true;
    return out;
}

ActionResult classical_action_extrapolated(const LoopPath& loop, const ActionOptions& opts) {
    auto out = evaluate_action(loop, opts);
    if (!out.converged) throw Error(ErrorCode::NonConvergent, out.diagnostic);
    return out;
}

}  // namespace softqed
