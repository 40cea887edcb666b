#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "core/algebra.hpp"
#include "core/error.hpp"

namespace softqed {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of order n (n >= 1). Thread-safe.
const GaussLegendreRule& gauss_legendre(std::size_t n);

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(complex v) { return std::abs(v); }
inline double value_norm(const DiracMatrix& v) { return max_abs(v); }

template <class V>
V zero_value() {
    if constexpr (std::is_same_v<V, DiracMatrix>) {
        return DiracMatrix::Zero();
    } else {
        return V{};
    }
}

template <class V>
struct QuadratureResult {
    V value;
    /// Sum over panels of |high-order - low-order| plus propagated inner errors.
    double error = 0.0;
    std::size_t panels = 0;
    bool converged = true;
};

struct AdaptiveOptions {
    std::size_t order = 32;
    std::size_t check_order = 16;
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    std::size_t max_panels = 2048;
};

/// Values with an attached error estimate, e.g. an inner integral.
template <class V>
struct Estimated {
    V value;
    double error = 0.0;
};

namespace detail {

template <class V>
Estimated<V> as_estimated(const V& v) { return {v, 0.0}; }
template <class V>
Estimated<V> as_estimated(const Estimated<V>& v) { return v; }

template <class V, class F>
void panel_rules(F& f, double lo, double hi, const AdaptiveOptions& opts, V& high, V& low,
                 double& inner_error) {
    const auto& rh = gauss_legendre(opts.order);
    const auto& rl = gauss_legendre(opts.check_order);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    high = zero_value<V>();
    low = zero_value<V>();
    inner_error = 0.0;
    for (std::size_t i = 0; i < rh.nodes.size(); ++i) {
        auto e = as_estimated<V>(f(mid + half * rh.nodes[i]));
        high += (half * rh.weights[i]) * e.value;
        inner_error += std::abs(half * rh.weights[i]) * e.error;
    }
    for (std::size_t i = 0; i < rl.nodes.size(); ++i) {
        auto e = as_estimated<V>(f(mid + half * rl.nodes[i]));
        low += (half * rl.weights[i]) * e.value;
    }
}

}  // namespace detail

/// Globally adaptive bisection with a Gauss-Legendre pair per panel: the panel
/// with the largest error is split until the summed error meets
/// max(abs_tol, rel_tol * |total|). f may return V or Estimated<V>; inner error
/// estimates are added to the reported error but do not drive refinement.
template <class V, class F>
QuadratureResult<V> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opts = {}) {
    struct Panel {
        double lo, hi;
        V high;
        double err;
        double inner;
    };
    QuadratureResult<V> out;
    out.value = zero_value<V>();
    if (b == a) return out;

    auto make_panel = [&](double lo, double hi) {
        V high, low;
        double inner = 0.0;
        detail::panel_rules<V>(f, lo, hi, opts, high, low, inner);
        return Panel{lo, hi, high, value_norm(V(high - low)), inner};
    };

    std::vector<Panel> panels;
    panels.push_back(make_panel(a, b));
    const double min_width = 1e-15 * std::abs(b - a);
    while (true) {
        V total = zero_value<V>();
        double err = 0.0;
        double inner = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].high;
            err += panels[i].err;
            inner += panels[i].inner;
            if (panels[i].err > worst_err && std::abs(panels[i].hi - panels[i].lo) > min_width) {
                worst_err = panels[i].err;
                worst = i;
            }
        }
        const double target = std::max(opts.abs_tol, opts.rel_tol * value_norm(total));
        const bool done = err <= target;
        if (done || panels.size() >= opts.max_panels || worst_err < 0.0) {
            out.value = total;
            out.error = err + inner;
            out.panels = panels.size();
            out.converged = done;
            return out;
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        panels[worst] = make_panel(p.lo, mid);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, make_panel(mid, p.hi));
    }
}

/// Integral over [0, inf): adaptive on lambda in [0, 8 scale], then a fixed rule pair
/// on the tail through lambda = 8 scale / u, u in (0, 1]. `scale` is the
/// lambda range over which f changes appreciably. The tail integrand is smooth
/// in u, but f carries a rounding floor that u^-2 amplifies near u = 0, so
/// adaptive refinement there would only chase noise.
template <class V, class F>
QuadratureResult<V> integrate_semi_infinite(F&& f, const AdaptiveOptions& opts = {}, double scale = 1.0) {
    const double cut = 8.0 * scale;
    // head: lambda = scale s / (1 - s), s in [0, 8/9]
    auto head_f = [&f, scale](double s) {
        const double one_minus = 1.0 - s;
        const double jac = scale / (one_minus * one_minus);
        auto e = detail::as_estimated<V>(f(scale * s / one_minus));
        return Estimated<V>{V(jac * e.value), jac * e.error};
    };
    auto tail_f = [&f, cut](double u) {
        const double jac = cut / (u * u);
        auto e = detail::as_estimated<V>(f(cut / u));
        return Estimated<V>{V(jac * e.value), jac * e.error};
    };
    auto out = integrate_adaptive<V>(head_f, 0.0, 8.0 / 9.0, opts);
    V high, low;
    double inner = 0.0;
    detail::panel_rules<V>(tail_f, 0.0, 1.0, opts, high, low, inner);
    out.value += high;
    out.error += value_norm(V(high - low)) + inner;
    out.panels += 1;
    return out;
}

/// Polynomial (Neville) extrapolation of samples g(t_i) to t = 0.
template <class V>
Estimated<V> extrapolate_to_zero(std::span<const double> t, std::span<const V> g) {
    const std::size_t n = t.size();
    if (n == 0 || g.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "extrapolation needs matching non-empty samples");
    }
    std::vector<V> p(g.begin(), g.end());
    V previous = p[n - 1];
    for (std::size_t level = 1; level < n; ++level) {
        // p[1] is the degree n-2 fit through t[1..n-1].
        if (level == n - 1) previous = p[1];
        for (std::size_t i = 0; i + level < n; ++i) {
            const double ti = t[i];
            const double tj = t[i + level];
            p[i] = V((tj * p[i] - ti * p[i + 1]) / (tj - ti));
        }
    }
    Estimated<V> out{p[0], n > 1 ? value_norm(V(p[0] - previous)) : 0.0};
    return out;
}

}  // namespace softqed
