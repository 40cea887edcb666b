#pragma once
// Independent reference computations shared by the unit tests, the verify
// suites and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "core/action.hpp"
#include "core/algebra.hpp"
#include "core/chain.hpp"
#include "core/current.hpp"
#include "core/quadrature.hpp"

namespace softqed::oracle {

// Composite Simpson over n intervals of int_0^1 z e^{ik.(x- + tau z)} dtau.
inline FourVector brute_segment_current(const FourVector& xm, const FourVector& xp, const FourVector& k,
                                        int n = 10000) {
    const FourVector z = xp - xm;
    const complex I{0.0, 1.0};
    complex sum{};
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * std::exp(I * minkowski(k, xm + t * z));
    }
    return (sum / (3.0 * n)) * z;
}

// R(p) gamma_mu R(p + k) minus the C-hat insertion on one propagator: the
// closed form of the quantum vertex acting on a single propagator.
inline DiracMatrix q_tilde_single(const DiracMatrix& c_hat_value, const FourVector& p, const FourVector& k,
                                  std::size_t mu, double m) {
    return propagator(p, m, 0.0) * gamma_lower(mu) * propagator(p + k, m, 0.0) - c_hat_value;
}

// Non-boundary part of C-hat on one propagator after integrating the total
// lambda derivative: int_0^1 (1/D) [gamma_mu - q_mu kslash/(q.k)
//   - (k_mu/(q.k) - q_mu k^2/(q.k)^2)(qslash + m)] dlambda, q = p + lambda k.
inline DiracMatrix theta_remainder(const FourVector& p, const FourVector& k, std::size_t mu, double m) {
    auto f = [&](double lambda) {
        const FourVector q = p + lambda * k;
        const complex d = minkowski(q, q) - m * m;
        const complex qk = minkowski(q, k);
        const complex k2 = minkowski(k, k);
        const DiracMatrix n = slash(q) + m * identity4();
        DiracMatrix v = gamma_lower(mu) - (q.lower(mu) / qk) * slash(k) -
                        (k.lower(mu) / qk - q.lower(mu) * k2 / (qk * qk)) * n;
        return DiracMatrix(v / d);
    };
    AdaptiveOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    return integrate_adaptive<DiracMatrix>(f, 0.0, 1.0, opts).value;
}

namespace detail {

// Real roots in (0, 1) of the quadratic through (0, f0), (1/2, fh), (1, f1).
inline void quadratic_roots_in_unit(double f0, double fh, double f1, std::vector<double>& out) {
    const double a = 2.0 * f1 - 4.0 * fh + 2.0 * f0;
    const double b = 4.0 * fh - 3.0 * f0 - f1;
    const double c = f0;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) > 1e-14 * scale) out.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0.0 ? s : -s));
            out.push_back(q / a);
            if (q != 0.0) out.push_back(c / q);
        }
    }
}

}  // namespace detail

// int int dtau dsigma delta(f(tau, sigma)) for two distinct edges, using the
// exact roots of the quadratic f in sigma and Jacobian 1/|df/dsigma|. Corner
// points shared by adjacent edges add the one-sided delta mass
// int_0^{pi/2} dphi / (4 |Q(phi)|).
inline double delta_pair_integral(const LoopPath& loop, std::size_t e, std::size_t f) {
    const FourVector xe = loop.vertex(e), ze = loop.edge(e);
    const FourVector xf = loop.vertex(f), zf = loop.edge(f);
    const double A = minkowski(zf, zf).real();
    auto coeffs = [&](double tau, double& b, double& c) {
        const FourVector d = xe + tau * ze - xf;
        b = -2.0 * minkowski(d, zf).real();
        c = minkowski(d, d).real();
    };
    auto disc = [&](double tau) {
        double b, c;
        coeffs(tau, b, c);
        return b * b - 4.0 * A * c;
    };
    auto at = [&](double tau, double sigma) {
        double b, c;
        coeffs(tau, b, c);
        return A * sigma * sigma + b * sigma + c;
    };
    auto integrand = [&](double tau) {
        double b, c;
        coeffs(tau, b, c);
        double total = 0.0;
        if (A == 0.0) {
            if (b != 0.0) {
                const double r = -c / b;
                if (r > 0.0 && r < 1.0) total += 1.0 / std::abs(b);
            }
            return total;
        }
        const double dsc = b * b - 4.0 * A * c;
        if (dsc <= 0.0) return 0.0;
        const double s = std::sqrt(dsc);
        for (double r : {(-b + s) / (2.0 * A), (-b - s) / (2.0 * A)}) {
            if (r > 0.0 && r < 1.0) total += 1.0 / s;
        }
        return total;
    };

    std::vector<double> cuts{0.0, 1.0};
    std::vector<double> roots;
    detail::quadratic_roots_in_unit(disc(0.0), disc(0.5), disc(1.0), roots);
    detail::quadratic_roots_in_unit(at(0.0, 0.0), at(0.5, 0.0), at(1.0, 0.0), roots);
    detail::quadratic_roots_in_unit(at(0.0, 1.0), at(0.5, 1.0), at(1.0, 1.0), roots);
    for (double r : roots) {
        if (r > 0.0 && r < 1.0) cuts.push_back(r);
    }
    std::sort(cuts.begin(), cuts.end());

    AdaptiveOptions opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-11;
    opts.max_panels = 8192;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo < 1e-15) continue;
        // cosine map removes inverse square-root endpoint behaviour
        auto mapped = [&](double th) {
            const double tau = lo + 0.5 * (hi - lo) * (1.0 - std::cos(th));
            return integrand(tau) * 0.5 * (hi - lo) * std::sin(th);
        };
        total += integrate_adaptive<double>(mapped, 0.0, std::numbers::pi, opts).value;
    }

    auto corner = [&](const FourVector& u, const FourVector& v) {
        auto g = [&](double phi) {
            const FourVector w = std::cos(phi) * u + std::sin(phi) * v;
            const double q = minkowski(w, w).real();
            if (q == 0.0) throw std::domain_error("null direction inside a corner cone");
            return 1.0 / (4.0 * std::abs(q));
        };
        return integrate_adaptive<double>(g, 0.0, 0.5 * std::numbers::pi, opts).value;
    };
    const std::size_t n = loop.size();
    if ((e + 1) % n == f) total += corner(ze, zf);
    if ((f + 1) % n == e) total += corner(zf, ze);
    return total;
}

// Cross-edge action -e^2/(8 pi) sum_{e != f} z_e.z_f int int delta.
inline double cross_action(const LoopPath& loop, double charge = 1.0) {
    double sum = 0.0;
    for (std::size_t e = 0; e < loop.size(); ++e) {
        for (std::size_t f = 0; f < loop.size(); ++f) {
            if (e == f) continue;
            sum += minkowski(loop.edge(e), loop.edge(f)).real() * delta_pair_integral(loop, e, f);
        }
    }
    return -(charge * charge) / (8.0 * std::numbers::pi) * sum;
}

// Skew quadrilateral with spacelike edges whose opposite edges cross the light
// cone of each other; no corner cone contains a null direction.
inline LoopPath skew_quadrilateral(double l = 10.0, double t = 3.0, double h = 1.0) {
    return LoopPath({FourVector{0.0, -l, 0.0, 0.0}, FourVector{0.0, l, 0.0, 0.0}, FourVector{t, 0.0, -l, h},
                     FourVector{t, 0.0, l, h}});
}

// Purely spatial triangle: distinct edges are spacelike separated except at
// the shared corners.
inline LoopPath spatial_triangle() {
    return LoopPath({FourVector{0.0, 0.0, 0.0, 0.0}, FourVector{0.0, 4.0, 0.0, 0.0}, FourVector{0.0, 0.0, 3.0, 0.0}});
}

// Large triangle with timelike edges (velocities 0.5); its size makes the
// photon spectrum logarithmic across k in [1e-4, 1].
inline LoopPath mesoscopic_triangle(double t = 1e6) {
    return LoopPath({FourVector{0.0, 0.0, 0.0, 0.0}, FourVector{t, 0.5 * t, 0.0, 0.0},
                     FourVector{2.0 * t, 0.0, 0.5 * t, 0.1 * t}});
}

}  // namespace softqed::oracle
