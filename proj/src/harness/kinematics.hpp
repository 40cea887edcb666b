#pragma once

#include <cmath>
#include <limits>

#include "core/algebra.hpp"
#include "core/random.hpp"

namespace softqed::kin {

// min over lambda in [0, lambda_max] of |(p + lambda k)^2 - m^2|; zero if the
// shell is crossed. lambda_max may be infinite.
inline double path_margin(const FourVector& p, const FourVector& k, double m, double lambda_max) {
    const double a = minkowski(k, k).real();
    const double b = 2.0 * minkowski(p, k).real();
    const double c = minkowski(p, p).real() - m * m;
    auto g = [&](double l) { return a * l * l + b * l + c; };
    auto inside = [&](double l) { return l >= 0.0 && l <= lambda_max; };
    if (a != 0.0) {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            if (inside((-b + s) / (2.0 * a)) || inside((-b - s) / (2.0 * a))) return 0.0;
        }
    } else if (b != 0.0 && inside(-c / b)) {
        return 0.0;
    }
    double out = std::abs(c);
    if (std::isfinite(lambda_max)) out = std::min(out, std::abs(g(lambda_max)));
    if (a != 0.0 && inside(-b / (2.0 * a))) out = std::min(out, std::abs(g(-b / (2.0 * a))));
    return out;
}

// p and k with the straight path p + lambda k, lambda in [0, lambda_max], at
// least `margin` m^2 away from the shell.
struct Pair {
    FourVector p;
    FourVector k;
};

inline Pair safe_pair(Rng& rng, double m, double lambda_max, double margin = 0.1, double p_range = 1.5,
                      double k_range = 0.5) {
    while (true) {
        const FourVector p = rng.four_vector(-p_range, p_range);
        const FourVector k = rng.four_vector(-k_range, k_range);
        if (path_margin(p, k, m, lambda_max) >= margin * m * m) return {p, k};
    }
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace softqed::kin
