#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>

#include "core/error.hpp"

namespace softqed {

using complex = std::complex<double>;

/// 4x4 complex matrix in spinor space (propagators, vertices).
using DiracMatrix = Eigen::Matrix<complex, 4, 4>;

/// Minkowski metric, signature (+,-,-,-).
struct MetricConvention {
    static constexpr std::array<double, 4> diag{1.0, -1.0, -1.0, -1.0};
    static constexpr double g(std::size_t mu, std::size_t nu) noexcept {
        return mu == nu ? diag[mu] : 0.0;
    }
};

/// Contravariant Minkowski 4-vector with complex components.
///
/// Physical inputs are real; complex components are allowed so that
/// continuation experiments can use the same type. Masses and momenta are in
/// units of the electron mass.
class FourVector {
public:
    constexpr FourVector() = default;
    constexpr FourVector(complex v0, complex v1, complex v2, complex v3)
        : c_{v0, v1, v2, v3} {}
    explicit FourVector(std::initializer_list<double> values);

    static FourVector unit(std::size_t mu);

    /// Throws InvalidArgument for mu > 3.
    complex operator[](std::size_t mu) const;
    complex& operator[](std::size_t mu);

    /// Covariant component v_mu = g_{mu nu} v^nu.
    complex lower(std::size_t mu) const { return MetricConvention::g(mu, mu) * (*this)[mu]; }

    bool is_real() const noexcept;
    /// Euclidean norm of the component tuple.
    double euclidean_norm() const noexcept;
    /// Max-abs component.
    double max_abs() const noexcept;

    FourVector& operator+=(const FourVector& o) noexcept;
    FourVector& operator-=(const FourVector& o) noexcept;
    FourVector& operator*=(complex s) noexcept;

    friend FourVector operator+(FourVector a, const FourVector& b) noexcept { return a += b; }
    friend FourVector operator-(FourVector a, const FourVector& b) noexcept { return a -= b; }
    friend FourVector operator-(FourVector a) noexcept { return a *= -1.0; }
    friend FourVector operator*(complex s, FourVector a) noexcept { return a *= s; }
    friend FourVector operator*(double s, FourVector a) noexcept { return a *= s; }

    const std::array<complex, 4>& components() const noexcept { return c_; }

private:
    std::array<complex, 4> c_{};
};

/// Dirac-basis gamma^mu (upper index).
const DiracMatrix& gamma(std::size_t mu);

/// gamma_mu = g_{mu nu} gamma^nu. This is d(pslash)/dp^mu.
DiracMatrix gamma_lower(std::size_t mu);

const DiracMatrix& identity4();

/// u^0 v^0 - u^1 v^1 - u^2 v^2 - u^3 v^3 (no complex conjugation).
complex minkowski(const FourVector& u, const FourVector& v) noexcept;

/// gamma^mu g_{mu nu} v^nu.
DiracMatrix slash(const FourVector& v);

double max_abs(const DiracMatrix& m) noexcept;

struct InverseOptions {
    /// Upper bound on the 1-norm condition estimate.
    double max_condition = 1e12;
    /// Relative bound on max|M M^-1 - I|.
    double residual_tolerance = 1e-12;
};

/// Inverse with a residual guard; throws SingularMatrix when M is singular or
/// too close to singular for the residual bound to hold.
DiracMatrix dirac_inverse(const DiracMatrix& m, const InverseOptions& opts = {});

}  // namespace softqed
