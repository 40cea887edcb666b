#include "core/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace softqed {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::SingularMatrix: return "singular-matrix";
        case ErrorCode::DegeneratePoles: return "degenerate-poles";
        case ErrorCode::QuadratureTolerance: return "quadrature-tolerance-exceeded";
        case ErrorCode::OnShellCrossing: return "on-shell-crossing";
        case ErrorCode::StepTooSmall: return "step-too-small";
        case ErrorCode::FitFailure: return "fit-failure";
        case ErrorCode::SoftCollinear: return "soft-collinear";
        case ErrorCode::TruncationInsufficient: return "truncation-insufficient";
        case ErrorCode::NonConvergent: return "non-convergent-extrapolation";
        case ErrorCode::InvalidLoop: return "invalid-loop";
        case ErrorCode::ConfigParse: return "config-parse";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

namespace {

void check_index(std::size_t mu) {
    if (mu > 3) {
        throw Error(ErrorCode::InvalidArgument,
                    "Lorentz index " + std::to_string(mu) + " out of range 0..3");
    }
}

std::array<DiracMatrix, 4> make_gammas() {
    const complex I{0.0, 1.0};
    std::array<DiracMatrix, 4> g;
    for (auto& m : g) m.setZero();
    // gamma^0 = diag(1, 1, -1, -1)
    g[0](0, 0) = 1.0;
    g[0](1, 1) = 1.0;
    g[0](2, 2) = -1.0;
    g[0](3, 3) = -1.0;
    // gamma^i = [[0, sigma_i], [-sigma_i, 0]]
    Eigen::Matrix<complex, 2, 2> sigma[3];
    sigma[0] << 0.0, 1.0, 1.0, 0.0;
    sigma[1] << 0.0, -I, I, 0.0;
    sigma[2] << 1.0, 0.0, 0.0, -1.0;
    for (int i = 0; i < 3; ++i) {
        g[i + 1].block<2, 2>(0, 2) = sigma[i];
        g[i + 1].block<2, 2>(2, 0) = -sigma[i];
    }
    return g;
}

}  // namespace

FourVector::FourVector(std::initializer_list<double> values) {
    if (values.size() != 4) {
        throw Error(ErrorCode::InvalidArgument, "FourVector needs exactly 4 components");
    }
    std::size_t i = 0;
    for (double v : values) c_[i++] = v;
}

FourVector FourVector::unit(std::size_t mu) {
    check_index(mu);
    FourVector v;
    v.c_[mu] = 1.0;
    return v;
}

complex FourVector::operator[](std::size_t mu) const {
    check_index(mu);
    return c_[mu];
}

complex& FourVector::operator[](std::size_t mu) {
    check_index(mu);
    return c_[mu];
}

bool FourVector::is_real() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](complex z) { return z.imag() == 0.0; });
}

double FourVector::euclidean_norm() const noexcept {
    double s = 0.0;
    for (auto z : c_) s += std::norm(z);
    return std::sqrt(s);
}

double FourVector::max_abs() const noexcept {
    double m = 0.0;
    for (auto z : c_) m = std::max(m, std::abs(z));
    return m;
}

FourVector& FourVector::operator+=(const FourVector& o) noexcept {
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
}

FourVector& FourVector::operator-=(const FourVector& o) noexcept {
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
}

FourVector& FourVector::operator*=(complex s) noexcept {
    for (auto& z : c_) z *= s;
    return *this;
}

const DiracMatrix& gamma(std::size_t mu) {
    static const std::array<DiracMatrix, 4> gammas = make_gammas();
    check_index(mu);
    return gammas[mu];
}

DiracMatrix gamma_lower(std::size_t mu) {
    return MetricConvention::g(mu, mu) * gamma(mu);
}

const DiracMatrix& identity4() {
    static const DiracMatrix id = DiracMatrix::Identity();
    return id;
}

complex minkowski(const FourVector& u, const FourVector& v) noexcept {
    const auto& a = u.components();
    const auto& b = v.components();
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

DiracMatrix slash(const FourVector& v) {
    const auto& c = v.components();
    return c[0] * gamma(0) - c[1] * gamma(1) - c[2] * gamma(2) - c[3] * gamma(3);
}

double max_abs(const DiracMatrix& m) noexcept {
    return m.cwiseAbs().maxCoeff();
}

DiracMatrix dirac_inverse(const DiracMatrix& m, const InverseOptions& opts) {
    const Eigen::PartialPivLU<DiracMatrix> lu(m);
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / opts.max_condition)) {
        throw Error(ErrorCode::SingularMatrix,
                    "matrix is singular or ill-conditioned (rcond=" + std::to_string(rcond) + ")");
    }
    DiracMatrix inv = lu.inverse();
    const double residual = max_abs(m * inv - identity4());
    if (!(residual <= opts.residual_tolerance)) {
        throw Error(ErrorCode::SingularMatrix,
                    "inverse residual " + std::to_string(residual) + " exceeds bound");
    }
    return inv;
}

}  // namespace softqed
