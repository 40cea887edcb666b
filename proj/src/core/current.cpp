#include "core/current.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace softqed {

LoopPath::LoopPath(std::vector<FourVector> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw Error(ErrorCode::InvalidLoop, "loop needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertices_[i].is_real()) {
            throw Error(ErrorCode::InvalidLoop, "loop vertex " + std::to_string(i) + " has complex components");
        }
    }
    for (std::size_t e = 0; e < vertices_.size(); ++e) {
        const FourVector z = edge(e);
        if (std::abs(minkowski(z, z)) < kZeroEdge && z.euclidean_norm() < kZeroEdge) {
            throw Error(ErrorCode::InvalidLoop, "loop edge " + std::to_string(e) + " has zero length");
        }
    }
}

FourVector LoopPath::edge(std::size_t e) const { return vertex(e + 1) - vertex(e); }

std::vector<FourVector> LoopPath::edges() const {
    std::vector<FourVector> out;
    for (std::size_t e = 0; e < size(); ++e) out.push_back(edge(e));
    return out;
}

double LoopPath::closure_residual() const {
    FourVector sum;
    for (std::size_t e = 0; e < size(); ++e) sum += edge(e);
    return sum.max_abs();
}

double LoopPath::max_edge_length() const {
    double out = 0.0;
    for (std::size_t e = 0; e < size(); ++e) out = std::max(out, edge(e).euclidean_norm());
    return out;
}

LoopPath LoopPath::reversed() const { return LoopPath(std::vector<FourVector>(vertices_.rbegin(), vertices_.rend())); }

LoopPath LoopPath::translated(const FourVector& d) const {
    auto v = vertices_;
    for (auto& x : v) x += d;
    return LoopPath(std::move(v));
}

LoopPath LoopPath::rotated(const Eigen::Matrix3d& r) const {
    auto v = vertices_;
    for (auto& x : v) x = rotate_spatial(r, x);
    return LoopPath(std::move(v));
}

FourVector rotate_spatial(const Eigen::Matrix3d& r, const FourVector& v) {
    FourVector out;
    out[0] = v[0];
    for (int i = 0; i < 3; ++i) {
        complex s{};
        for (int j = 0; j < 3; ++j) s += r(i, j) * v[static_cast<std::size_t>(j + 1)];
        out[static_cast<std::size_t>(i + 1)] = s;
    }
    return out;
}

FourVector segment_current(const FourVector& x_minus, const FourVector& x_plus, const FourVector& k) {
    const FourVector z = x_plus - x_minus;
    const complex I{0.0, 1.0};
    const complex theta = minkowski(k, z);
    // (e^{i theta} - 1)/(i theta) = e^{i theta/2} sin(theta/2)/(theta/2)
    complex sinc;
    if (std::abs(theta) < kSeriesSwitch) {
        sinc = 1.0 - theta * theta / 24.0;
    } else {
        sinc = std::sin(0.5 * theta) / (0.5 * theta);
    }
    const complex factor = std::exp(I * minkowski(k, x_minus) + 0.5 * I * theta) * sinc;
    return factor * z;
}

FourVector loop_current(const LoopPath& loop, const FourVector& k) {
    FourVector out;
    for (std::size_t e = 0; e < loop.size(); ++e) out += segment_current(loop.vertex(e), loop.vertex(e + 1), k);
    return out;
}

PhotonModeGrid PhotonModeGrid::build(const GridParameters& params, const Eigen::Matrix3d& axes) {
    if (!(params.k_min > 0.0) || !(params.k_max > params.k_min)) {
        throw Error(ErrorCode::InvalidArgument, "grid needs 0 < k_min < k_max");
    }
    PhotonModeGrid grid;
    grid.params_ = params;
    if (params.n_radial == 0 || params.n_angular == 0) return grid;

    const auto& radial = gauss_legendre(params.n_radial);
    const auto& polar = gauss_legendre(params.n_angular);
    const std::size_t n_phi = 2 * params.n_angular;
    const double pi = std::numbers::pi;
    const double lo = std::log(params.k_min);
    const double hi = std::log(params.k_max);
    const double half = 0.5 * (hi - lo);
    const double norm = 1.0 / (16.0 * pi * pi * pi);
    const double w_phi = 2.0 * pi / static_cast<double>(n_phi);

    for (std::size_t r = 0; r < radial.nodes.size(); ++r) {
        const double k = std::exp(lo + half * (1.0 + radial.nodes[r]));
        // d^3k/(2|k|) = k dk dOmega / 2, dk = k du
        const double w_k = half * radial.weights[r] * k * k;
        for (std::size_t a = 0; a < polar.nodes.size(); ++a) {
            const double c = polar.nodes[a];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (std::size_t b = 0; b < n_phi; ++b) {
                const double phi = w_phi * static_cast<double>(b);
                Eigen::Vector3d n(s * std::cos(phi), s * std::sin(phi), c);
                n = axes * n;
                n.normalize();
                grid.nodes_.push_back(FourVector{k, k * n.x(), k * n.y(), k * n.z()});
                grid.weights_.push_back(norm * w_k * polar.weights[a] * w_phi);
            }
        }
    }
    return grid;
}

PhotonModeGrid PhotonModeGrid::from_nodes(std::vector<FourVector> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size()) throw Error(ErrorCode::InvalidArgument, "node and weight counts differ");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& k = nodes[i];
        if (!k.is_real() || !(weights[i] > 0.0) || !(k[0].real() > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "grid node " + std::to_string(i) + " is not a valid photon mode");
        }
        const double k3 = std::hypot(k[1].real(), k[2].real(), k[3].real());
        if (std::abs(k[0].real() - k3) > 1e-14 * k3) {
            throw Error(ErrorCode::InvalidArgument, "grid node " + std::to_string(i) + " is off shell");
        }
    }
    PhotonModeGrid grid;
    grid.params_.n_radial = 0;
    grid.params_.n_angular = 0;
    grid.nodes_ = std::move(nodes);
    grid.weights_ = std::move(weights);
    return grid;
}

namespace {

Eigen::Vector3d direction(const FourVector& k) {
    Eigen::Vector3d n(k[1].real(), k[2].real(), k[3].real());
    return n.normalized();
}

Eigen::Vector3cd transverse(const Eigen::Vector3d& n, const FourVector& j) {
    Eigen::Vector3cd v(j[1], j[2], j[3]);
    const complex along = n.x() * v.x() + n.y() * v.y() + n.z() * v.z();
    return v - along * n.cast<complex>();
}

}  // namespace

std::array<Eigen::Vector3d, 2> PhotonModeGrid::polarizations(std::size_t node) const {
    const Eigen::Vector3d n = direction(nodes_.at(node));
    Eigen::Index axis = 0;
    n.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d ref = Eigen::Vector3d::Zero();
    ref[axis] = 1.0;
    const Eigen::Vector3d e1 = (ref - ref.dot(n) * n).normalized();
    return {e1, n.cross(e1)};
}

double transverse_norm2(const FourVector& k, const FourVector& j) {
    return transverse(direction(k), j).squaredNorm();
}

complex pairing(const CurrentFunction& a, const CurrentFunction& b, const PhotonModeGrid& grid) {
    complex sum{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& k = grid.nodes()[i];
        const Eigen::Vector3d n = direction(k);
        const Eigen::Vector3cd ta = transverse(n, a(k));
        const Eigen::Vector3cd tb = transverse(n, b(k));
        sum += grid.weights()[i] * ta.dot(tb);
    }
    return sum;
}

RefinedPairing pairing_with_refinement(const CurrentFunction& a, const CurrentFunction& b, const GridParameters& params,
                                       double tolerance) {
    RefinedPairing out;
    out.value = pairing(a, b, PhotonModeGrid::build(params));
    GridParameters fine = params;
    fine.n_radial *= 2;
    out.refined = pairing(a, b, PhotonModeGrid::build(fine));
    const double scale = std::max(std::abs(out.value), std::abs(out.refined));
    out.relative_change = scale > 0.0 ? std::abs(out.refined - out.value) / scale : 0.0;
    out.stable = out.relative_change <= tolerance;
    return out;
}

}  // namespace softqed
