#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/algebra.hpp"

namespace softqed {

/// Closed polygonal loop x_1 .. x_V, x_{V+1} = x_1.
class LoopPath {
public:
    /// Throws InvalidLoop for fewer than 3 vertices, complex components or a
    /// zero-length edge.
    explicit LoopPath(std::vector<FourVector> vertices);

    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<FourVector>& vertices() const noexcept { return vertices_; }
    const FourVector& vertex(std::size_t i) const { return vertices_.at(i % vertices_.size()); }
    /// z_e = x_{e+1} - x_e.
    FourVector edge(std::size_t e) const;
    std::vector<FourVector> edges() const;
    /// max |sum_e z_e| (rounding only).
    double closure_residual() const;
    /// Largest Euclidean edge length.
    double max_edge_length() const;

    LoopPath reversed() const;
    LoopPath translated(const FourVector& d) const;
    /// Spatial rotation of every vertex.
    LoopPath rotated(const Eigen::Matrix3d& r) const;

private:
    std::vector<FourVector> vertices_;
};

/// Edges with both |z^2| and the Euclidean norm below this are rejected.
inline constexpr double kZeroEdge = 1e-12;
/// Below this |k.z| the segment current uses its series.
inline constexpr double kSeriesSwitch = 1e-8;

/// z e^{ik.x-} (e^{ik.z} - 1)/(ik.z), z = x+ - x-.
FourVector segment_current(const FourVector& x_minus, const FourVector& x_plus, const FourVector& k);

/// Sum of segment currents over the edges of the loop.
FourVector loop_current(const LoopPath& loop, const FourVector& k);

/// Spatial rotation applied to a four-vector.
FourVector rotate_spatial(const Eigen::Matrix3d& r, const FourVector& v);

struct GridParameters {
    double k_min = 1e-3;
    double k_max = 1.0;
    std::size_t n_radial = 32;
    /// Polar nodes; the azimuthal rule uses 2 n_angular points.
    std::size_t n_angular = 12;
};

/// On-shell photon momenta with weights for int d^3k / ((2 pi)^3 2|k|).
class PhotonModeGrid {
public:
    /// Gauss-Legendre in log|k| times Gauss-Legendre in cos(theta) times a
    /// uniform phi rule. `axes` rotates the node directions.
    static PhotonModeGrid build(const GridParameters& params, const Eigen::Matrix3d& axes = Eigen::Matrix3d::Identity());
    /// An explicit node list (weights must be positive, nodes lightlike).
    static PhotonModeGrid from_nodes(std::vector<FourVector> nodes, std::vector<double> weights);

    const GridParameters& parameters() const noexcept { return params_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<FourVector>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Two real unit vectors orthogonal to k (spatial parts), fixed per node.
    std::array<Eigen::Vector3d, 2> polarizations(std::size_t node) const;

private:
    GridParameters params_;
    std::vector<FourVector> nodes_;
    std::vector<double> weights_;
};

using CurrentFunction = std::function<FourVector(const FourVector& k)>;

/// sum_nodes w sum_pol conj(eps.a) (eps.b); first argument conjugated.
complex pairing(const CurrentFunction& a, const CurrentFunction& b, const PhotonModeGrid& grid);

/// Transverse |eps.J|^2 summed over polarizations at a single momentum.
double transverse_norm2(const FourVector& k, const FourVector& j);

struct RefinedPairing {
    complex value;
    /// Same pairing with n_radial doubled.
    complex refined;
    double relative_change = 0.0;
    /// relative_change <= tolerance.
    bool stable = true;
};

RefinedPairing pairing_with_refinement(const CurrentFunction& a, const CurrentFunction& b, const GridParameters& params,
                                       double tolerance);

}  // namespace softqed
