#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/algebra.hpp"
#include "core/current.hpp"
#include "json.hpp"

namespace softqed::harness {

struct KinematicsRanges {
    double mass = 1.0;
    /// Components of random p drawn from [-p_range, p_range].
    double p_range = 1.5;
    double k_range = 0.5;
    /// Minimum |q^2 - m^2| / m^2 along every straight shift path.
    double margin = 0.1;
};

struct VertexConfig {
    FourVector k;
    std::size_t mu = 0;
};

struct DecomposeConfig {
    double mass = 1.0;
    double epsilon = 0.0;
    FourVector p{0.4, 0.3, -0.2, 0.1};
    std::vector<VertexConfig> vertices{{FourVector{0.3, 0.1, 0.05, -0.1}, 1}};
    std::vector<VertexConfig> classical;
};

struct CoherentConfig {
    std::vector<double> k_min_ladder{0.2, 0.1, 0.05, 0.025};
};

struct ActionConfig {
    std::vector<double> eta_factors{1e-1, 3e-2, 1e-2};
    /// Zero picks (max edge length / 2)^2.
    double eta_scale = 0.0;
    bool include_self = false;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    double charge = 1.0;
    /// Overrides of the registered default tolerances.
    std::map<std::string, double> tolerances;
    KinematicsRanges kinematics;
    GridParameters grid{1e-2, 1.0, 16, 8};
    std::vector<FourVector> loop{FourVector{0.0, 0.0, 0.0, 0.0}, FourVector{1.0, 4.0, 0.0, 0.0},
                                 FourVector{0.5, 0.0, 3.0, 0.0}};
    std::string output_path;
    DecomposeConfig decompose;
    CoherentConfig coherent;
    ActionConfig action;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// Error(ConfigParse). Missing keys keep their defaults.
SuiteConfig parse_config(std::string_view text);

/// Every field, defaults included, in a fixed order.
nlohmann::ordered_json config_echo(const SuiteConfig& config);

}  // namespace softqed::harness
