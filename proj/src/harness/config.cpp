#include "harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "core/error.hpp"
#include "harness/checks.hpp"

namespace softqed::harness {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ConfigParse, path + ": " + what);
}

// Walks one JSON object; every key must be claimed before finish().
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    const json* get(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string at(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) fail(at(it.key()), "unknown key");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

double positive(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
}

std::uint64_t unsigned_int(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
        if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

FourVector four_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 4) fail(path, "expected an array of 4 numbers");
    FourVector v;
    for (std::size_t mu = 0; mu < 4; ++mu) v[mu] = number(j[mu], path + "[" + std::to_string(mu) + "]");
    return v;
}

std::vector<double> number_list(const json& j, const std::string& path, bool require_positive) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        out.push_back(require_positive ? positive(j[i], p) : number(j[i], p));
    }
    return out;
}

std::vector<VertexConfig> vertex_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<VertexConfig> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        ObjectReader r(j[i], path + "[" + std::to_string(i) + "]");
        VertexConfig v;
        if (auto* x = r.get("k")) v.k = four_vector(*x, r.at("k"));
        if (auto* x = r.get("mu")) {
            v.mu = static_cast<std::size_t>(unsigned_int(*x, r.at("mu")));
            if (v.mu > 3) fail(r.at("mu"), "Lorentz index must be 0..3");
        }
        r.finish();
        out.push_back(v);
    }
    return out;
}

void read_kinematics(const json& j, KinematicsRanges& k) {
    ObjectReader r(j, "$.kinematics");
    if (auto* x = r.get("mass")) k.mass = positive(*x, r.at("mass"));
    if (auto* x = r.get("p_range")) k.p_range = positive(*x, r.at("p_range"));
    if (auto* x = r.get("k_range")) k.k_range = positive(*x, r.at("k_range"));
    if (auto* x = r.get("margin")) k.margin = positive(*x, r.at("margin"));
    r.finish();
}

void read_grid(const json& j, GridParameters& g) {
    ObjectReader r(j, "$.grid");
    if (auto* x = r.get("k_min")) g.k_min = positive(*x, r.at("k_min"));
    if (auto* x = r.get("k_max")) g.k_max = positive(*x, r.at("k_max"));
    if (auto* x = r.get("n_radial")) g.n_radial = static_cast<std::size_t>(unsigned_int(*x, r.at("n_radial")));
    if (auto* x = r.get("n_angular")) g.n_angular = static_cast<std::size_t>(unsigned_int(*x, r.at("n_angular")));
    r.finish();
    if (!(g.k_min < g.k_max)) fail("$.grid", "k_min must be below k_max");
    if (g.n_radial > 4096 || g.n_angular > 1024) fail("$.grid", "node counts too large");
}

void read_decompose(const json& j, DecomposeConfig& d) {
    ObjectReader r(j, "$.decompose");
    if (auto* x = r.get("mass")) d.mass = positive(*x, r.at("mass"));
    if (auto* x = r.get("epsilon")) {
        d.epsilon = number(*x, r.at("epsilon"));
        if (d.epsilon < 0.0) fail(r.at("epsilon"), "must be non-negative");
    }
    if (auto* x = r.get("p")) d.p = four_vector(*x, r.at("p"));
    if (auto* x = r.get("vertices")) d.vertices = vertex_list(*x, r.at("vertices"));
    if (auto* x = r.get("classical")) d.classical = vertex_list(*x, r.at("classical"));
    r.finish();
    if (d.classical.size() > 12) fail("$.decompose.classical", "at most 12 classical photons");
}

void read_coherent(const json& j, CoherentConfig& c) {
    ObjectReader r(j, "$.coherent");
    if (auto* x = r.get("k_min_ladder")) c.k_min_ladder = number_list(*x, r.at("k_min_ladder"), true);
    r.finish();
}

void read_action(const json& j, ActionConfig& a) {
    ObjectReader r(j, "$.action");
    if (auto* x = r.get("eta_factors")) {
        a.eta_factors = number_list(*x, r.at("eta_factors"), true);
        if (a.eta_factors.size() < 2) fail(r.at("eta_factors"), "need at least 2 values");
    }
    if (auto* x = r.get("eta_scale")) {
        a.eta_scale = number(*x, r.at("eta_scale"));
        if (a.eta_scale < 0.0) fail(r.at("eta_scale"), "must be non-negative");
    }
    if (auto* x = r.get("include_self")) {
        if (!x->is_boolean()) fail(r.at("include_self"), "expected true or false");
        a.include_self = x->get<bool>();
    }
    r.finish();
}

nlohmann::ordered_json vec_json(const FourVector& v) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (std::size_t mu = 0; mu < 4; ++mu) out.push_back(v[mu].real());
    return out;
}

nlohmann::ordered_json vertices_json(const std::vector<VertexConfig>& vs) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& v : vs) {
        nlohmann::ordered_json e;
        e["k"] = vec_json(v.k);
        e["mu"] = v.mu;
        out.push_back(e);
    }
    return out;
}

}  // namespace

SuiteConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigParse, std::string("invalid JSON: ") + e.what());
    }
    SuiteConfig c;
    ObjectReader r(j, "$");
    if (auto* x = r.get("seed")) c.seed = unsigned_int(*x, r.at("seed"));
    if (auto* x = r.get("charge")) c.charge = number(*x, r.at("charge"));
    if (auto* x = r.get("tolerances")) {
        if (!x->is_object()) fail(r.at("tolerances"), "expected an object");
        const auto names = check_names();
        for (auto it = x->begin(); it != x->end(); ++it) {
            const std::string p = r.at("tolerances") + "." + it.key();
            if (std::find(names.begin(), names.end(), it.key()) == names.end()) fail(p, "unknown check name");
            const double t = number(it.value(), p);
            if (t < 0.0) fail(p, "must be non-negative");
            c.tolerances[it.key()] = t;
        }
    }
    if (auto* x = r.get("kinematics")) read_kinematics(*x, c.kinematics);
    if (auto* x = r.get("grid")) read_grid(*x, c.grid);
    if (auto* x = r.get("loop")) {
        if (!x->is_array()) fail(r.at("loop"), "expected an array of vertices");
        c.loop.clear();
        for (std::size_t i = 0; i < x->size(); ++i) {
            c.loop.push_back(four_vector((*x)[i], r.at("loop") + "[" + std::to_string(i) + "]"));
        }
    }
    if (auto* x = r.get("output_path")) {
        if (!x->is_string()) fail(r.at("output_path"), "expected a string");
        c.output_path = x->get<std::string>();
    }
    if (auto* x = r.get("decompose")) read_decompose(*x, c.decompose);
    if (auto* x = r.get("coherent")) read_coherent(*x, c.coherent);
    if (auto* x = r.get("action")) read_action(*x, c.action);
    r.finish();
    return c;
}

nlohmann::ordered_json config_echo(const SuiteConfig& c) {
    nlohmann::ordered_json out;
    out["seed"] = c.seed;
    out["charge"] = c.charge;
    nlohmann::ordered_json tol = nlohmann::ordered_json::object();
    for (const auto& [name, value] : c.tolerances) tol[name] = value;
    out["tolerances"] = tol;
    out["kinematics"] = {{"mass", c.kinematics.mass},
                         {"p_range", c.kinematics.p_range},
                         {"k_range", c.kinematics.k_range},
                         {"margin", c.kinematics.margin}};
    out["grid"] = {{"k_min", c.grid.k_min},
                   {"k_max", c.grid.k_max},
                   {"n_radial", c.grid.n_radial},
                   {"n_angular", c.grid.n_angular}};
    nlohmann::ordered_json loop = nlohmann::ordered_json::array();
    for (const auto& v : c.loop) loop.push_back(vec_json(v));
    out["loop"] = loop;
    out["output_path"] = c.output_path;
    out["decompose"] = {{"mass", c.decompose.mass},
                        {"epsilon", c.decompose.epsilon},
                        {"p", vec_json(c.decompose.p)},
                        {"vertices", vertices_json(c.decompose.vertices)},
                        {"classical", vertices_json(c.decompose.classical)}};
    out["coherent"] = {{"k_min_ladder", c.coherent.k_min_ladder}};
    out["action"] = {{"eta_factors", c.action.eta_factors},
                     {"eta_scale", c.action.eta_scale},
                     {"include_self", c.action.include_self}};
    return out;
}

}  // namespace softqed::harness
