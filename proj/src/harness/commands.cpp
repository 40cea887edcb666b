#include "harness/commands.hpp"

#include <cmath>

#include "core/action.hpp"
#include "core/coherent.hpp"
#include "core/current.hpp"
#include "core/error.hpp"
#include "core/meromorphic.hpp"
#include "harness/checks.hpp"
#include "harness/report.hpp"

namespace softqed::harness {

namespace {

using ojson = nlohmann::ordered_json;

ojson vec_json(const FourVector& v) {
    ojson out = ojson::array();
    for (std::size_t mu = 0; mu < 4; ++mu) out.push_back(v[mu].real());
    return out;
}

ojson complex_json(complex z) { return ojson::array({z.real() + 0.0, z.imag() + 0.0}); }

// Row-major 4x4 of [re, im] pairs.
ojson matrix_json(const DiracMatrix& m) {
    ojson rows = ojson::array();
    for (Eigen::Index r = 0; r < 4; ++r) {
        ojson row = ojson::array();
        for (Eigen::Index c = 0; c < 4; ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

ojson pole_json(const PoleTerm& t) {
    ojson out;
    out["index"] = t.index;
    out["pole_momentum"] = vec_json(t.pole_momentum);
    out["shell"] = complex_json(t.shell);
    out["value"] = matrix_json(t.value());
    return out;
}

ActionOptions action_options(const SuiteConfig& c, bool exclude_self) {
    ActionOptions o;
    o.charge = c.charge;
    o.eta_factors = c.action.eta_factors;
    o.eta_scale = c.action.eta_scale;
    o.exclude_self = exclude_self;
    return o;
}

}  // namespace

CommandOutput run_verify(const SuiteConfig& config) {
    bool all_pass = false;
    const auto report = verify_report(config, all_pass);
    return {dump(report), all_pass};
}

CommandOutput run_current(const SuiteConfig& config) {
    const LoopPath loop(config.loop);
    const auto grid = PhotonModeGrid::build(config.grid);
    std::string out = csv_row({"k0", "k1", "k2", "k3", "re_J0", "im_J0", "re_J1", "im_J1", "re_J2", "im_J2", "re_J3",
                               "im_J3", "gauge_residual"});
    for (const auto& k : grid.nodes()) {
        const FourVector j = loop_current(loop, k);
        std::vector<std::string> row;
        for (std::size_t mu = 0; mu < 4; ++mu) row.push_back(csv_number(k[mu].real()));
        double norm1 = 0.0;
        for (std::size_t mu = 0; mu < 4; ++mu) {
            row.push_back(csv_number(j[mu].real()));
            row.push_back(csv_number(j[mu].imag()));
            norm1 += std::abs(j[mu]);
        }
        const double gauge = norm1 > 0.0 ? std::abs(minkowski(k, j)) / norm1 : 0.0;
        row.push_back(csv_number(gauge));
        out += csv_row(row);
    }
    return {out, true};
}

CommandOutput run_decompose(const SuiteConfig& config) {
    const auto& d = config.decompose;
    std::vector<VertexSpec> vs;
    std::vector<std::size_t> idx;
    for (const auto& v : d.vertices) {
        vs.push_back({VertexKind::Quantum, v.k, v.mu});
        idx.push_back(v.mu);
    }
    const ChainSpec chain(d.mass, d.epsilon, vs);
    const auto dec = pole_terms(chain, d.p, idx);

    auto out = report_header("decompose");
    out["config"] = config_echo(config)["decompose"];
    out["sigma_convention"] = sigma_convention_name(dec.convention);
    out["completeness_residual"] = dec.completeness_residual;
    ojson poles = ojson::array();
    for (const auto& t : dec.terms) poles.push_back(pole_json(t));
    out["pole_terms"] = poles;

    ojson thetas = ojson::array();
    int sign_sum = 0;
    if (!d.classical.empty()) {
        std::vector<ClassicalInsertion> cl;
        for (const auto& c : d.classical) cl.push_back({c.k, c.mu});
        const auto terms = classical_meromorphic_expansion(chain, d.p, idx, cl);
        for (const auto& t : terms) {
            ojson e;
            e["theta"] = t.theta.bits;
            e["sign"] = t.sign;
            e["shift"] = vec_json(t.shift);
            ojson factors = ojson::array();
            for (auto f : t.classical_factors) factors.push_back(complex_json(f));
            e["classical_factors"] = factors;
            e["value"] = matrix_json(t.value);
            thetas.push_back(e);
            sign_sum += t.sign;
        }
        out["theta_sum"] = matrix_json(theta_sum(terms));
    }
    out["theta_terms"] = thetas;
    out["theta_sign_sum"] = sign_sum;
    return {dump(out), true};
}

CommandOutput run_coherent(const SuiteConfig& config) {
    const LoopPath loop(config.loop);
    const auto action = classical_action_extrapolated(loop, action_options(config, true));
    std::string out = csv_row({"k_min", "photon_number", "norm_factor", "phi_cross"});
    for (double k_min : config.coherent.k_min_ladder) {
        GridParameters g = config.grid;
        g.k_min = k_min;
        const auto data = coherent_amplitudes(loop, PhotonModeGrid::build(g));
        out += csv_row({csv_number(k_min), csv_number(data.photon_number), csv_number(data.norm_factor),
                        csv_number(action.value)});
    }
    return {out, true};
}

CommandOutput run_action(const SuiteConfig& config) {
    const LoopPath loop(config.loop);
    const auto r = evaluate_action(loop, action_options(config, !config.action.include_self));
    auto out = report_header("action");
    out["config"] = {{"charge", config.charge}, {"loop", config_echo(config)["loop"]},
                     {"action", config_echo(config)["action"]}};
    out["converged"] = r.converged;
    out["diagnostic"] = r.diagnostic;
    out["value"] = r.value;
    out["error"] = r.error;
    out["self_included"] = r.self_included;
    out["etas"] = r.etas;
    out["ladder"] = r.ladder;
    ojson corners = ojson::array();
    for (auto c : null_corners(loop)) corners.push_back(c);
    out["null_corners"] = corners;
    ojson selfs = ojson::array();
    for (const auto& s : r.self_pairs) {
        selfs.push_back({{"edge", s.edge}, {"values", s.values}, {"divergent", s.divergent}});
    }
    out["self_pairs"] = selfs;
    return {dump(out), r.converged};
}

}  // namespace softqed::harness
