// Acceptance runner: one PASS/FAIL line per criterion, driven through the C API.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "softqed/softqed.h"

namespace {

struct Criterion {
    int id;
    const char* title;
    std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria{
    {1, "Clifford/metric anticommutators", {"clifford_anticommutator"}},
    {2, "Ward identity at 100 off-shell points", {"ward_identity"}},
    {3, "Derivative identity, central-difference order 2", {"derivative_identity_order"}},
    {4, "k-contraction of C on one propagator telescopes", {"c_hat_telescoping"}},
    {5, "Multiple C insertions commute", {"c_hat_commutativity"}},
    {6, "Pole decomposition complete; degenerate shells rejected", {"pole_completeness", "degenerate_poles_rejected"}},
    {7, "Residues, symmetric contraction, soft scaling",
     {"residue_extraction", "symmetric_contraction_zero", "soft_scaling_exponent"}},
    {8, "Theta expansion signs and one-photon cross-check", {"theta_sign_sum", "theta_one_photon_crosscheck"}},
    {9, "Gauge condition and segment closed form", {"gauge_condition", "segment_closed_form"}},
    {10, "Infrared logarithm of the photon spectrum", {"ir_log_spectrum"}},
    {11, "Truncated displacement operator", {"truncated_unitarity", "vacuum_norm_within_bound", "vacuum_overlap"}},
    {12, "Classical action: oracle, charge scaling, self-edge divergence",
     {"action_cross_oracle", "action_charge_scaling", "self_edge_divergence"}},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_verify(const sq_config* config, bool& ok) {
    sq_buffer* buf = nullptr;
    int passed = 0;
    const sq_status s = sq_run(config, SQ_CMD_VERIFY, &buf, &passed);
    if (s != SQ_OK) {
        std::printf("verify failed: %s: %s\n", sq_status_name(s), sq_last_error());
        ok = false;
        return {};
    }
    std::string text(sq_buffer_data(buf), sq_buffer_size(buf));
    sq_buffer_free(buf);
    ok = true;
    return text;
}

}  // namespace

int main() {
    sq_config* config = nullptr;
    if (sq_config_default(&config) != SQ_OK) return 1;
    const auto t0 = std::chrono::steady_clock::now();

    bool ok1 = false, ok2 = false;
    const std::string first = run_verify(config, ok1);
    const double suite_seconds = seconds_since(t0);
    const std::string second = run_verify(config, ok2);
    if (!ok1 || !ok2) return 1;

    std::map<std::string, nlohmann::json> by_name;
    const auto report = nlohmann::json::parse(first);
    for (const auto& c : report["checks"]) by_name[c["name"].get<std::string>()] = c;

    // Runtime bound of criterion 2 measured on its own.
    const auto tw = std::chrono::steady_clock::now();
    int ward_pass = 0;
    sq_run_check(config, "ward_identity", nullptr, nullptr, &ward_pass);
    const double ward_seconds = seconds_since(tw);

    int failures = 0;
    for (const auto& cr : kCriteria) {
        bool pass = true;
        std::string detail;
        for (const auto& name : cr.checks) {
            auto it = by_name.find(name);
            if (it == by_name.end()) {
                pass = false;
                detail += " " + name + "=missing";
                continue;
            }
            const auto& c = it->second;
            pass = pass && c["pass"].get<bool>();
            char buf[160];
            if (c["residual"].is_number()) {
                std::snprintf(buf, sizeof buf, " %s=%.3g/%.3g", name.c_str(), c["residual"].get<double>(),
                              c["tolerance"].get<double>());
            } else {
                std::snprintf(buf, sizeof buf, " %s=error", name.c_str());
            }
            detail += buf;
        }
        if (cr.id == 2) {
            pass = pass && ward_pass && ward_seconds < 1.0;
            char buf[64];
            std::snprintf(buf, sizeof buf, " runtime=%.3fs", ward_seconds);
            detail += buf;
        }
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d: %s:%s\n", pass ? "PASS" : "FAIL", cr.id, cr.title, detail.c_str());
    }

    const bool identical = first == second;
    const bool in_budget = suite_seconds < 300.0;
    failures += (identical && in_budget) ? 0 : 1;
    std::printf("%s criterion 13: Byte-identical reports for identical configs: %s, %zu bytes, suite %.1fs\n",
                identical && in_budget ? "PASS" : "FAIL", identical ? "identical" : "DIFFERENT", first.size(),
                suite_seconds);

    sq_config_free(config);
    return failures == 0 ? 0 : 1;
}
