#include "harness/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <set>

#include "core/action.hpp"
#include "core/coherent.hpp"
#include "core/current.hpp"
#include "core/error.hpp"
#include "core/insertion.hpp"
#include "core/meromorphic.hpp"
#include "core/random.hpp"
#include "harness/kinematics.hpp"
#include "harness/oracles.hpp"
#include "harness/report.hpp"

namespace softqed::harness {

namespace {

const complex I{0.0, 1.0};
constexpr int kMaxDraws = 100000;

[[noreturn]] void too_many_draws(const char* what) {
    throw Error(ErrorCode::InvalidArgument, std::string("could not draw admissible kinematics for ") + what);
}

kin::Pair draw_pair(Rng& rng, const KinematicsRanges& k, double lambda_max, double margin) {
    for (int i = 0; i < kMaxDraws; ++i) {
        const FourVector p = rng.four_vector(-k.p_range, k.p_range);
        const FourVector q = rng.four_vector(-k.k_range, k.k_range);
        if (kin::path_margin(p, q, k.mass, lambda_max) >= margin * k.mass * k.mass) return {p, q};
    }
    too_many_draws("a shift path");
}

double l1(const FourVector& v) {
    double s = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu) s += std::abs(v[mu]);
    return s;
}

// ---- algebra and insertions ----

CheckOutcome clifford(const CheckContext&) {
    double worst = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
            const DiracMatrix ac = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            worst = std::max(worst, max_abs(ac - 2.0 * MetricConvention::g(mu, nu) * identity4()));
        }
    }
    return {worst, 16};
}

CheckOutcome ward(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto [p, k] = draw_pair(rng, c.kinematics, 1.0, c.kinematics.margin);
        worst = std::max(worst, ward_identity_residual(p, k, c.kinematics.mass));
    }
    return {worst, 100};
}

CheckOutcome derivative_order(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto [p, k] = draw_pair(rng, c.kinematics, 0.0, c.kinematics.margin);
        (void)k;
        const std::size_t mu = static_cast<std::size_t>(rng.below(4));
        const double h = 1e-2;
        const double r1 = derivative_identity_residual(p, mu, c.kinematics.mass, h);
        const double r2 = derivative_identity_residual(p, mu, c.kinematics.mass, 0.5 * h);
        worst = std::max(worst, std::abs(std::log2(r1 / r2) - 2.0));
    }
    return {worst, 20};
}

CheckOutcome telescoping(const CheckContext& c) {
    Rng rng(c.seed);
    const double m = c.kinematics.mass;
    const ChainSpec bare(m, 0.0, {});
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto [p, k] = draw_pair(rng, c.kinematics, 1.0, c.kinematics.margin);
        DiracMatrix sum = DiracMatrix::Zero();
        for (std::size_t mu = 0; mu < 4; ++mu) sum += k[mu] * apply_C_hat(bare, p, {}, k, mu).value;
        const DiracMatrix expected = -I * (propagator(p + k, m, 0.0) - propagator(p, m, 0.0));
        worst = std::max(worst, max_abs(sum - expected) / (1.0 + max_abs(expected)));
    }
    return {worst, 50};
}

CheckOutcome commutativity(const CheckContext& c) {
    Rng rng(c.seed);
    const double m = c.kinematics.mass;
    const double margin = std::max(c.kinematics.margin, 0.2) * m * m;
    const FourVector kv{0.1, 0.0, 0.2, 0.0};
    const ChainSpec chain(m, 0.0, {{VertexKind::PlainGamma, kv, 2}});
    const std::size_t idx[] = {2};
    InsertionOptions o;
    o.rel_tolerance = 1e-6;
    double worst = 0.0;
    int done = 0;
    for (int draws = 0; done < 20; ++draws) {
        if (draws > kMaxDraws) too_many_draws("commuting insertions");
        const FourVector p = rng.four_vector(-c.kinematics.p_range, c.kinematics.p_range);
        const FourVector k1 = rng.four_vector(-0.3, 0.3);
        const FourVector k2 = rng.four_vector(-0.3, 0.3);
        if (kin::path_margin(p, k1, m, 1.0) < margin || kin::path_margin(p, k2, m, 1.0) < margin ||
            kin::path_margin(p + k1, k2, m, 1.0) < margin || kin::path_margin(p + k2, k1, m, 1.0) < margin ||
            kin::path_margin(p + kv, k1 + k2, m, 1.0) < margin || kin::path_margin(p + kv, k1, m, 1.0) < margin ||
            kin::path_margin(p + kv, k2, m, 1.0) < margin || kin::path_margin(p + kv + k1, k2, m, 1.0) < margin ||
            kin::path_margin(p + kv + k2, k1, m, 1.0) < margin) {
            continue;
        }
        const std::size_t mu1 = static_cast<std::size_t>(rng.below(4));
        const std::size_t mu2 = static_cast<std::size_t>(rng.below(4));
        const ClassicalPhoton ab[] = {{k1, mu1}, {k2, mu2}};
        const ClassicalPhoton ba[] = {{k2, mu2}, {k1, mu1}};
        const DiracMatrix x = apply_C_hat_sequence(chain, p, idx, ab, o).value;
        const DiracMatrix y = apply_C_hat_sequence(chain, p, idx, ba, o).value;
        worst = std::max(worst, max_abs(x - y) / max_abs(x));
        ++done;
    }
    return {worst, 20};
}

// ---- pole decomposition ----

ChainSpec random_chain(Rng& rng, const KinematicsRanges& k, std::size_t n, std::vector<std::size_t>& idx) {
    std::vector<VertexSpec> vs;
    idx.clear();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t mu = static_cast<std::size_t>(rng.below(4));
        vs.push_back({VertexKind::Quantum, rng.four_vector(-k.k_range, k.k_range), mu});
        idx.push_back(mu);
    }
    return ChainSpec(k.mass, 0.0, vs);
}

CheckOutcome pole_completeness(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    std::size_t samples = 0;
    for (std::size_t n = 0; n <= 2; ++n) {
        int done = 0;
        for (int draws = 0; done < 50; ++draws) {
            if (draws > kMaxDraws) too_many_draws("pole decomposition");
            std::vector<std::size_t> idx;
            const ChainSpec chain = random_chain(rng, c.kinematics, n, idx);
            const FourVector p = rng.four_vector(-c.kinematics.p_range, c.kinematics.p_range);
            try {
                const auto d = pole_terms(chain, p, idx);
                if (d.terms.size() != n + 1) return {std::numeric_limits<double>::infinity(), samples};
                worst = std::max(worst, d.completeness_residual);
                ++done;
                ++samples;
            } catch (const Error& e) {
                // near-shell or coincident-shell draws are redrawn
                if (e.code() != ErrorCode::SingularMatrix && e.code() != ErrorCode::DegeneratePoles) throw;
            }
        }
    }
    return {worst, samples};
}

CheckOutcome degenerate_rejected(const CheckContext& c) {
    Rng rng(c.seed);
    const double m = c.kinematics.mass;
    std::size_t missed = 0;
    std::size_t samples = 0;
    for (int i = 0; i < 10; ++i) {
        const FourVector p = rng.four_vector(-c.kinematics.p_range, c.kinematics.p_range);
        const FourVector k = rng.four_vector(-c.kinematics.k_range, c.kinematics.k_range);
        // a zero-momentum vertex puts two propagators on the same shell
        const std::vector<std::vector<VertexSpec>> cases{
            {{VertexKind::Quantum, FourVector{}, 1}},
            {{VertexKind::Quantum, k, 1}, {VertexKind::Quantum, FourVector{}, 2}},
            {{VertexKind::Quantum, FourVector{}, 0}, {VertexKind::Quantum, k, 3}},
        };
        for (const auto& vs : cases) {
            std::vector<std::size_t> idx;
            for (const auto& v : vs) idx.push_back(v.lorentz_index);
            ++samples;
            try {
                (void)pole_terms(ChainSpec(m, 0.0, vs), p, idx);
                ++missed;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::SingularMatrix) {
                    --samples;
                    continue;
                }
                if (e.code() != ErrorCode::DegeneratePoles) ++missed;
            }
        }
    }
    return {static_cast<double>(missed), samples};
}

struct PoleSetup {
    ChainSpec chain;
    std::vector<std::size_t> idx;
    FourVector pole;
};

PoleSetup pole_setup(std::size_t n) {
    std::vector<VertexSpec> vs{{VertexKind::Quantum, FourVector{0.3, 0.1, 0.05, -0.1}, 1},
                               {VertexKind::Quantum, FourVector{0.25, -0.05, 0.1, 0.02}, 2}};
    vs.resize(n);
    std::vector<std::size_t> idx{1, 2};
    idx.resize(n);
    return {ChainSpec(1.0, 0.0, vs), idx, FourVector{std::sqrt(1.14), 0.2, -0.1, 0.3}};
}

CheckOutcome residue_match(const CheckContext&) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto s = pole_setup(n);
        InsertionOptions o;
        o.rel_tolerance = 1e-4;
        o.abs_tolerance = 0.0;
        o.quadrature.rel_tol = n == 1 ? 1e-8 : 1e-6;
        o.quadrature.order = 16;
        o.quadrature.check_order = 8;
        auto full = [&](const FourVector& q) { return eval_quantum_chain(s.chain, q, s.idx, o).value; };
        const double ts[] = {1e-2, 1e-3, 1e-4};
        const auto ex = extract_residue(full, s.pole, 1.0, ts);
        const DiracMatrix ds = dominant_residue(s.chain, 0, s.pole, s.idx);
        worst = std::max(worst, max_abs(ex.value - ds) / max_abs(ds));
    }
    return {worst, 2};
}

CheckOutcome symmetric_contraction(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const FourVector p = rng.four_vector(-c.kinematics.p_range, c.kinematics.p_range);
        const FourVector k = rng.four_vector(-c.kinematics.k_range, c.kinematics.k_range);
        std::array<std::array<complex, 4>, 4> s{};
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) s[a][b] = p.lower(a) * p.lower(b);
        for (std::size_t mu = 0; mu < 4; ++mu) worst = std::max(worst, std::abs(antisymmetric_contraction(k, s, mu)));
    }
    return {worst, 20};
}

CheckOutcome soft_scaling(const CheckContext&) {
    const auto s = pole_setup(2);
    const double ts[] = {1e-1, 1e-2, 1e-3};
    const std::vector<std::vector<std::size_t>> cases{{1}, {2}, {1, 2}};
    double worst = 0.0;
    for (const auto& scaled : cases) {
        const auto fit = residue_soft_scaling(s.chain, 0, s.pole, s.idx, scaled, ts);
        worst = std::max(worst, std::abs(fit.alpha - static_cast<double>(adjacent_scaled_count(0, scaled))));
    }
    return {worst, cases.size()};
}

CheckOutcome theta_signs(const CheckContext&) {
    double bad = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto thetas = enumerate_theta(n);
        int sum = 0;
        std::set<std::vector<int>> seen;
        for (const auto& t : thetas) {
            sum += t.sign();
            seen.insert(t.bits);
        }
        bad += std::abs(sum);
        bad += std::abs(static_cast<double>(seen.size()) - static_cast<double>(std::size_t{1} << n));
        bad += std::abs(static_cast<double>(thetas.size()) - static_cast<double>(std::size_t{1} << n));
    }
    return {bad, 3};
}

CheckOutcome theta_crosscheck(const CheckContext& c) {
    Rng rng(c.seed);
    const double m = c.kinematics.mass;
    const ChainSpec bare(m, 0.0, {});
    double worst = 0.0;
    int done = 0;
    for (int draws = 0; done < 5; ++draws) {
        if (draws > kMaxDraws) too_many_draws("the one-photon cross-check");
        const auto [p, k] = draw_pair(rng, c.kinematics, 1.0, std::max(c.kinematics.margin, 0.2));
        if (std::abs(minkowski(p, k)) < 0.05 || std::abs(minkowski(p + k, k)) < 0.05) continue;
        const std::size_t mu = static_cast<std::size_t>(rng.below(4));
        const ClassicalInsertion ins[] = {{k, mu}};
        InsertionOptions o;
        o.quadrature.rel_tol = 1e-12;
        const DiracMatrix quad = apply_C_hat(bare, p, {}, k, mu, o).value;
        const auto terms = classical_meromorphic_expansion(bare, p, {}, ins);
        const DiracMatrix rebuilt = theta_sum(terms) + oracle::theta_remainder(p, k, mu, m);
        worst = std::max(worst, max_abs(quad - rebuilt) / max_abs(quad));
        ++done;
    }
    return {worst, 5};
}

// ---- classical current ----

CheckOutcome gauge(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<FourVector> xs;
        const std::size_t n = 3 + static_cast<std::size_t>(rng.below(4));
        for (std::size_t v = 0; v < n; ++v) xs.push_back(rng.four_vector(-3.0, 3.0));
        const LoopPath loop(xs);
        const FourVector k = rng.four_vector(-2.0, 2.0);
        const FourVector j = loop_current(loop, k);
        worst = std::max(worst, std::abs(minkowski(k, j)) / l1(j));
    }
    return {worst, 1000};
}

CheckOutcome segment_brute(const CheckContext& c) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const FourVector xm = rng.four_vector(-1.0, 1.0);
        const FourVector xp = rng.four_vector(-1.0, 1.0);
        const FourVector k = rng.four_vector(-2.0, 2.0);
        worst = std::max(worst, (segment_current(xm, xp, k) - oracle::brute_segment_current(xm, xp, k)).max_abs());
    }
    return {worst, 20};
}

CheckOutcome ir_log(const CheckContext&) {
    const LoopPath loop = oracle::mesoscopic_triangle();
    auto j = [&](const FourVector& k) { return loop_current(loop, k); };
    Eigen::MatrixXd a(4, 2);
    Eigen::VectorXd b(4);
    int row = 0;
    for (double kmin : {1e-1, 1e-2, 1e-3, 1e-4}) {
        a(row, 0) = 1.0;
        a(row, 1) = std::log(1.0 / kmin);
        b(row) = pairing(j, j, PhotonModeGrid::build({kmin, 1.0, 48, 16})).real();
        ++row;
    }
    const Eigen::VectorXd fit = a.colPivHouseholderQr().solve(b);
    if (!(fit(1) > 0.0)) return {std::numeric_limits<double>::infinity(), 4};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.row(i).dot(fit) - b(i)) / b(i));
    return {worst, 4};
}

// ---- coherent state ----

struct UnitarySample {
    std::vector<complex> alphas;
    double phase = 0.0;
};

std::vector<UnitarySample> unitary_samples(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<UnitarySample> out;
    for (int i = 0; i < 10; ++i) {
        UnitarySample s;
        const std::size_t modes = 1 + static_cast<std::size_t>(rng.below(2));
        for (std::size_t m = 0; m < modes; ++m) {
            s.alphas.push_back(std::polar(0.5 * std::sqrt(rng.unit()), rng.uniform(-std::numbers::pi, std::numbers::pi)));
        }
        s.phase = rng.uniform(-std::numbers::pi, std::numbers::pi);
        out.push_back(s);
    }
    return out;
}

CheckOutcome unitarity(const CheckContext& c) {
    double worst = 0.0;
    const auto samples = unitary_samples(c.seed);
    for (const auto& s : samples) worst = std::max(worst, truncated_U(s.alphas, 12, s.phase).unitarity_residual);
    return {worst, samples.size()};
}

CheckOutcome vacuum_norm(const CheckContext& c) {
    double worst = 0.0;
    const auto samples = unitary_samples(c.seed);
    for (const auto& s : samples) {
        const auto r = truncated_U(s.alphas, 12, s.phase);
        if (r.vacuum_norm_deviation > 0.0) {
            worst = std::max(worst, r.vacuum_norm_deviation / std::max(r.truncation_bound, 1e-300));
        }
    }
    return {worst, samples.size()};
}

CheckOutcome vacuum_overlap(const CheckContext& c) {
    double worst = 0.0;
    const auto samples = unitary_samples(c.seed);
    for (const auto& s : samples) {
        const auto r = truncated_U(s.alphas, 12, s.phase);
        double n2 = 0.0;
        for (auto a : s.alphas) n2 += std::norm(a);
        worst = std::max(worst, std::abs(r.vacuum_overlap - std::exp(complex(-0.5 * n2, s.phase))));
    }
    return {worst, samples.size()};
}

// ---- classical action ----

CheckOutcome action_oracle(const CheckContext&) {
    double worst = 0.0;
    for (const LoopPath& loop : {oracle::skew_quadrilateral(), oracle::spatial_triangle()}) {
        const double expected = oracle::cross_action(loop);
        const double got = classical_action_extrapolated(loop).value;
        worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
    return {worst, 2};
}

CheckOutcome action_charge(const CheckContext&) {
    const LoopPath loop = oracle::skew_quadrilateral();
    const double eta = 1e-2 * default_eta_scale(loop);
    const double base = classical_action(loop, eta, true, 1.0);
    double worst = 0.0;
    for (double e : {0.5, 2.0, 3.0}) {
        const double scaled = classical_action(loop, eta, true, e);
        worst = std::max(worst, std::abs(scaled - e * e * base) / std::abs(e * e * base));
    }
    ActionOptions zero;
    zero.charge = 0.0;
    worst = std::max(worst, std::abs(classical_action_extrapolated(loop, zero).value));
    return {worst, 4};
}

CheckOutcome self_edge(const CheckContext&) {
    ActionOptions o;
    o.exclude_self = false;
    const auto r = evaluate_action(oracle::skew_quadrilateral(), o);
    double bad = r.converged ? 1.0 : 0.0;
    for (const auto& s : r.self_pairs) bad += s.divergent ? 0.0 : 1.0;
    if (r.self_pairs.empty()) bad += 1.0;
    return {bad, r.self_pairs.size()};
}

std::string digest(const CheckDefinition& d, const CheckContext& c, double tolerance) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s|%llu|%.17g|%.17g|%.17g|%.17g|%.17g", d.name.c_str(),
                  static_cast<unsigned long long>(c.seed), c.kinematics.mass, c.kinematics.p_range,
                  c.kinematics.k_range, c.kinematics.margin, tolerance);
    return hex64(fnv1a(buf));
}

}  // namespace

const std::vector<CheckDefinition>& check_registry() {
    static const std::vector<CheckDefinition> registry{
        {"clifford_anticommutator", "{gamma^mu, gamma^nu} = 2 g^{mu nu} I", 1e-14, clifford},
        {"ward_identity", "kslash = (pslash + kslash - m) - (pslash - m)", 1e-10, ward},
        {"derivative_identity_order", "d/dp^mu of the inverse propagator: central-difference order 2", 0.4,
         derivative_order},
        {"c_hat_telescoping", "k^mu C_mu[R](p) = -i (R(p+k) - R(p))", 1e-8, telescoping},
        {"c_hat_commutativity", "C_mu(k1) C_nu(k2) = C_nu(k2) C_mu(k1) on a chain", 1e-7, commutativity},
        {"pole_completeness", "sum of simple-pole terms = chain, n = 0, 1, 2", 1e-8, pole_completeness},
        {"degenerate_poles_rejected", "coincident mass shells raise DegeneratePoles", 0.0, degenerate_rejected},
        {"residue_extraction", "extrapolated residue = dominant singularity, n = 1, 2", 1e-2, residue_match},
        {"symmetric_contraction_zero", "antisymmetric vertex kills symmetric numerators exactly", 0.0,
         symmetric_contraction},
        {"soft_scaling_exponent", "residue ~ t^alpha, alpha = adjacent soft vertices", 0.05, soft_scaling},
        {"theta_sign_sum", "2^N theta vectors, sum of signs zero", 0.0, theta_signs},
        {"theta_one_photon_crosscheck", "theta expansion + remainder = C quadrature, N = 1", 1e-6, theta_crosscheck},
        {"gauge_condition", "k.J(k) = 0 for closed loops", 1e-12, gauge},
        {"segment_closed_form", "closed-form segment current = line integral", 1e-10, segment_brute},
        {"ir_log_spectrum", "<J*.J>(k_min) = a + b ln(1/k_min)", 2e-2, ir_log},
        {"truncated_unitarity", "|U^dagger U - I| for truncated displacement", 1e-8, unitarity},
        {"vacuum_norm_within_bound", "| |U|0>| - 1 | / declared truncation bound", 1.0, vacuum_norm},
        {"vacuum_overlap", "<0|U|0> = exp(-|alpha|^2/2 + i phi)", 1e-8, vacuum_overlap},
        {"action_cross_oracle", "eta-extrapolated cross-edge action = root-locus quadrature", 1e-2,
         action_oracle},
        {"action_charge_scaling", "phi(e) = e^2 phi(1)", 1e-15, action_charge},
        {"self_edge_divergence", "self-edge pairs flagged divergent, never summed", 0.0, self_edge},
    };
    return registry;
}

std::vector<std::string> check_names() {
    std::vector<std::string> out;
    for (const auto& d : check_registry()) out.push_back(d.name);
    return out;
}

CheckRecord run_check(const SuiteConfig& config, const CheckDefinition& def) {
    CheckRecord rec;
    rec.name = def.name;
    rec.tag = def.tag;
    auto it = config.tolerances.find(def.name);
    rec.tolerance = it == config.tolerances.end() ? def.default_tolerance : it->second;
    CheckContext ctx{derive_seed(config.seed, def.name), config.kinematics};
    rec.seed = ctx.seed;
    rec.inputs_digest = digest(def, ctx, rec.tolerance);
    try {
        const auto out = def.run(ctx);
        rec.residual = out.residual;
        rec.samples = out.samples;
        rec.pass = std::isfinite(out.residual) && out.residual <= rec.tolerance;
    } catch (const std::exception& e) {
        rec.residual = std::numeric_limits<double>::quiet_NaN();
        rec.pass = false;
        rec.error = e.what();
    }
    return rec;
}

CheckRecord run_check(const SuiteConfig& config, std::string_view name) {
    for (const auto& def : check_registry()) {
        if (def.name == name) return run_check(config, def);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown check " + std::string(name));
}

std::vector<CheckRecord> run_checks(const SuiteConfig& config) {
    std::vector<std::future<CheckRecord>> jobs;
    for (const auto& def : check_registry()) {
        jobs.push_back(std::async(std::launch::async, [&config, &def] { return run_check(config, def); }));
    }
    std::vector<CheckRecord> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

nlohmann::ordered_json verify_report(const SuiteConfig& config, bool& all_pass) {
    const auto records = run_checks(config);
    auto out = report_header("verify");
    out["generator"] = kGeneratorName;
    out["seed"] = config.seed;
    out["config"] = config_echo(config);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : records) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["tag"] = r.tag;
        c["seed"] = r.seed;
        c["inputs_digest"] = r.inputs_digest;
        if (std::isfinite(r.residual)) {
            c["residual"] = r.residual;
        } else {
            c["residual"] = nullptr;
        }
        c["tolerance"] = r.tolerance;
        c["samples"] = r.samples;
        c["pass"] = r.pass;
        if (!r.error.empty()) c["error"] = r.error;
        checks.push_back(c);
        passed += r.pass ? 1 : 0;
    }
    out["checks"] = checks;
    all_pass = passed == records.size();
    out["summary"] = {{"total", records.size()}, {"passed", passed}, {"failed", records.size() - passed}};
    return out;
}

}  // namespace softqed::harness
