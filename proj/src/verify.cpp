#include "posmap/verify.hpp"

#include "posmap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace posmap {

namespace {

constexpr std::uint64_t kSuiteStream = 0x5e1f000000000000ULL;
constexpr std::uint64_t kBlock = 0x100000000ULL;  // per-suite stream spacing

SuperMap random_map(std::size_t n, CounterRng& rng) {
    return SuperMap(n, n, random_gaussian_matrix(n * n, n * n, rng));
}

SuperMap random_hermitian_choi_map(std::size_t n, CounterRng& rng) {
    return SuperMap(n, n, random_hermitian(n * n, rng));
}

SuperMap random_cp_map(std::size_t n, std::size_t terms, CounterRng& rng) {
    std::vector<std::pair<double, SuperMap>> parts;
    for (std::size_t t = 0; t < terms; ++t)
        parts.emplace_back(1.0, ad_v(random_gaussian_matrix(n, n, rng)));
    return sum_maps(parts);
}

Complex trace_prod(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a * b).trace();
}

ComplexMatrix canonical_v() {
    ComplexMatrix v(2, 2);
    v(0, 0) = 1.0; v(0, 1) = 2.0;
    v(1, 0) = 2.0; v(1, 1) = 3.0;
    return v;
}

std::string fmt(const char* label, double v) {
    return std::string(label) + " = " + format_sig(v);
}

} // namespace

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string digest(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_sig(values[i]);
    }
    return out;
}

SuiteResult run_compose_identity_suite(std::size_t dim, int trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "compose-identities";
    const ComplexMatrix p = max_entangled_p(dim);
    double max_state = 0.0, max_functional = 0.0;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, kSuiteStream + 1 * kBlock + static_cast<std::uint64_t>(t));
        const SuperMap phi = random_map(dim, rng);
        const SuperMap psi = random_map(dim, rng);
        const ComplexMatrix x = random_gaussian_matrix(dim * dim, dim * dim, rng);

        const ComplexMatrix route = apply(tensor(star_t(psi), phi), p);
        max_state = std::max(max_state, (route - compose(phi, psi).choi()).frobenius_norm());

        const Complex f1 = tilde_apply(compose(phi, psi), x);
        const Complex f2 =
            trace_prod(apply(tensor(adjoint(psi), transpose_conj(phi)), p), x);
        max_functional = std::max(max_functional, std::abs(f1 - f2));
    }
    res.values = {max_state, max_functional};
    res.max_residual = std::max(max_state, max_functional);
    res.pass = res.max_residual <= 1e-9;
    res.lines.push_back(fmt("composite choi via entangled state, max Frobenius residual", max_state));
    res.lines.push_back(fmt("composite functional via adjoint/transpose split, max residual",
                            max_functional));
    return res;
}

SuiteResult run_functional_identity_suite(std::size_t dim, int trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "functional-identities";
    const ComplexMatrix p = max_entangled_p(dim);
    const SuperMap id = identity_map(dim);
    double r_contract = 0.0, r_chain = 0.0, r_id = 0.0, r_pi = 0.0, r_elem = 0.0;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, kSuiteStream + 2 * kBlock + static_cast<std::uint64_t>(t));
        const SuperMap phi = random_map(dim, rng);
        const ComplexMatrix x = random_gaussian_matrix(dim * dim, dim * dim, rng);
        const ComplexMatrix a = random_gaussian_matrix(dim, dim, rng);
        const ComplexMatrix b = random_gaussian_matrix(dim, dim, rng);

        const Complex v0 = tilde_apply(phi, x);
        r_contract = std::max(
            r_contract,
            std::abs(v0 - pi_contract(apply(tensor(id, star_t(phi)), x)).trace()));
        r_chain = std::max(
            r_chain, std::abs(v0 - trace_prod(apply(tensor(id, transpose_conj(phi)), p), x)));
        r_id = std::max(r_id, std::abs(tilde_apply(id, x) - trace_prod(p, x)));
        r_pi = std::max(r_pi, std::abs(pi_contract(x).trace() - trace_prod(p, x)));
        r_elem = std::max(r_elem, std::abs(tilde_apply(phi, kron(a, b)) -
                                           trace_prod(apply(phi, a), b.transpose())));
    }
    res.values = {r_contract, r_chain, r_id, r_pi, r_elem};
    res.max_residual = *std::max_element(res.values.begin(), res.values.end());
    res.pass = res.max_residual <= 1e-9;
    res.lines.push_back(fmt("functional via trace-contraction route, max residual", r_contract));
    res.lines.push_back(fmt("functional via entangled-state density, max residual", r_chain));
    res.lines.push_back(fmt("identity-map functional vs entangled-state trace", r_id));
    res.lines.push_back(fmt("contraction trace vs entangled-state trace", r_pi));
    res.lines.push_back(fmt("elementary tensors vs direct evaluation", r_elem));
    return res;
}

SuiteResult run_adjoint_identity_suite(std::size_t dim, int trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "adjoint-identities";
    const SuperMap t_map = transpose_map(dim);
    double r_conj = 0.0, r_transpose = 0.0, r_troute = 0.0, r_duality = 0.0, r_inv = 0.0;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, kSuiteStream + 3 * kBlock + static_cast<std::uint64_t>(t));
        const SuperMap h = random_hermitian_choi_map(dim, rng);
        const SuperMap g = random_map(dim, rng);
        const ComplexMatrix a = random_gaussian_matrix(dim, dim, rng);
        const ComplexMatrix b = random_gaussian_matrix(dim, dim, rng);

        r_conj = std::max(r_conj, max_abs_diff(adjoint(h).choi(), j_conjugate(h.choi())));
        r_transpose =
            std::max(r_transpose, max_abs_diff(transpose_conj(h).choi(), h.choi().transpose()));
        r_troute = std::max(r_troute, max_abs_diff(transpose_conj(g).choi(),
                                                   compose(t_map, compose(g, t_map)).choi()));
        r_duality = std::max(
            r_duality, std::abs(trace_prod(apply(g, a), b) - trace_prod(a, apply(adjoint(g), b))));
        r_inv = std::max(r_inv, max_abs_diff(adjoint(adjoint(g)).choi(), g.choi()));
        r_inv = std::max(r_inv, max_abs_diff(transpose_conj(transpose_conj(g)).choi(), g.choi()));
    }
    res.values = {r_conj, r_transpose, r_troute, r_duality, r_inv};
    res.max_residual = *std::max_element(res.values.begin(), res.values.end());
    res.pass = res.max_residual <= 1e-10;
    res.lines.push_back(fmt("adjoint choi vs conjugation formula (hermitian chois)", r_conj));
    res.lines.push_back(fmt("transpose choi vs transposed choi", r_transpose));
    res.lines.push_back(fmt("transpose via t∘φ∘t composition route", r_troute));
    res.lines.push_back(fmt("trace duality on random maps and inputs", r_duality));
    res.lines.push_back(fmt("double adjoint and double transpose return", r_inv));
    return res;
}

SuiteResult run_symmetry_agreement_suite(std::size_t dim, int trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "symmetry-agreement";
    const SymmetryDiagnostics d_t = check_star_t_symmetry(transpose_map(2));
    const SymmetryDiagnostics d_v = check_star_t_symmetry(ad_v(canonical_v()));
    const SymmetryDiagnostics d_u = check_star_t_symmetry(ad_v(matrix_unit(2, 1, 2)));
    bool canonical_ok = d_t.symmetric && d_v.symmetric && !d_u.symmetric;
    res.lines.push_back(std::string("transpose map symmetric: ") +
                        (d_t.symmetric ? "yes" : "NO"));
    res.lines.push_back(std::string("real symmetric conjugation symmetric: ") +
                        (d_v.symmetric ? "yes" : "NO"));
    res.lines.push_back(std::string("nilpotent conjugation symmetric: ") +
                        (d_u.symmetric ? "YES" : "no"));

    const ComplexMatrix flip = flip_operator(dim);
    int agreements = 0;
    double max_gap = 0.0;  // largest defect disagreement between the two routes
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, kSuiteStream + 4 * kBlock + static_cast<std::uint64_t>(t));
        SuperMap m = random_hermitian_choi_map(dim, rng);
        if (t % 2 == 0) {
            // symmetrize: keep the real part, average with the transpose and
            // with the flip conjugate, all of which preserve hermiticity
            ComplexMatrix c = m.choi();
            ComplexMatrix re(c.rows(), c.cols());
            for (std::size_t r = 0; r < c.rows(); ++r)
                for (std::size_t s = 0; s < c.cols(); ++s) re(r, s) = c(r, s).real();
            ComplexMatrix sym = re + re.transpose();
            ComplexMatrix flipped = flip * sym * flip;
            m = SuperMap(dim, dim, sym + flipped);
        }
        const SymmetryDiagnostics d = check_star_t_symmetry(m);
        const bool direct = d.adjoint_defect <= 1e-10 && d.transpose_defect <= 1e-10;
        if (direct == d.symmetric) ++agreements;
        max_gap = std::max(max_gap, std::abs(std::max(d.imag_defect,
                                                      std::max(d.symmetry_defect, d.flip_defect)) -
                                             std::max(d.adjoint_defect, d.transpose_defect)));
    }
    res.values = {d_t.flip_defect, d_v.flip_defect, d_u.flip_defect,
                  static_cast<double>(agreements), max_gap};
    res.pass = canonical_ok && agreements == trials;
    res.lines.push_back("choi-level vs direct-equality agreement: " + std::to_string(agreements) +
                        "/" + std::to_string(trials));
    return res;
}

SuiteResult run_cp_selfdual_suite(std::size_t dim, int trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "cp-selfdual";
    const MappingCone cone = cp_cone(dim);
    SearchConfig cfg;
    cfg.seed = seed;
    double min_pair = std::numeric_limits<double>::infinity();
    double min_state = std::numeric_limits<double>::infinity();
    bool rejected = false;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, kSuiteStream + 5 * kBlock + static_cast<std::uint64_t>(t));
        const SuperMap phi = random_cp_map(dim, 1 + t % 2, rng);
        const SuperMap psi = random_cp_map(dim, 1 + (t / 2) % 2, rng);
        min_pair = std::min(min_pair, pairing(phi, psi));
        if (t % 50 == 0) {
            const MembershipReport rep = falsify_dual_membership(cone, phi, 2, cfg);
            rejected = rejected || rep.status == MembershipStatus::NotMember;
            min_state = std::min(min_state, rep.min_value);
        }
    }
    res.values = {min_pair, min_state};
    res.pass = !rejected && min_pair >= -1e-12;
    res.lines.push_back(fmt("minimum pairing across CP pairs", min_pair));
    res.lines.push_back(fmt("minimum eigenvalue in dual-cone sampling", min_state));
    if (rejected) res.lines.push_back("dual-cone sampling rejected a CP candidate");
    return res;
}

SuiteResult run_cone_duality_demo(std::uint64_t seed) {
    SuiteResult res;
    res.name = "cone-duality";
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.psd_samples = 64;

    struct Case {
        const char* label;
        MappingCone cone;
        SuperMap phi;
        bool expect_falsified;
    };
    const std::vector<Case> cases = {
        {"CP cone vs conjugation map", cp_cone(2), ad_v(canonical_v()), false},
        {"co-CP cone vs identity map", cocp_cone(2), identity_map(2), true},
        {"co-CP cone vs reduction map", cocp_cone(2), reduction_map(2), false},
    };
    res.pass = true;
    for (const Case& c : cases) {
        const ConeDualityReport rep = verify_theorem2(c.cone, c.phi, 6, cfg);
        const bool any = rep.cond_compose_falsified || rep.cond_tensor_falsified ||
                         rep.cond_state_falsified;
        const bool all = rep.cond_compose_falsified && rep.cond_tensor_falsified &&
                         rep.cond_state_falsified;
        const bool ok = rep.consistent && (c.expect_falsified ? all : !any);
        res.pass = res.pass && ok;
        res.values.push_back(rep.min_compose_eig);
        res.values.push_back(rep.min_tensor_eig);
        res.values.push_back(rep.min_state_eig);
        res.lines.push_back(std::string(c.label) + ": compose " +
                            format_sig(rep.min_compose_eig) + ", tensor " +
                            format_sig(rep.min_tensor_eig) + ", state " +
                            format_sig(rep.min_state_eig) + (ok ? "" : "  [unexpected]"));
        if (!rep.note.empty()) res.lines.push_back(std::string(c.label) + ": " + rep.note);
    }
    return res;
}

SuiteResult run_tensor_stability_demo(std::uint64_t seed) {
    SuiteResult res;
    res.name = "tensor-stability";
    SearchConfig cfg;
    cfg.seed = seed;
    CounterRng rng(seed, kSuiteStream + 6 * kBlock);

    res.pass = true;
    auto record = [&res](const char* label, const TensorPositivityReport& rep) {
        res.pass = res.pass && !rep.falsified;
        res.values.push_back(rep.block_min);
        res.values.push_back(rep.min_output_eig);
        res.lines.push_back(std::string(label) + ": block min " + format_sig(rep.block_min) +
                            ", sampled min eig " + format_sig(rep.min_output_eig) +
                            (rep.falsified ? "  [falsified]" : ""));
    };

    record("CP factors",
           verify_corollary3(cp_cone(2), identity_map(2), ad_v(random_gaussian_matrix(2, 2, rng)),
                             ad_v(random_gaussian_matrix(2, 2, rng)), identity_map(2), cfg));
    record("transpose against reduction",
           verify_corollary3(cocp_cone(2), transpose_map(2), reduction_map(2),
                             random_cp_map(2, 2, rng), identity_map(2), cfg));
    record("2-positive against rank-2 conjugation sum",
           verify_corollary3(MappingCone::make_symmetric({lambda_mu_map(3, 0.5)}, cfg),
                             lambda_mu_map(3, 0.5), random_sp_k(2, 3, 3, 3, seed + 17),
                             identity_map(3), identity_map(3), cfg));
    return res;
}

SuiteResult run_membership_demo(std::uint64_t seed) {
    SuiteResult res;
    res.name = "membership-decisions";
    SearchConfig cfg;
    cfg.seed = seed;

    const MembershipReport d1 = decide_corollary4(identity_map(2), ad_v(canonical_v()), cfg);
    const MembershipReport d2 = decide_corollary4(transpose_map(2), identity_map(2), cfg);
    const MembershipReport d3 = decide_corollary4(transpose_map(2), reduction_map(2), cfg);

    double reverify = 0.0;
    if (d2.witness)
        reverify = evaluate_witness(tensor(transpose_map(2), identity_map(2)), *d2.witness);
    const DualPairResult dual = dual_pair_min(cocp_cone(2), reduction_map(2), cfg);

    res.values = {d1.min_value, d2.min_value, reverify, d3.min_value, dual.value};
    res.pass = d1.status == MembershipStatus::Member &&
               d2.status == MembershipStatus::NotMember && d2.witness &&
               std::abs(reverify - d2.min_value) <= 1e-10 && d2.cross_check_consistent &&
               d3.status == MembershipStatus::ConsistentWithMembership &&
               d3.cross_check_consistent && dual.value >= -1e-9;
    res.lines.push_back(std::string("identity generator vs conjugation map: ") +
                        to_string(d1.status));
    res.lines.push_back(std::string("transpose generator vs identity map: ") +
                        to_string(d2.status) + ", witness value " + format_sig(d2.min_value) +
                        ", re-verified " + format_sig(reverify));
    res.lines.push_back(std::string("transpose generator vs reduction map: ") +
                        to_string(d3.status) + ", pairing search min " + format_sig(dual.value));
    return res;
}

} // namespace posmap
