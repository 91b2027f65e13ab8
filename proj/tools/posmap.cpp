// Command line front end: map-file checks, pairings, dual-cone sampling,
// membership decisions, and the self-check suites, with text or json reports.

#include "posmap/cones.hpp"
#include "posmap/mapio.hpp"
#include "posmap/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace posmap;

int status_exit(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Falsified: return 1;
        case VerdictStatus::NoCounterexample: return 2;
        case VerdictStatus::CertifiedPositive: return 0;
    }
    return 2;
}

// a CP partner map ψ with choi z z†, so pair(φ, ψ) = <z|C_φ|z>
SuperMap rank_one_partner(std::size_t in, std::size_t out, const std::vector<Complex>& z) {
    ComplexMatrix c(z.size(), z.size());
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = 0; b < z.size(); ++b) c(a, b) = z[a] * std::conj(z[b]);
    return SuperMap(in, out, std::move(c), MapStructure::CompletelyPositive);
}

// a CP partner with choi aᵗ ⊗ w w†, so pair(φ, ψ) = <w|φ(a)|w>
SuperMap psd_input_partner(const SuperMap& phi, const ComplexMatrix& a) {
    const auto [lambda, w] = hermitian_bottom_eigenpair(apply(phi, a).hermitian_part());
    ComplexMatrix ww(w.size(), w.size());
    for (std::size_t r = 0; r < w.size(); ++r)
        for (std::size_t s = 0; s < w.size(); ++s) ww(r, s) = w[r] * std::conj(w[s]);
    return SuperMap(phi.in_dim(), phi.out_dim(), kron(a.transpose(), ww));
}

// product-pair witness (x, y) matches the conjugation by the outer product
// y xᵀ: <x⊗y|C_φ|x⊗y> = pair(φ, ad_v(y xᵀ))
SuperMap product_pair_partner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    ComplexMatrix w(y.size(), x.size());
    for (std::size_t r = 0; r < y.size(); ++r)
        for (std::size_t i = 0; i < x.size(); ++i) w(r, i) = y[r] * x[i];
    return ad_v(w);
}

nlohmann::json witness_json(const SuperMap& phi, const Witness& w) {
    nlohmann::json j;
    j["value"] = w.value;
    switch (w.kind) {
        case Witness::Kind::ChoiEigenvector:
            j["kind"] = "choi_eigenvector";
            j["vector"] = vector_to_json(w.x);
            j["reverify"] = {{"with", "pair"},
                             {"map", map_to_json(rank_one_partner(phi.in_dim(), phi.out_dim(), w.x))}};
            break;
        case Witness::Kind::ProductPair:
            j["kind"] = "product_pair";
            j["x"] = vector_to_json(w.x);
            j["y"] = vector_to_json(w.y);
            j["reverify"] = {{"with", "pair"}, {"map", map_to_json(product_pair_partner(w.x, w.y))}};
            break;
        case Witness::Kind::PsdInput:
            j["kind"] = "psd_input";
            j["input"] = matrix_to_json(w.input);
            j["reverify"] = {{"with", "pair"}, {"map", map_to_json(psd_input_partner(phi, w.input))}};
            break;
    }
    return j;
}

struct Reporter {
    std::string format;
    nlohmann::json j;
    std::vector<std::string> text;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void set(const char* key, const nlohmann::json& v) { j[key] = v; }
    void line(const std::string& s) { text.push_back(s); }

    void emit() {
        if (format == "json") {
            const auto dt = std::chrono::steady_clock::now() - start;
            j["wall_time_s"] = std::chrono::duration<double>(dt).count();
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& s : text) std::cout << s << "\n";
        }
    }
};

void report_witness(Reporter& rep, const SuperMap& phi, const Witness& w) {
    rep.set("witness", witness_json(phi, w));
    rep.line("witness value " + format_sig(w.value) +
             " (json report carries a partner map re-verifiable with `pair`)");
}

// loads a map and surfaces how far its choi is from hermitian; parsing
// never rejects a skew choi, downstream checks do
SuperMap load_reported(Reporter& rep, const std::string& path, const char* label) {
    SuperMap m = load_map(path);
    const double defect = m.choi().hermiticity_defect();
    rep.set(label, defect);
    if (defect > 1e-12)
        rep.line(std::string(label) + ": loaded choi is not hermitian, defect " +
                 format_sig(defect));
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"positive map toolkit: choi-matrix checks, cone duality, identity suites"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int restarts = 50;
    double tol = 1e-9;
    std::string format = "text";
    auto* seed_opt = app.add_option("--seed", seed, "seed for all randomized searches");
    app.add_option("--restarts", restarts, "search restarts")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "negativity tolerance")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file1, file2, cone_gen, candidate, suite;
    int k_arg = 1;
    int trials = 200;
    std::size_t dim = 2;

    auto* c_cp = app.add_subcommand("check-cp", "is the map completely positive (choi PSD)?");
    c_cp->add_option("file", file1, "map file")->required();
    auto* c_pos = app.add_subcommand("check-positive", "positivity: certificates, then search");
    c_pos->add_option("file", file1, "map file")->required();
    auto* c_kpos = app.add_subcommand("check-k-positive",
                                      "minimum over inputs of Schmidt rank <= k");
    c_kpos->add_option("file", file1, "map file")->required();
    c_kpos->add_option("--k", k_arg, "Schmidt rank bound")->required()->check(CLI::PositiveNumber);
    auto* c_pair = app.add_subcommand("pair", "trace pairing of two choi matrices");
    c_pair->add_option("file1", file1, "first map file")->required();
    c_pair->add_option("file2", file2, "second map file")->required();
    auto* c_dual = app.add_subcommand("dual", "sample the cone of a generator against a candidate");
    c_dual->add_option("--cone-gen", cone_gen, "generator map file")->required();
    c_dual->add_option("--candidate", candidate, "candidate map file")->required();
    c_dual->add_option("--trials", trials, "sampled cone elements")->check(CLI::NonNegativeNumber);
    auto* c_cor4 = app.add_subcommand("cor4", "single-generator dual membership decision");
    c_cor4->add_option("--gen", cone_gen, "symmetric generator map file")->required();
    c_cor4->add_option("--candidate", candidate, "candidate map file")->required();
    auto* c_prop5 = app.add_subcommand("prop5", "choi-level test of the symmetry g = g* = g^t");
    c_prop5->add_option("file", file1, "map file")->required();
    auto* c_verify = app.add_subcommand("verify", "run a named self-check suite");
    c_verify->add_option("suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"eq1", "lemma1", "thm2", "cor3", "cor4-demo", "cp-selfdual"}));
    c_verify->add_option("--dim", dim, "matrix algebra dimension")->check(CLI::PositiveNumber);
    c_verify->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("POSMAP_SEED")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') {
                std::cerr << "POSMAP_SEED is not an unsigned integer: " << env << "\n";
                return 64;
            }
            seed = v;
        }
    }

    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.psd_tol = tol;

    Reporter rep;
    rep.format = format;
    rep.set("schema", 1);
    rep.set("seed", seed);
    rep.set("restarts", restarts);
    rep.set("tolerance", tol);

    try {
        if (app.got_subcommand(c_cp)) {
            rep.set("command", "check-cp");
            const SuperMap m = load_reported(rep, file1, "choi_hermiticity_defect");
            const Verdict v = is_cp(m, tol);
            rep.set("status", to_string(v.status));
            rep.set("min_choi_eigenvalue", v.stats.best_value);
            if (!v.certificate.empty()) rep.set("certificate", v.certificate);
            rep.line(std::string("status: ") + to_string(v.status));
            rep.line("min choi eigenvalue " + format_sig(v.stats.best_value));
            if (v.witness) report_witness(rep, m, *v.witness);
            rep.emit();
            return status_exit(v.status);
        }
        if (app.got_subcommand(c_pos)) {
            rep.set("command", "check-positive");
            const SuperMap m = load_reported(rep, file1, "choi_hermiticity_defect");
            const Verdict v = is_positive_map(m, cfg);
            rep.set("status", to_string(v.status));
            rep.set("best_value", v.stats.best_value);
            rep.set("restarts_used", v.stats.restarts_used);
            rep.set("psd_samples_used", v.stats.psd_samples_used);
            if (!v.certificate.empty()) rep.set("certificate", v.certificate);
            rep.line(std::string("status: ") + to_string(v.status) +
                     (v.certificate.empty() ? "" : " (" + v.certificate + ")"));
            rep.line("most negative value seen " + format_sig(v.stats.best_value));
            if (v.witness) report_witness(rep, m, *v.witness);
            rep.emit();
            return status_exit(v.status);
        }
        if (app.got_subcommand(c_kpos)) {
            rep.set("command", "check-k-positive");
            const SuperMap m = load_reported(rep, file1, "choi_hermiticity_defect");
            const SchmidtMinResult r =
                k_block_positivity_min(m, static_cast<std::size_t>(k_arg), cfg);
            const bool exhaustive =
                static_cast<std::size_t>(k_arg) >= std::min(m.in_dim(), m.out_dim());
            rep.set("k", k_arg);
            rep.set("min_value", r.value);
            rep.line("minimum over Schmidt rank <= " + std::to_string(k_arg) + ": " +
                     format_sig(r.value));
            if (r.value < -tol) {
                Witness w{Witness::Kind::ChoiEigenvector, r.value, r.z, {}, {}};
                rep.set("status", "falsified");
                rep.line("status: falsified");
                report_witness(rep, m, w);
                rep.emit();
                return 1;
            }
            rep.set("status", exhaustive ? "certified_positive" : "no_counterexample");
            rep.line(exhaustive ? "status: certified_positive (rank bound is vacuous)"
                                : "status: no_counterexample");
            rep.emit();
            return exhaustive ? 0 : 2;
        }
        if (app.got_subcommand(c_pair)) {
            rep.set("command", "pair");
            const SuperMap a = load_reported(rep, file1, "choi_hermiticity_defect_1");
            const SuperMap b = load_reported(rep, file2, "choi_hermiticity_defect_2");
            const double v = pairing(a, b);
            rep.set("value", v);
            rep.set("status", v >= -tol ? "pass" : "falsified");
            rep.line("pairing " + format_sig(v));
            rep.emit();
            return v >= -tol ? 0 : 1;
        }
        if (app.got_subcommand(c_dual)) {
            rep.set("command", "dual");
            const SuperMap gen = load_reported(rep, cone_gen, "choi_hermiticity_defect_generator");
            const SuperMap cand = load_reported(rep, candidate, "choi_hermiticity_defect_candidate");
            const MappingCone cone = MappingCone::make_symmetric({gen}, cfg);
            const MembershipReport r = falsify_dual_membership(cone, cand, trials, cfg);
            rep.set("status", to_string(r.status));
            rep.set("min_eigenvalue", r.min_value);
            rep.set("trials_used", r.trials_used);
            rep.set("generators", cone.generators().size());
            rep.line(std::string("status: ") + to_string(r.status));
            rep.line("min eigenvalue of (psi (x) phi)(p): " + format_sig(r.min_value));
            if (r.status == MembershipStatus::NotMember && r.witness_element) {
                const SuperMap composite = compose(cand, star_t(*r.witness_element));
                nlohmann::json w;
                w["value"] = r.min_value;
                w["element"] = map_to_json(*r.witness_element);
                w["composite"] = map_to_json(composite);
                if (r.witness) w["vector"] = vector_to_json(r.witness->x);
                rep.set("witness", w);
                rep.line("witness element stored; its composite with the candidate fails "
                         "check-cp at the same eigenvalue");
            }
            rep.emit();
            return r.status == MembershipStatus::NotMember ? 1 : 0;
        }
        if (app.got_subcommand(c_cor4)) {
            rep.set("command", "cor4");
            const SuperMap gen = load_reported(rep, cone_gen, "choi_hermiticity_defect_generator");
            const SuperMap cand = load_reported(rep, candidate, "choi_hermiticity_defect_candidate");
            const MembershipReport r = decide_corollary4(gen, cand, cfg);
            rep.set("status", to_string(r.status));
            rep.set("min_value", r.min_value);
            rep.set("cross_check_consistent", r.cross_check_consistent);
            if (!r.note.empty()) rep.set("note", r.note);
            rep.line(std::string("status: ") + to_string(r.status));
            rep.line("most negative value seen " + format_sig(r.min_value));
            if (!r.note.empty()) rep.line("note: " + r.note);
            if (r.witness) report_witness(rep, tensor(gen, cand), *r.witness);
            if (r.witness_element) rep.set("witness_element", map_to_json(*r.witness_element));
            rep.emit();
            return r.status == MembershipStatus::NotMember ? 1 : 0;
        }
        if (app.got_subcommand(c_prop5)) {
            rep.set("command", "prop5");
            const SuperMap m = load_reported(rep, file1, "choi_hermiticity_defect");
            const SymmetryDiagnostics d = check_star_t_symmetry(m);
            rep.set("symmetric", d.symmetric);
            rep.set("imag_defect", d.imag_defect);
            rep.set("symmetry_defect", d.symmetry_defect);
            rep.set("flip_defect", d.flip_defect);
            rep.set("adjoint_defect", d.adjoint_defect);
            rep.set("transpose_defect", d.transpose_defect);
            rep.line(std::string("symmetric (g = g* = g^t): ") + (d.symmetric ? "yes" : "no"));
            rep.line("defects: imag " + format_sig(d.imag_defect) + ", symmetry " +
                     format_sig(d.symmetry_defect) + ", flip " + format_sig(d.flip_defect));
            rep.emit();
            return d.symmetric ? 0 : 1;
        }
        if (app.got_subcommand(c_verify)) {
            rep.set("command", "verify");
            rep.set("suite", suite);
            SuiteResult r;
            if (suite == "eq1") r = run_functional_identity_suite(dim, trials, seed);
            else if (suite == "lemma1") r = run_compose_identity_suite(dim, trials, seed);
            else if (suite == "thm2") r = run_cone_duality_demo(seed);
            else if (suite == "cor3") r = run_tensor_stability_demo(seed);
            else if (suite == "cor4-demo") r = run_membership_demo(seed);
            else r = run_cp_selfdual_suite(dim, trials, seed);
            rep.set("status", r.pass ? "pass" : "fail");
            rep.set("max_residual", r.max_residual);
            rep.set("values", r.values);
            rep.set("digest", digest(r.values));
            for (const auto& s : r.lines) rep.line(s);
            rep.line(std::string("suite ") + r.name + ": " + (r.pass ? "pass" : "FAIL"));
            rep.emit();
            return r.pass ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 65;
    } catch (const DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 65;
    } catch (const NumericalError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 65;
    }
    return 64;
}
