// Acceptance gate: ten checks with pinned tolerances, one pass/fail line
// each. The process exit code is the number of failed checks, so the suite
// doubles as a CI gate.

#include "posmap/mapio.hpp"
#include "posmap/verify.hpp"

#include "json.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using namespace posmap;

constexpr std::uint64_t kSeed = 42;
constexpr double kResidualTol = 1e-9;    // identity-suite residuals (1, 2)
constexpr double kAdjointTol = 1e-10;    // adjoint/transpose structure (3)
constexpr double kEigTol = 1e-9;         // eigenvalue comparisons (4)
constexpr double kWitnessTol = 1e-10;    // witness re-evaluation (5)
constexpr double kDualTol = 1e-9;        // search floors (5, 8)
constexpr double kClosedFormTol = 1e-6;  // rank-bounded minima (7)

ComplexMatrix canonical_v() {
    ComplexMatrix v(2, 2);
    v(0, 0) = 1.0;
    v(0, 1) = 2.0;
    v(1, 0) = 2.0;
    v(1, 1) = 3.0;
    return v;
}

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(POSMAP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CmdResult r;
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct Crit {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Crit make_crit(int id, std::string title) {
    Crit c;
    c.id = id;
    c.title = std::move(title);
    return c;
}

// Runs checks 1-9 and accumulates every reported numeric in a fixed order;
// the determinism check replays the whole collection and compares digests.
class Collector {
public:
    explicit Collector(std::uint64_t seed) : seed_(seed) {}

    std::vector<Crit> run_all() {
        std::vector<Crit> out;
        out.push_back(crit1());
        out.push_back(crit2());
        out.push_back(crit3());
        out.push_back(crit4());
        out.push_back(crit5());
        out.push_back(crit6());
        out.push_back(crit7());
        out.push_back(crit8());
        out.push_back(crit9());
        return out;
    }

    const std::vector<double>& values() const { return values_; }

private:
    void put(const std::vector<double>& v) { values_.insert(values_.end(), v.begin(), v.end()); }

    Crit crit1() {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult s2 = run_compose_identity_suite(2, 100, seed_);
        const SuiteResult s3 = run_compose_identity_suite(3, 100, seed_);
        put(s2.values);
        put(s3.values);
        Crit c = make_crit(1, "composite map via entangled state matches direct composition");
        c.seconds = seconds_since(t0);
        const double worst = std::max(s2.max_residual, s3.max_residual);
        c.pass = s2.pass && s3.pass && worst <= kResidualTol && c.seconds < 10.0;
        c.detail = "max residual " + format_sig(worst) + " over 200 map pairs";
        return c;
    }

    Crit crit2() {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult s2 = run_functional_identity_suite(2, 100, seed_);
        const SuiteResult s3 = run_functional_identity_suite(3, 100, seed_);
        put(s2.values);
        put(s3.values);
        Crit c = make_crit(2, "functional identities, composite and elementary-tensor forms");
        c.seconds = seconds_since(t0);
        const double worst = std::max(s2.max_residual, s3.max_residual);
        c.pass = s2.pass && s3.pass && worst <= kResidualTol && c.seconds < 10.0;
        c.detail = "max residual " + format_sig(worst) + " over 200 triples";
        return c;
    }

    Crit crit3() {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult s2 = run_adjoint_identity_suite(2, 100, seed_);
        const SuiteResult s3 = run_adjoint_identity_suite(3, 100, seed_);
        put(s2.values);
        put(s3.values);
        Crit c = make_crit(3, "adjoint conjugation formula, transposed choi, trace duality");
        c.seconds = seconds_since(t0);
        const double worst = std::max(s2.max_residual, s3.max_residual);
        c.pass = s2.pass && s3.pass && worst <= kAdjointTol;
        c.detail = "max residual " + format_sig(worst) + " over 200 maps";
        return c;
    }

    Crit crit4() {
        const auto t0 = std::chrono::steady_clock::now();
        Crit c = make_crit(4, "transpose-cone rejection of the identity map, three routes");

        const ComplexMatrix w =
            apply(tensor(transpose_map(2), identity_map(2)), max_entangled_p(2));
        const auto [state_eig, vec] = hermitian_bottom_eigenpair(w.hermitian_part());

        const Verdict cp = is_cp(compose(identity_map(2), transpose_map(2)));

        char tmpl[] = "/tmp/posmap_acc_XXXXXX";
        const char* dir = mkdtemp(tmpl);
        double cli_eig = 1.0;
        int cli_exit = -1;
        if (dir) {
            const std::string tfile = std::string(dir) + "/t2.json";
            const std::string ifile = std::string(dir) + "/i2.json";
            std::ofstream(tfile) << R"({"kind":"builtin","name":"transpose","dim":2})";
            std::ofstream(ifile) << R"({"kind":"builtin","name":"identity","dim":2})";
            const CmdResult r = run_cli("--format json dual --cone-gen " + tfile +
                                        " --candidate " + ifile + " --trials 5");
            cli_exit = r.exit_code;
            try {
                cli_eig = nlohmann::json::parse(r.out)["min_eigenvalue"].get<double>();
            } catch (...) {
            }
        }

        put({state_eig, cli_eig, cp.stats.best_value});
        c.seconds = seconds_since(t0);
        c.pass = std::abs(state_eig + 1.0) <= kEigTol && cli_exit == 1 && cp.falsified() &&
                 std::abs(cp.stats.best_value - state_eig) <= kEigTol &&
                 std::abs(cli_eig - state_eig) <= kEigTol && c.seconds < 1.0;
        c.detail = "state eig " + format_sig(state_eig) + ", dual exit " +
                   std::to_string(cli_exit) + ", compose choi eig " +
                   format_sig(cp.stats.best_value);
        return c;
    }

    Crit crit5() {
        const auto t0 = std::chrono::steady_clock::now();
        Crit c = make_crit(5, "single-generator membership decisions with witnesses");
        SearchConfig cfg;
        cfg.seed = seed_;

        const MembershipReport d1 = decide_corollary4(identity_map(2), ad_v(canonical_v()), cfg);
        const MembershipReport d2 = decide_corollary4(transpose_map(2), identity_map(2), cfg);
        const MembershipReport d2b = decide_corollary4(transpose_map(2), identity_map(2), cfg);
        const double reverify =
            d2.witness
                ? evaluate_witness(tensor(transpose_map(2), identity_map(2)), *d2.witness)
                : 1e300;
        const MembershipReport d3 = decide_corollary4(transpose_map(2), reduction_map(2), cfg);
        const DualPairResult dual = dual_pair_min(cocp_cone(2), reduction_map(2), cfg);

        put({d1.min_value, d2.min_value, reverify, d3.min_value, dual.value});
        c.seconds = seconds_since(t0);
        c.pass = d1.status == MembershipStatus::Member &&
                 d2.status == MembershipStatus::NotMember && d2.witness.has_value() &&
                 format_sig(d2.min_value) == format_sig(d2b.min_value) &&
                 std::abs(reverify - d2.min_value) <= kWitnessTol &&
                 d3.status == MembershipStatus::ConsistentWithMembership &&
                 dual.value >= -kDualTol && c.seconds < 30.0;
        c.detail = std::string("statuses ") + to_string(d1.status) + "/" + to_string(d2.status) +
                   "/" + to_string(d3.status) + ", witness " + format_sig(d2.min_value) +
                   " re-verified " + format_sig(reverify) + ", pairing search min " +
                   format_sig(dual.value);
        return c;
    }

    Crit crit6() {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult s2 = run_symmetry_agreement_suite(2, 100, seed_);
        const SuiteResult s3 = run_symmetry_agreement_suite(3, 100, seed_);
        put(s2.values);
        put(s3.values);
        Crit c = make_crit(6, "choi-level symmetry test agrees with the direct map equalities");
        c.seconds = seconds_since(t0);
        c.pass = s2.pass && s3.pass;
        c.detail = "canonical trio decided, 200/200 random agreements";
        if (!c.pass) c.detail = "disagreement between choi-level and direct tests";
        return c;
    }

    Crit crit7() {
        const auto t0 = std::chrono::steady_clock::now();
        const SearchConfig dflt;  // pinned: default search parameters
        const double v1 = k_block_positivity_min(lambda_mu_map(3, 1.0), 1, dflt).value;
        const double v2 = k_block_positivity_min(lambda_mu_map(3, 0.5), 2, dflt).value;
        const double v3 = k_block_positivity_min(lambda_mu_map(3, 1.0), 3, dflt).value;
        put({v1, v2, v3});
        Crit c = make_crit(7, "rank-bounded minima reach the closed forms 1 - mu*k");
        c.seconds = seconds_since(t0);
        c.pass = std::abs(v1 - 0.0) <= kClosedFormTol && std::abs(v2 - 0.0) <= kClosedFormTol &&
                 std::abs(v3 + 2.0) <= kClosedFormTol && c.seconds < 30.0;
        c.detail = "got " + format_sig(v1) + ", " + format_sig(v2) + ", " + format_sig(v3) +
                   " for targets 0, 0, -2";
        return c;
    }

    Crit crit8() {
        const auto t0 = std::chrono::steady_clock::now();
        SearchConfig cfg;
        cfg.seed = seed_;
        cfg.restarts = 50;
        cfg.psd_samples = 1000;
        const SuperMap psi = lambda_mu_map(3, 0.5);
        const SuperMap phi = random_sp_k(2, 3, 3, 3, seed_);
        const Verdict v = is_positive_map(tensor(psi, phi), cfg);
        put({v.stats.best_value, static_cast<double>(v.stats.restarts_used),
             static_cast<double>(v.stats.psd_samples_used)});
        Crit c = make_crit(8, "2-positive factor times rank-2 conjugation sum stays positive");
        c.seconds = seconds_since(t0);
        c.pass = !v.falsified() && v.stats.best_value >= -kDualTol && c.seconds < 60.0;
        c.detail = "min observed value " + format_sig(v.stats.best_value) + " over " +
                   std::to_string(v.stats.psd_samples_used) + " sampled inputs and " +
                   std::to_string(v.stats.restarts_used) + " restarts";
        return c;
    }

    Crit crit9() {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult s2 = run_cp_selfdual_suite(2, 500, seed_);
        const SuiteResult s3 = run_cp_selfdual_suite(3, 500, seed_);
        put(s2.values);
        put(s3.values);
        Crit c = make_crit(9, "completely positive cone is self-dual under the pairing");
        c.seconds = seconds_since(t0);
        const double worst = std::min(s2.values[0], s3.values[0]);
        c.pass = s2.pass && s3.pass;
        c.detail = "min pairing " + format_sig(worst) + " over 1000 CP pairs";
        return c;
    }

    std::uint64_t seed_;
    std::vector<double> values_;
};

} // namespace

int main() {
    Collector first(kSeed);
    std::vector<Crit> crits = first.run_all();

    const auto t0 = std::chrono::steady_clock::now();
    Collector second(kSeed);
    second.run_all();
    Crit c10 = make_crit(10, "every reported numeric reproduces at 12 significant digits");
    c10.seconds = seconds_since(t0);
    c10.pass = digest(first.values()) == digest(second.values()) && !first.values().empty();
    c10.detail = std::to_string(first.values().size()) + " numerics compared across a full re-run";
    crits.push_back(c10);

    int failures = 0;
    for (const Crit& c : crits) {
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %2d: %s; %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), c.detail.c_str(), c.seconds);
    }
    std::printf("acceptance: %d/10 criteria pass\n", 10 - failures);
    return failures;
}
