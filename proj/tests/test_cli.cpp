#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

// POSMAP_CLI_PATH is injected by the build as the absolute path of the binary.

namespace {

using nlohmann::json;

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(POSMAP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string& tmp_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/posmap_cli_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& contents) {
    const std::string path = tmp_dir() + "/" + name;
    std::ofstream f(path);
    REQUIRE(f.good());
    f << contents;
    return path;
}

std::string builtin_file(const std::string& name, const std::string& builtin, int dim,
                         const std::string& extra = "") {
    return write_file(name, R"({"kind":"builtin","name":")" + builtin +
                                R"(","dim":)" + std::to_string(dim) + extra + "}");
}

std::string strip_wall_time(const std::string& s) {
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) nl = s.size();
        const std::string line = s.substr(pos, nl - pos);
        if (line.find("wall_time_s") == std::string::npos) out += line + "\n";
        pos = nl + 1;
    }
    return out;
}

} // namespace

TEST_CASE("complete positivity checks and witness round trip") {
    const std::string t2 = builtin_file("t2.json", "transpose", 2);
    const std::string i2 = builtin_file("i2.json", "identity", 2);

    const CmdResult good = run("--format json check-cp " + i2);
    CHECK(good.exit_code == 0);
    const json jg = json::parse(good.out);
    CHECK(jg["schema"] == 1);
    CHECK(jg["status"] == "certified_positive");

    const CmdResult bad = run("--format json check-cp " + t2);
    CHECK(bad.exit_code == 1);
    const json jb = json::parse(bad.out);
    CHECK(jb["status"] == "falsified");
    CHECK(jb["min_choi_eigenvalue"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    REQUIRE(jb.contains("witness"));
    REQUIRE(jb["witness"]["reverify"]["with"] == "pair");

    // the attached partner map reproduces the eigenvalue through `pair`
    const std::string partner =
        write_file("partner.json", jb["witness"]["reverify"]["map"].dump());
    const CmdResult pr = run("--format json pair " + t2 + " " + partner);
    CHECK(pr.exit_code == 1);
    const json jp = json::parse(pr.out);
    CHECK(jp["value"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("positivity and pairing commands") {
    const std::string r2 = builtin_file("r2.json", "reduction", 2);
    const std::string i2 = builtin_file("i2b.json", "identity", 2);

    const CmdResult red = run("--format json check-positive " + r2);
    CHECK(red.exit_code == 2);
    const json jr = json::parse(red.out);
    CHECK(jr["status"] == "no_counterexample");

    const CmdResult t = run("--format json check-positive " + builtin_file("t3.json", "transpose", 3));
    CHECK(t.exit_code == 0);
    CHECK(json::parse(t.out)["certificate"] == "co-cp-by-construction");

    const CmdResult p = run("--format json pair " + i2 + " " + i2);
    CHECK(p.exit_code == 0);
    CHECK(json::parse(p.out)["value"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("rank-bounded positivity thresholds") {
    const std::string l31 = builtin_file("l31.json", "lambda_mu", 3, R"(,"mu":1.0)");

    const CmdResult k1 = run("--format json check-k-positive " + l31 + " --k 1");
    CHECK(k1.exit_code == 2);
    CHECK(std::abs(json::parse(k1.out)["min_value"].get<double>()) < 1e-6);

    const CmdResult k3 = run("--format json check-k-positive " + l31 + " --k 3");
    CHECK(k3.exit_code == 1);
    const json j3 = json::parse(k3.out);
    CHECK(j3["min_value"].get<double>() == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(j3["status"] == "falsified");
}

TEST_CASE("dual cone sampling with a reusable witness") {
    const std::string t2 = builtin_file("t2d.json", "transpose", 2);
    const std::string i2 = builtin_file("i2d.json", "identity", 2);

    const CmdResult d = run("--format json dual --cone-gen " + t2 + " --candidate " + i2 +
                            " --trials 3");
    CHECK(d.exit_code == 1);
    const json jd = json::parse(d.out);
    CHECK(jd["status"] == "not_member");
    CHECK(jd["min_eigenvalue"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    REQUIRE(jd.contains("witness"));

    // the stored composite map fails check-cp at that very eigenvalue
    const std::string comp = write_file("composite.json", jd["witness"]["composite"].dump());
    const CmdResult cc = run("--format json check-cp " + comp);
    CHECK(cc.exit_code == 1);
    CHECK(json::parse(cc.out)["min_choi_eigenvalue"].get<double>() ==
          doctest::Approx(-1.0).epsilon(1e-8));

    // a CP candidate is never rejected
    const CmdResult ok = run("--format json dual --cone-gen " + i2 + " --candidate " + i2 +
                             " --trials 3");
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["status"] == "consistent_with_membership");
}

TEST_CASE("membership decisions for a single generator") {
    const std::string t2 = builtin_file("t2c.json", "transpose", 2);
    const std::string i2 = builtin_file("i2c.json", "identity", 2);
    const std::string r2 = builtin_file("r2c.json", "reduction", 2);

    const CmdResult member = run("--format json cor4 --gen " + i2 + " --candidate " + i2);
    CHECK(member.exit_code == 0);
    CHECK(json::parse(member.out)["status"] == "member");

    const CmdResult out = run("--format json cor4 --gen " + t2 + " --candidate " + i2);
    CHECK(out.exit_code == 1);
    const json jo = json::parse(out.out);
    CHECK(jo["status"] == "not_member");
    CHECK(jo["cross_check_consistent"] == true);
    CHECK(jo.contains("witness_element"));

    const CmdResult open = run("--format json cor4 --gen " + t2 + " --candidate " + r2);
    CHECK(open.exit_code == 0);
    CHECK(json::parse(open.out)["status"] == "consistent_with_membership");
}

TEST_CASE("symmetry report") {
    const std::string t2 = builtin_file("t2p.json", "transpose", 2);
    const CmdResult sym = run("--format json prop5 " + t2);
    CHECK(sym.exit_code == 0);
    CHECK(json::parse(sym.out)["symmetric"] == true);

    const std::string shift = write_file(
        "shift.json",
        R"({"kind":"kraus","in_dim":2,"out_dim":2,"data":[[[[0,0],[0,0]],[[1,0],[0,0]]]]})");
    const CmdResult asym = run("--format json prop5 " + shift);
    CHECK(asym.exit_code == 1);
    const json ja = json::parse(asym.out);
    CHECK(ja["symmetric"] == false);
    CHECK(ja["flip_defect"].get<double>() > 0.5);
}

TEST_CASE("verification suites run clean") {
    const CmdResult lemma = run("--format json verify lemma1 --dim 3 --trials 50 --seed 7");
    CHECK(lemma.exit_code == 0);
    const json jl = json::parse(lemma.out);
    CHECK(jl["status"] == "pass");
    CHECK(jl["max_residual"].get<double>() < 1e-9);

    const CmdResult eq = run("--format json verify eq1 --dim 2 --trials 40 --seed 3");
    CHECK(eq.exit_code == 0);
    CHECK(json::parse(eq.out)["status"] == "pass");

    const CmdResult sd = run("--format json verify cp-selfdual --dim 2 --trials 60 --seed 5");
    CHECK(sd.exit_code == 0);
    CHECK(json::parse(sd.out)["status"] == "pass");
}

TEST_CASE("usage and parse failures use distinct exit codes") {
    CHECK(run("").exit_code == 64);
    CHECK(run("frobnicate").exit_code == 64);
    CHECK(run("check-cp").exit_code == 64);
    CHECK(run("verify nonsense").exit_code == 64);
    CHECK(run("check-k-positive foo.json").exit_code == 64);  // --k is required

    CHECK(run("check-cp /nonexistent/nowhere.json").exit_code == 65);
    const std::string garbage = write_file("garbage.json", "not json at all {");
    CHECK(run("check-cp " + garbage).exit_code == 65);
    const std::string short_choi = write_file(
        "short.json", R"({"kind":"choi","in_dim":2,"out_dim":2,"data":[[[1,0]]]})");
    CHECK(run("check-cp " + short_choi).exit_code == 65);
    const std::string badk = builtin_file("l3k.json", "lambda_mu", 3, R"(,"mu":1.0)");
    CHECK(run("check-k-positive " + badk + " --k 7").exit_code == 65);
}

TEST_CASE("json reports are deterministic modulo wall time") {
    const std::string t2 = builtin_file("t2e.json", "transpose", 2);
    const CmdResult a = run("--format json --seed 11 check-cp " + t2);
    const CmdResult b = run("--format json --seed 11 check-cp " + t2);
    CHECK(strip_wall_time(a.out) == strip_wall_time(b.out));

    const CmdResult v1 = run("--format json verify lemma1 --dim 2 --trials 20 --seed 9");
    const CmdResult v2 = run("--format json verify lemma1 --dim 2 --trials 20 --seed 9");
    CHECK(strip_wall_time(v1.out) == strip_wall_time(v2.out));
}

TEST_CASE("seed environment fallback") {
    const CmdResult flag = run("--format json verify lemma1 --dim 2 --trials 20 --seed 9");
    const CmdResult env = run("--format json verify lemma1 --dim 2 --trials 20",
                              "POSMAP_SEED=9 ");
    CHECK(env.exit_code == 0);
    const json jf = json::parse(flag.out);
    const json je = json::parse(env.out);
    CHECK(je["seed"] == 9);
    CHECK(jf["digest"] == je["digest"]);

    // an explicit flag wins over the environment
    const CmdResult both = run("--format json verify lemma1 --dim 2 --trials 20 --seed 9",
                               "POSMAP_SEED=3 ");
    CHECK(json::parse(both.out)["digest"] == jf["digest"]);

    CHECK(run("verify lemma1 --dim 2 --trials 5", "POSMAP_SEED=zebra ").exit_code == 64);
}
