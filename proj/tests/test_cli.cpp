#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Runs the CLI under test (path from $GROWTH_CLI) with stderr folded in.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("GROWTH_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "GROWTH_CLI not set");
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = ::pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string tmp_file(const std::string& tag) {
    return "/tmp/growth_cli_" + tag + "_" + std::to_string(::getpid());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), ("cannot read " + path).c_str());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("tcount prints exact counts") {
    CHECK(run_cli("tcount --d 1 --n 5").out == "13\n");
    CHECK(run_cli("tcount --d 4 --n 5").out == "6\n");
    CHECK(run_cli("tcount --d 0 --n 10").out == "1024\n");
    CHECK(run_cli("tcount --d 1 --n 5").status == 0);
}

TEST_CASE("tcount --log prints a logarithm") {
    auto r = run_cli("tcount --d 0 --n 10 --log");
    CHECK(r.status == 0);
    CHECK(std::stod(r.out) == doctest::Approx(std::log(1024.0)));
}

TEST_CASE("validate exit codes") {
    CHECK(run_cli("validate --family minimal --nmax 64").status == 0);
    const std::string csv = tmp_file("badtarget");
    std::ofstream(csv) << "n,f\n0,1\n1,2\n2,2\n3,4\n4,5\n5,6\n6,7\n";
    auto r = run_cli("validate --input " + csv + " --nmax 3");
    CHECK(r.status == 1);
    CHECK(r.out.find("condition 2 fails") != std::string::npos);
    std::remove(csv.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("tcount --d 1").status == 2);          // missing --n
    CHECK(run_cli("nonsense").status == 2);              // unknown subcommand
    CHECK(run_cli("").status == 2);                      // subcommand required
    CHECK(run_cli("verify-lemmas --lemma 9.9 --grid d=1..1,n=2..2").status == 2);
    CHECK(run_cli("validate --nmax 8").status == 2);     // no target source
    CHECK(run_cli("--help").status == 0);
}

TEST_CASE("construct writes a loadable trace and passes its checks") {
    const std::string trace = tmp_file("trace");
    auto r = run_cli("construct --family minimal --N 4 --nmax 48 --out " + trace +
                     " --check --domination");
    CHECK(r.status == 0);
    CHECK(r.out.find("check_trace: 0 violations over 49 rows") != std::string::npos);
    CHECK(r.out.find("domination: least C=1") != std::string::npos);

    auto text = slurp(trace);
    CHECK(text.find("# target_sha=") != std::string::npos);
    CHECK(text.find("n,d,e,in_x,in_y,a,A,F") != std::string::npos);

    // language queries over the written trace
    CHECK(run_cli("language count --trace " + trace + " --n 6").out == "7\n");
    auto h = run_cli("language check-hereditary --trace " + trace + " --n 10");
    CHECK(h.status == 0);
    CHECK(h.out.find("hereditary up to n=10") != std::string::npos);
    auto e = run_cli("language enumerate --trace " + trace + " --n 2");
    CHECK(e.out == "xx\nxy\nyx\n");
    std::remove(trace.c_str());
}

TEST_CASE("construct output is deterministic") {
    const std::string t1 = tmp_file("det1"), t2 = tmp_file("det2");
    REQUIRE(run_cli("construct --family power:3 --nmax 40 --out " + t1).status == 0);
    REQUIRE(run_cli("construct --family power:3 --nmax 40 --out " + t2).status == 0);
    CHECK(slurp(t1) == slurp(t2));
    std::remove(t1.c_str());
    std::remove(t2.c_str());
}

TEST_CASE("verify-lemmas summary line and report file") {
    const std::string rep = tmp_file("report");
    auto r = run_cli("verify-lemmas --lemma 3.2 --grid d=0..8,n=2..32 --out " + rep);
    CHECK(r.status == 0);
    CHECK(r.out.find("lemma 3.2:") != std::string::npos);
    CHECK(r.out.find(" 0 failures") != std::string::npos);
    auto text = slurp(rep);
    CHECK(text.find("lemma,cell,lhs,rhs,pass,log_margin") != std::string::npos);
    std::remove(rep.c_str());

    auto rr = run_cli("verify-lemmas --lemma remark --family minimal --nmax 256 "
                      "--grid n=1..32,t=0..3");
    CHECK(rr.status == 0);
}

TEST_CASE("avoid count and classify") {
    const std::string fb = tmp_file("forbidden");
    std::ofstream(fb) << "# comment line\nyy\n";
    auto r = run_cli("avoid count --forbidden " + fb + " --nmax 5");
    CHECK(r.status == 0);
    CHECK(r.out.find("n,g\n0,1\n1,2\n2,3\n3,5\n4,8\n5,13\n") != std::string::npos);

    CHECK(run_cli("avoid classify --forbidden " + fb).out == "exponential\n");
    std::ofstream(fb) << "yx\n";
    CHECK(run_cli("avoid classify --forbidden " + fb).out == "polynomial degree=1\n");
    std::remove(fb.c_str());
}

TEST_CASE("compare subcommand") {
    const std::string fa = tmp_file("cmp_f"), ga = tmp_file("cmp_g");
    {
        std::ofstream f(fa), g(ga);
        f << "n,f\n";
        g << "n,f\n";
        // per-length tables whose cumulative forms are 2^n-ish vs n^2-ish
        long pf = 0, pg = 0;
        for (long n = 0; n <= 16; ++n) {
            f << n << ',' << ((1l << n) - pf) << '\n';
            g << n << ',' << (n * n - pg) << '\n';
            pf = 1l << n;
            pg = n * n;
        }
    }
    auto bad = run_cli("compare --f " + fa + " --g " + ga + " --C 1 --nmax 8");
    CHECK(bad.status == 1);
    CHECK(bad.out.find("fails at n=3") != std::string::npos);
    auto good = run_cli("compare --f " + fa + " --g " + ga + " --C 2 --nmax 8");
    CHECK(good.status == 0);
    std::remove(fa.c_str());
    std::remove(ga.c_str());
}

TEST_CASE("help output matches the golden copies") {
    const char* dir = std::getenv("GOLDEN_DIR");
    REQUIRE_MESSAGE(dir != nullptr, "GOLDEN_DIR not set");
    // goldens hold @BIN@ where the usage line prints the binary path
    auto golden = [&](const std::string& name) {
        std::string text = slurp(std::string(dir) + "/" + name);
        const std::string tag = "@BIN@";
        const std::string bin = std::getenv("GROWTH_CLI");
        for (size_t p; (p = text.find(tag)) != std::string::npos;)
            text.replace(p, tag.size(), bin);
        return text;
    };
    CHECK(run_cli("--help").out == golden("help.txt"));
    CHECK(run_cli("construct --help").out == golden("help_construct.txt"));
    CHECK(run_cli("verify-lemmas --help").out == golden("help_verify_lemmas.txt"));
}
