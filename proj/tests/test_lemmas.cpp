#include <doctest.h>

#include <sstream>

#include "growth/lemmas.hpp"
#include "growth/targets.hpp"
#include "growth/tseries.hpp"

using growth::BigNat;
using namespace growth::lemmas;
namespace targets = growth::targets;
namespace tseries = growth::tseries;

namespace {

GridSpec grid(long dlo, long dhi, long nlo, long nhi, long nstride = 1) {
    GridSpec g;
    g.d = {dlo, dhi, 1};
    g.n = {nlo, nhi, nstride};
    return g;
}

}  // namespace

TEST_CASE("doubling lemma on a dense grid") {
    auto r = verify_doubling(grid(0, 63, 2, 64));
    CHECK(r.ok());
    CHECK(r.passed == r.checked);
    CHECK(r.checked > 0);
    CHECK(r.skipped > 0);  // cells with d >= n are outside the hypothesis
    CHECK(r.min_log_margin >= 0.0);
}

TEST_CASE("doubling lemma single cell values") {
    auto r = verify_doubling(grid(1, 1, 2, 2));
    REQUIRE(r.checked == 1);
    REQUIRE(r.cells.size() == 1);
    // 2 * #T(1,4) = 16 >= #T(1,2)^2 = 9
    CHECK(r.cells[0].lhs == "16");
    CHECK(r.cells[0].rhs == "9");
    CHECK(r.cells[0].pass);
    CHECK(r.cells[0].exact);
}

TEST_CASE("conditional two-thirds lemma") {
    auto r = verify_conditional_two_thirds(grid(0, 200, 64, 200));
    CHECK(r.ok());
    CHECK(r.vacuous > 0);   // small d breaks the hypothesis #T^3 <= n^4
    CHECK(r.checked > 0);   // large d satisfies it
}

TEST_CASE("shift lemma across d including the d = 0 clause") {
    auto r = verify_shift(grid(0, 32, 1, 128));
    CHECK(r.ok());
    CHECK(r.checked == 33 * 128);
}

TEST_CASE("base lemma at its stated threshold") {
    auto r = verify_base(grid(0, 511, 512, 512, 1));
    CHECK(r.ok());
    CHECK(r.checked == 512);  // d <= n-1 all in hypothesis
}

TEST_CASE("512-lemma exact on small cells marks them exploratory") {
    GridSpec g = grid(1, 4, 16, 64, 16);
    g.mode = Mode::exact;
    auto r = verify_512(g);
    // below the stated 2^19 threshold everything is exploratory; failures
    // there are tallied apart and do not fail the report
    CHECK(r.ok());
    for (const auto& c : r.cells) CHECK(c.exploratory);
}

TEST_CASE("tower lemma logfloat at a mid-size point") {
    GridSpec g = grid(1, 2, 4096, 4096);
    g.t = {0, 2, 1};
    g.mode = Mode::logfloat;
    auto r = verify_tower(g);
    CHECK(r.exploratory_failures == 0);  // holds well below threshold here
    CHECK(r.checked == 2 * 3);
}

TEST_CASE("logfloat and exact modes agree cell by cell") {
    GridSpec ge = grid(1, 3, 64, 256, 64);
    ge.t = {0, 1, 1};
    ge.mode = Mode::exact;
    GridSpec gl = ge;
    gl.mode = Mode::logfloat;
    auto re = verify_tower(ge);
    auto rl = verify_tower(gl);
    REQUIRE(re.cells.size() == rl.cells.size());
    for (size_t i = 0; i < re.cells.size(); ++i) {
        CHECK(re.cells[i].pass == rl.cells[i].pass);
        CHECK(re.cells[i].log_margin ==
              doctest::Approx(rl.cells[i].log_margin).epsilon(1e-6));
    }
}

TEST_CASE("logfloat escalates thin margins to exact") {
    // With an enormous escalation threshold every logfloat cell re-checks
    // exactly; the verdicts must be unchanged and flagged exact.
    GridSpec g = grid(1, 2, 128, 256, 128);
    g.mode = Mode::logfloat;
    g.escalation_threshold = 1e18;
    auto r = verify_512(g);
    for (const auto& c : r.cells) CHECK(c.exact);
    GridSpec g0 = g;
    g0.escalation_threshold = 0.0;
    auto r0 = verify_512(g0);
    REQUIRE(r0.cells.size() == r.cells.size());
    for (size_t i = 0; i < r.cells.size(); ++i)
        CHECK(r.cells[i].pass == r0.cells[i].pass);
}

TEST_CASE("multithreaded verification is deterministic") {
    GridSpec g1 = grid(0, 31, 2, 128);
    GridSpec g4 = g1;
    g4.threads = 4;
    auto r1 = verify_doubling(g1);
    auto r4 = verify_doubling(g4);
    CHECK(r1.checked == r4.checked);
    CHECK(r1.passed == r4.passed);
    REQUIRE(r1.cells.size() == r4.cells.size());
    for (size_t i = 0; i < r1.cells.size(); ++i) {
        CHECK(r1.cells[i].d == r4.cells[i].d);
        CHECK(r1.cells[i].n == r4.cells[i].n);
        CHECK(r1.cells[i].lhs == r4.cells[i].lhs);
    }
}

TEST_CASE("remark bound on builtin targets") {
    auto minimal = targets::builtin("minimal", 2048);
    GridSpec g;
    g.n = {1, 64, 1};  // p-range
    g.t = {0, 4, 1};   // j-range
    auto r = verify_remark(minimal, g);
    CHECK(r.ok());
    CHECK(r.checked > 0);

    auto expo = targets::builtin("exponential", 1024);
    GridSpec ge;
    ge.n = {1, 16, 1};
    ge.t = {0, 5, 1};
    auto re = verify_remark(expo, ge);
    CHECK(re.ok());  // equality at endpoints, never a violation
}

TEST_CASE("remark skips out-of-range cells instead of failing") {
    auto t = targets::builtin("minimal", 32);
    GridSpec g;
    g.n = {10, 10, 1};
    g.t = {0, 8, 1};  // 2^8 * 10 far beyond n_max = 32
    auto r = verify_remark(t, g);
    CHECK(r.ok());
    CHECK(r.skipped > 0);
    CHECK(r.checked > 0);  // the in-range j values still run
}

TEST_CASE("report CSV shape and truncation") {
    auto r = verify_doubling(grid(0, 15, 2, 64));
    std::ostringstream full;
    write_report_csv(r, full);
    std::istringstream lines(full.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("# ", 0) == 0);  // summary comment
    REQUIRE(std::getline(lines, line));
    CHECK(line == "lemma,cell,lhs,rhs,pass,log_margin");

    std::ostringstream cut;
    write_report_csv(r, cut, 5);
    long rows = 0;
    std::istringstream cl(cut.str());
    while (std::getline(cl, line))
        if (!line.empty() && line[0] != '#' && line.rfind("lemma,", 0) != 0) ++rows;
    CHECK(rows <= 5);
    CHECK(cut.str().find("truncat") != std::string::npos);
}

TEST_CASE("a planted failure is reported, not thrown") {
    // No true lemma fails, so exercise the failure path through the remark
    // verifier with an invalid hand-built target.
    std::vector<BigNat> f;
    for (unsigned long n = 0; n <= 40; ++n) f.emplace_back(n + 1);
    f[8] = BigNat(1000000);  // f(8) > f(4)^4
    targets::GrowthTarget bad(f, "table");
    GridSpec g;
    g.n = {4, 4, 1};
    g.t = {0, 1, 1};
    auto r = verify_remark(bad, g);
    CHECK_FALSE(r.ok());
    REQUIRE(!r.failures.empty());
    CHECK(r.failures[0].n == 4);
}
