#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "growth/construct.hpp"
#include "growth/targets.hpp"
#include "growth/tseries.hpp"

using growth::BigNat;
using namespace growth::construct;
namespace targets = growth::targets;
namespace tseries = growth::tseries;

namespace {

ConstructionTrace run_family(const std::string& family, long N, long n_max,
                             tseries::TCache& cache, bool linear = false) {
    auto t = targets::builtin(family, 2 * n_max);
    ConstructionConfig cfg;
    cfg.N = N;
    cfg.n_max = n_max;
    cfg.linear_search = linear;
    return run(t, cfg, cache);
}

std::string tmp_path(const std::string& tag) {
    return "/tmp/growth_test_" + tag + "_" + std::to_string(::getpid());
}

}  // namespace

TEST_CASE("initial segment is pinned for any target") {
    tseries::TCache cache;
    for (const char* fam : {"minimal", "exponential"}) {
        auto trace = run_family(fam, 6, 32, cache);
        REQUIRE(trace.rows.size() == 33);
        for (long n = 0; n <= 6; ++n) {
            const auto& r = trace.rows[static_cast<size_t>(n)];
            CHECK(r.d == n);
            CHECK(r.e == n);
            CHECK(r.a == BigNat(n + 1));
            CHECK_FALSE(r.in_x);
        }
    }
}

TEST_CASE("minimal target forces a(n) = n+1 and A = F") {
    tseries::TCache cache;
    auto target = targets::builtin("minimal", 512);
    auto trace = run_family("minimal", 4, 256, cache);
    for (const auto& r : trace.rows) {
        CHECK(r.a == BigNat(r.n + 1));
        CHECK(r.A == r.F);
        CHECK(r.A == target.F(r.n));
    }
    // beyond N+1 the forced shape is d_n = n-1, always in X, e_n = 1
    // (at n = N+1 itself d_{n-1} = N = n-1 already, so no jump happens)
    for (const auto& r : trace.rows)
        if (r.n > trace.N + 1) {
            CHECK(r.d == r.n - 1);
            CHECK(r.in_x);
            CHECK(r.e == 1);
        }
}

TEST_CASE("exponential target parks d at N and counts full T(N, n)") {
    tseries::TCache cache;
    auto trace = run_family("exponential", 4, 64, cache);
    for (const auto& r : trace.rows)
        if (r.n > 4) {
            CHECK(r.d == 4);
            CHECK_FALSE(r.in_x);
            CHECK(r.a == cache.count_T(4, r.n));
        }
    // hand values at n = 5, 6: e_n = e_{n-1}+1 = n, union collapses to T(4, n)
    CHECK(trace.rows[5].e == 5);
    CHECK(trace.rows[6].e == 6);
    CHECK(trace.rows[5].a == BigNat(6));
    CHECK(trace.rows[6].a == BigNat(8));
}

TEST_CASE("per-row invariants hold on every builtin") {
    tseries::TCache cache;
    for (const char* fam : {"minimal", "exponential", "power:3", "intermediate:0.5"}) {
        auto target = targets::builtin(fam, 256);
        ConstructionConfig cfg;
        cfg.N = 8;
        cfg.n_max = 128;
        auto trace = run(target, cfg, cache);
        BigNat A_prev;
        long d_prev = 0, e_prev = 0;
        for (const auto& r : trace.rows) {
            CHECK(r.a >= BigNat(r.n + 1));
            CHECK(r.A <= r.F);
            CHECK(r.A == A_prev + r.a);
            CHECK(r.F == target.F(r.n));
            if (r.n > trace.N) {
                CHECK(r.d >= d_prev);
                CHECK(r.d <= r.n);
                CHECK(r.in_x == (r.d > d_prev));
                if (r.in_x) CHECK(r.e >= 1);
                else CHECK(r.e >= e_prev + 1);
                CHECK(r.e <= r.n);
            }
            A_prev = r.A;
            d_prev = r.d;
            e_prev = r.e;
        }
    }
}

TEST_CASE("check_trace is clean on generated traces") {
    tseries::TCache cache;
    for (const char* fam : {"minimal", "exponential", "power:3", "intermediate:0.5"}) {
        auto target = targets::builtin(fam, 256);
        ConstructionConfig cfg;
        cfg.N = 8;
        cfg.n_max = 128;
        auto trace = run(target, cfg, cache);
        CHECK(check_trace(trace, target, cache).empty());
    }
}

TEST_CASE("check_trace flags an injected fault") {
    tseries::TCache cache;
    auto target = targets::builtin("minimal", 128);
    ConstructionConfig cfg;
    cfg.N = 4;
    cfg.n_max = 64;
    auto trace = run(target, cfg, cache);
    REQUIRE(check_trace(trace, target, cache).empty());
    // decrement one a(n): a(n) >= n+1 must trip even though A <= F still holds
    trace.rows[40].a -= BigNat(1);
    auto v = check_trace(trace, target, cache);
    CHECK_FALSE(v.empty());
    bool saw40 = false;
    for (const auto& x : v) saw40 = saw40 || x.n == 40;
    CHECK(saw40);
}

TEST_CASE("binary and linear search select identical rows") {
    for (const char* fam : {"minimal", "exponential", "power:3", "intermediate:0.5"}) {
        tseries::TCache c1, c2;
        auto a = run_family(fam, 8, 64, c1, false);
        auto b = run_family(fam, 8, 64, c2, true);
        REQUIRE(a.rows.size() == b.rows.size());
        for (size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].d == b.rows[i].d);
            CHECK(a.rows[i].e == b.rows[i].e);
            CHECK(a.rows[i].a == b.rows[i].a);
            CHECK(a.rows[i].in_x == b.rows[i].in_x);
            CHECK(a.rows[i].in_y == b.rows[i].in_y);
        }
    }
}

TEST_CASE("run refuses bad preconditions") {
    tseries::TCache cache;
    ConstructionConfig cfg;
    cfg.N = 8;
    cfg.n_max = 64;
    // not normalized: f(0) = 2
    std::vector<BigNat> f;
    for (unsigned long n = 0; n <= 128; ++n) f.emplace_back(n + 2);
    targets::GrowthTarget shifted(f, "table");
    CHECK_THROWS_AS(run(shifted, cfg, cache), InvalidTarget);
    // defined range too short
    auto small = targets::builtin("minimal", 32);
    CHECK_THROWS_AS(run(small, cfg, cache), InvalidTarget);
    // N > n_max
    auto ok = targets::builtin("minimal", 128);
    cfg.n_max = 4;
    CHECK_THROWS_AS(run(ok, cfg, cache), InvalidTarget);
}

TEST_CASE("empirical_domination on the minimal target yields C = 1") {
    tseries::TCache cache;
    auto target = targets::builtin("minimal", 256);
    ConstructionConfig cfg;
    cfg.N = 8;
    cfg.n_max = 128;
    auto trace = run(target, cfg, cache);
    auto r = empirical_domination(trace, target);
    CHECK(r.found);
    CHECK(r.C == 1);
    CHECK(r.window_lo == 9);
    CHECK(r.window_hi == 128);
    for (const auto& m : r.margins) CHECK(m == BigNat(0));  // A == F exactly
}

TEST_CASE("empirical_domination window handling") {
    tseries::TCache cache;
    auto target = targets::builtin("minimal", 64);
    ConstructionConfig cfg;
    cfg.N = 8;
    cfg.n_max = 16;
    auto trace = run(target, cfg, cache);
    // every candidate window empty: n_max/C < N+1 for C >= 2, so restrict
    CHECK_THROWS_AS(empirical_domination(trace, target, {4, 8}), WindowEmpty);
    auto r = empirical_domination(trace, target, {1});
    CHECK(r.found);
    CHECK(r.C == 1);
}

TEST_CASE("trace CSV round trip") {
    tseries::TCache cache;
    auto trace = run_family("power:3", 8, 48, cache);
    std::ostringstream out;
    save_trace(trace, out, {"family=power:3"});
    std::istringstream in(out.str());
    auto back = load_trace(in);
    CHECK(back.target_sha == trace.target_sha);
    CHECK(back.N == trace.N);
    REQUIRE(back.rows.size() == trace.rows.size());
    for (size_t i = 0; i < trace.rows.size(); ++i) {
        CHECK(back.rows[i].n == trace.rows[i].n);
        CHECK(back.rows[i].d == trace.rows[i].d);
        CHECK(back.rows[i].e == trace.rows[i].e);
        CHECK(back.rows[i].in_x == trace.rows[i].in_x);
        CHECK(back.rows[i].in_y == trace.rows[i].in_y);
        CHECK(back.rows[i].a == trace.rows[i].a);
        CHECK(back.rows[i].A == trace.rows[i].A);
        CHECK(back.rows[i].F == trace.rows[i].F);
    }
}

TEST_CASE("load_trace rejects malformed input") {
    std::istringstream gap(
        "# target_sha=abc\n# N=2\nn,d,e,in_x,in_y,a,A,F\n"
        "0,0,0,0,0,1,1,1\n2,2,2,0,0,3,6,6\n");
    CHECK_THROWS_AS(load_trace(gap), CorruptCheckpoint);
    std::istringstream junk(
        "# target_sha=abc\n# N=2\nn,d,e,in_x,in_y,a,A,F\n0,0,zz,0,0,1,1,1\n");
    CHECK_THROWS_AS(load_trace(junk), CorruptCheckpoint);
}

TEST_CASE("resume is bit-identical to an uninterrupted run") {
    auto target = targets::builtin("power:3", 256);
    const std::string ckpt = tmp_path("resume");

    // reference: straight run
    tseries::TCache c0;
    ConstructionConfig ref;
    ref.N = 8;
    ref.n_max = 128;
    auto full = run(target, ref, c0);

    // phase 1: run to 60, checkpointing
    {
        tseries::TCache c1;
        ConstructionConfig cfg = ref;
        cfg.n_max = 60;
        cfg.checkpoint_path = ckpt;
        cfg.checkpoint_stride = 16;
        resume(target, cfg, c1);
    }
    // phase 2: resume to 128
    tseries::TCache c2;
    ConstructionConfig cfg = ref;
    cfg.checkpoint_path = ckpt;
    auto resumed = resume(target, cfg, c2);

    REQUIRE(resumed.rows.size() == full.rows.size());
    for (size_t i = 0; i < full.rows.size(); ++i) {
        CHECK(resumed.rows[i].d == full.rows[i].d);
        CHECK(resumed.rows[i].e == full.rows[i].e);
        CHECK(resumed.rows[i].a == full.rows[i].a);
        CHECK(resumed.rows[i].A == full.rows[i].A);
    }

    // and the serialized forms agree byte for byte
    std::ostringstream s1, s2;
    save_trace(full, s1);
    save_trace(resumed, s2);
    CHECK(s1.str() == s2.str());

    std::remove(ckpt.c_str());
    std::remove((ckpt + ".meta").c_str());
}

TEST_CASE("resume rejects a checkpoint from a different target") {
    const std::string ckpt = tmp_path("mismatch");
    auto t1 = targets::builtin("minimal", 128);
    auto t2 = targets::builtin("power:3", 128);
    ConstructionConfig cfg;
    cfg.N = 8;
    cfg.n_max = 64;
    cfg.checkpoint_path = ckpt;
    {
        tseries::TCache c;
        resume(t1, cfg, c);
    }
    tseries::TCache c;
    CHECK_THROWS_AS(resume(t2, cfg, c), CorruptCheckpoint);
    // mismatched N is also a config change
    ConstructionConfig cfg2 = cfg;
    cfg2.N = 4;
    CHECK_THROWS_AS(resume(t1, cfg2, c), CorruptCheckpoint);
    std::remove(ckpt.c_str());
    std::remove((ckpt + ".meta").c_str());
}

TEST_CASE("resume rejects tampered rows") {
    const std::string ckpt = tmp_path("tamper");
    auto target = targets::builtin("minimal", 128);
    ConstructionConfig cfg;
    cfg.N = 8;
    cfg.n_max = 64;
    cfg.checkpoint_path = ckpt;
    {
        tseries::TCache c;
        resume(target, cfg, c);
    }
    // corrupt one a-value in the checkpoint file
    std::ifstream in(ckpt);
    std::stringstream buf;
    buf << in.rdbuf();
    in.close();
    std::string text = buf.str();
    auto pos = text.rfind("\n40,");
    REQUIRE(pos != std::string::npos);
    // flip a digit of the a-field (6th column) of row 40
    size_t i = pos + 1;
    for (int commas = 0; commas < 5; ++i)
        if (text[i] == ',') ++commas;
    text[i] = text[i] == '9' ? '8' : '9';
    std::ofstream(ckpt) << text;
    tseries::TCache c;
    CHECK_THROWS_AS(resume(target, cfg, c), CorruptCheckpoint);
    std::remove(ckpt.c_str());
    std::remove((ckpt + ".meta").c_str());
}

TEST_CASE("emit_plot_data shape") {
    tseries::TCache cache;
    auto target = targets::builtin("exponential", 64);
    ConstructionConfig cfg;
    cfg.N = 4;
    cfg.n_max = 32;
    auto trace = run(target, cfg, cache);
    std::ostringstream out;
    emit_plot_data(trace, target, out);
    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,A,F,ratio_log");
    long count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 33);
}
