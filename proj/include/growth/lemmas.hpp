#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "growth/bignat.hpp"
#include "growth/targets.hpp"

namespace growth::lemmas {

struct Range {
    long lo = 0, hi = -1, stride = 1;  // empty when hi < lo
    bool empty() const { return hi < lo; }
};

enum class Mode { exact, logfloat };

// Verification grid. In logfloat mode every cell whose log-margin falls
// below escalation_threshold is re-checked exactly; a failure is only ever
// reported after an exact evaluation confirms it.
struct GridSpec {
    Range d, n, t;
    Mode mode = Mode::exact;
    double escalation_threshold = 1.0;
    long threads = 1;
};

struct CellResult {
    long d = 0, n = 0, t = -1;
    bool pass = true;
    bool vacuous = false;      // hypothesis not satisfied; not a failure
    bool skipped = false;      // outside the lemma's precondition; not evaluated
    bool exploratory = false;  // below the lemma's stated threshold
    bool exact = true;
    std::string lhs, rhs;      // decimal when exact, "m*2^e" when logfloat
    double log_margin = 0.0;   // ln(lhs) - ln(rhs)
};

struct LemmaReport {
    std::string lemma;
    long checked = 0, passed = 0, vacuous = 0, skipped = 0;
    long exploratory_failures = 0;
    double min_log_margin = std::numeric_limits<double>::infinity();
    std::vector<CellResult> cells;     // everything evaluated (capped on output)
    std::vector<CellResult> failures;  // in-threshold, non-vacuous failures

    bool ok() const { return failures.empty(); }
};

// Lemma "doubling": n * #T(d, 2n) >= #T(d, n)^2 on cells with d < n, n >= 2.
LemmaReport verify_doubling(const GridSpec& grid);

// Conditional bound: when #T(d, n)^3 <= n^4 (hypothesis, n >= 64, d < n),
// #T(d, n)^6 <= 8 n^2 #T(d, 2n)^3. Fractional powers are cross-multiplied
// away; no float enters the verdict.
LemmaReport verify_conditional_two_thirds(const GridSpec& grid);

// Shift bound: #T(d, N) >= #T(d-1, n) at the exact rational threshold
// N = 2 + ceil((n-1)(d+1)/d), for d >= 1; for d = 0 the monotone clause
// #T(0, N) >= #T(0, n) for N >= n.
LemmaReport verify_shift(const GridSpec& grid);

// Base bound: #T(d, 4n)^3 >= (4n)^4 for d <= n-1, n >= 512.
LemmaReport verify_base(const GridSpec& grid);

// #T(d, 64n) >= 512 n #T(d-1, n)^2, stated for n >= 2^19; smaller n run as
// exploratory cells whose failures are tallied separately.
LemmaReport verify_512(const GridSpec& grid);

// Tower form: #T(d, 64 * 2^t n) >= (512 * 2^t n) #T(d-1, n)^(2^t), n >= 2^19.
LemmaReport verify_tower(const GridSpec& grid);

// f(i) <= f(p)^(2^j) for 2^(j-1) p <= i <= 2^j p, over p in grid.n and
// j in grid.t. Exact.
LemmaReport verify_remark(const targets::GrowthTarget& target, const GridSpec& grid);

// CSV lemma,cell,lhs,rhs,pass,log_margin. Emits every cell up to `max_rows`,
// after which only failures are written (with a comment noting truncation).
void write_report_csv(const LemmaReport& report, std::ostream& out, long max_rows = 10000);

}  // namespace growth::lemmas
