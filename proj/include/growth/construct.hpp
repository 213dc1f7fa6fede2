#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "growth/bignat.hpp"
#include "growth/targets.hpp"
#include "growth/tseries.hpp"

namespace growth::construct {

struct InvalidTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The d- or e-search ran out of candidates. Can only happen on an
// inadmissible target or a broken invariant; never silently clamped.
struct SearchExhausted : std::runtime_error {
    long n;
    SearchExhausted(long n_, const std::string& what) : std::runtime_error(what), n(n_) {}
};

struct CorruptCheckpoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstructionConfig {
    long N = 8;          // cutoff: d_n = e_n = n and a(n) = n+1 for n <= N
    long n_max = 0;
    std::optional<std::string> checkpoint_path;
    long checkpoint_stride = 256;
    bool linear_search = false;  // linear scan instead of binary search (equivalence testing)
};

struct TraceRow {
    long n = 0;
    long d = 0;   // d_n
    long e = 0;   // e_n
    bool in_x = false;
    bool in_y = false;
    BigNat a;  // a(n)
    BigNat A;  // A(n)
    BigNat F;  // F(n)
};

struct ConstructionTrace {
    std::vector<TraceRow> rows;
    std::string target_sha;
    long N = 0;
};

// The recursion: rows 0..n_max with d_n/e_n chosen as the stated minima,
// a(n) from the union count, A accumulated. Requires a normalized target
// (f(0) = 1, f(1) = 2) defined up to n_max that passes validation on the
// checkable range. Asserts every row invariant as it goes.
ConstructionTrace run(const targets::GrowthTarget& target, const ConstructionConfig& cfg,
                      tseries::TCache& cache);

struct TraceViolation {
    long n;
    std::string what;
};

// Re-verifies every row of a trace: accumulation, monotonicities,
// a(n) >= n+1, A <= F, e_n >= 1 on X, the strict lower bound f(p) < #T(d_p-1, p)
// on X, the e-minimality witness for late e-jumps off X, and
// F(n) <= A(n) + #T(d_n-1, n-e_n-d_n+1) on Y. Violations are data, not errors.
std::vector<TraceViolation> check_trace(const ConstructionTrace& trace,
                                        const targets::GrowthTarget& target,
                                        tseries::TCache& cache);

struct WindowEmpty : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DominationResult {
    bool found = false;
    long C = 0;
    long window_lo = 0, window_hi = 0;
    std::vector<BigNat> margins;  // A(Cn) - F(n) over the window of the passing C
};

// Smallest candidate C with F(n) <= A(Cn) for all n in [N+1, n_max/C].
// Candidates default to powers of two up to 2^16. Candidates whose window is
// empty are skipped; if every window is empty, throws WindowEmpty.
DominationResult empirical_domination(const ConstructionTrace& trace,
                                      const targets::GrowthTarget& target,
                                      std::vector<long> C_candidates = {});

// Trace CSV: optional '#' comment lines, then header n,d,e,in_x,in_y,a,A,F
// with booleans as 0/1 and counts as decimal strings.
void save_trace(const ConstructionTrace& trace, std::ostream& out,
                const std::vector<std::string>& config_echo = {});
ConstructionTrace load_trace(std::istream& in);
ConstructionTrace load_trace_file(const std::string& path);

// Writes trace + sidecar "<path>.meta" holding "target_sha,N=..,n_max=..".
void write_checkpoint(const ConstructionTrace& trace, const std::string& path);

// Continues an interrupted run from cfg.checkpoint_path, bit-identical to an
// uninterrupted run. Missing or empty checkpoint file means a fresh run;
// hash/config mismatch, a row gap, or an invariant failure is a
// CorruptCheckpoint.
ConstructionTrace resume(const targets::GrowthTarget& target, const ConstructionConfig& cfg,
                         tseries::TCache& cache);

// Plot data: n,A,F,ratio_log with ratio_log = ln F(n) - ln A(n).
// Presentation only; verdicts never come from this file.
void emit_plot_data(const ConstructionTrace& trace, const targets::GrowthTarget& target,
                    std::ostream& out);

}  // namespace growth::construct
