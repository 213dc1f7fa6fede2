#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "growth/bignat.hpp"
#include "growth/extfloat.hpp"

namespace growth::tseries {

// h_s(m): number of compositions of m into parts of sizes 1 and s.
// Coefficient of t^m in (1 - t - t^s)^{-1}. Rejects s = 0; returns 0 for
// m < 0 and 1 for m = 0.
BigNat h_value(long s, long m);

// Per-d memoized table of h_{d+1} together with its prefix sums, so that
// #T(d, n) = prefix[n] = 1 + h_{d+1}(0) + ... + h_{d+1}(n-1) is an O(1)
// lookup after amortized O(n) construction. Append-only: published entries
// never change, extension is serialized by the owner.
class TSeries {
public:
    explicit TSeries(int d);

    int d() const { return d_; }

    // #T(d, n) for n >= 0, extending the table as needed.
    const BigNat& count(long n);

    // h_{d+1}(m) for m >= 0, extending as needed.
    const BigNat& h(long m);

    void extend_to(long n);
    long size() const { return static_cast<long>(h_.size()); }

private:
    int d_;
    std::vector<BigNat> h_;       // h_[m] = h_{d+1}(m)
    std::vector<BigNat> prefix_;  // prefix_[n] = #T(d, n)
};

// Shared collection of TSeries tables keyed by d, with the conventions the
// counting layer needs everywhere: d < 0 is clamped to 0 and n < 0 counts
// as the empty set.
class TCache {
public:
    // max_tables = 0 means unbounded; otherwise least-recently-used tables
    // are evicted (and rebuilt on demand) once the cap is exceeded. The
    // construction engine probes a moving window of d values, so a small cap
    // keeps memory flat without repeated rebuilds.
    explicit TCache(std::size_t max_tables = 0) : max_tables_(max_tables) {}

    TSeries& table(int d);

    // |T(max(d,0), n)|; 0 for n < 0.
    BigNat count_T(long d, long n);

    // |T(d, n) union x^e T(d-1, n-e)| by inclusion-exclusion:
    // count_T(d,n) + count_T(d-1, n-e) - count_T(d, n-e).
    // Requires d >= 0 and 0 <= e <= n.
    BigNat count_union(long d, long e, long n);

private:
    struct Entry {
        TSeries series;
        std::uint64_t last_used = 0;
    };
    std::map<int, Entry> tables_;
    std::size_t max_tables_;
    std::uint64_t tick_ = 0;
};

// All length-n words over {x, y} in T(d, n): x^n plus the words whose every
// interior x-run between two y's has length >= d. Throws if n exceeds the
// cap (exponential enumeration guard).
std::set<std::string> enumerate_T(int d, int n, int cap = 16);

// Streaming #T(d, n) in extended-float arithmetic: O(n) time, O(d) memory,
// no big-integer work. Relative error <= n ulps of accumulation.
ExtFloat ext_count_T(long d, long n);

// Exact streaming #T(d, n) with an O(d) window; for one-off large queries
// where keeping a full table is wasteful.
BigNat count_T_streaming(long d, long n);

// One pass, many read-out points: #T(d, n) for each n in `lengths`
// (sorted ascending). Saves re-streaming shared prefixes in the tower
// inequalities, where the lengths are 64 * 2^t * n for t = 0, 1, ...
std::vector<ExtFloat> ext_count_T_multi(long d, const std::vector<long>& lengths);
std::vector<BigNat> count_T_streaming_multi(long d, const std::vector<long>& lengths);

// ln #T(d, n) via ext_count_T; absolute error bounded by n * 2^-52 plus
// the final log rounding. Presentation / fast-screening use only.
double log_count_T(long d, long n);

}  // namespace growth::tseries
