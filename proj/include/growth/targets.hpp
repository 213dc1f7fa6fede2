#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "growth/bignat.hpp"

namespace growth::targets {

// Thrown when an operation would need f-values beyond the stored range.
// Finite-table targets never extrapolate.
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A candidate growth function: exact per-length counts f(n) on 0..n_max
// together with the cumulative F(n) = f(0) + ... + f(n).
class GrowthTarget {
public:
    GrowthTarget(std::vector<BigNat> f, std::string origin);

    long n_max() const { return static_cast<long>(f_.size()) - 1; }
    const std::string& origin() const { return origin_; }

    const BigNat& f(long n) const;
    const BigNat& F(long n) const;

    const std::vector<BigNat>& f_values() const { return f_; }
    const std::vector<BigNat>& F_values() const { return F_; }

    // SHA-256 over the decimal f-values and the origin string; used to pair
    // checkpoints with the target that produced them.
    std::string sha256() const;

private:
    std::vector<BigNat> f_;
    std::vector<BigNat> F_;
    std::string origin_;
};

struct ValidityReport {
    bool condition1_ok = true;  // f(m) <= f(n)^2 for 1 <= n, n <= m <= 2n
    long c1_n = -1, c1_m = -1;  // first violating pair
    bool condition2_ok = true;  // f(n) >= n + 1
    long c2_n = -1;             // first violating n
    long checked_range = 0;

    bool ok() const { return condition1_ok && condition2_ok; }
};

// Checks the two admissibility conditions on 0..n_max. Requires the target
// to be defined up to 2*n_max (condition (1) probes m up to 2n); anything
// less is a RangeError, never a silent truncation.
ValidityReport validate(const GrowthTarget& t, long n_max);

// Consequence of condition (1): f(i) <= f(p)^(2^j) for 2^(j-1) p <= i <= 2^j p
// (the j = 0 segment is [p, p]). True iff it holds for all j <= j_max.
bool check_doubling_bound(const GrowthTarget& t, long p, long j_max);

struct CompareResult {
    bool dominated = true;  // g(n) <= f(Cn) on 1..n_max
    long first_failure = -1;
};

// Definitional asymptotic-order check g(n) <= f(Cn), evaluated at every n.
CompareResult compare(const std::vector<BigNat>& f, const std::vector<BigNat>& g,
                      long C, long n_max);

// Builtin families. `spec` is "minimal", "exponential", "power:A" (A >= 2)
// or "intermediate:B" (0 < B < 1). Real-valued families are rounded and
// clamped to >= n+1. Refuses any family that fails validation on its range.
GrowthTarget builtin(const std::string& spec, long n_max);

// Minimal adjustment to f(0) = 1, f(1) = 2 (so F(0) = 1, F(1) = 3), lowering
// later values only where the changed prefix forces it; the tail is
// untouched. Fails if no finite modification preserves validity.
GrowthTarget normalize(const GrowthTarget& t);

// Growth-target CSV: header "n,f", rows in increasing n from 0, decimal
// values of unbounded size. Lines starting with '#' are ignored on input.
GrowthTarget load_csv(std::istream& in, const std::string& origin = "table");
GrowthTarget load_csv_file(const std::string& path);
void save_csv(const GrowthTarget& t, std::ostream& out);

}  // namespace growth::targets
