#pragma once

#include <cmath>
#include <cstdint>

namespace growth {

// Nonnegative float with an explicit base-2 exponent wide enough for counts
// like #T(1, 2^28), which overflow double's exponent by orders of magnitude.
// Mantissa is kept in [1, 2) (or exactly 0). Additions lose at most one ulp,
// so after n accumulation steps the relative error is bounded by n * 2^-52;
// log() inherits that as an absolute error bound.
struct ExtFloat {
    double mant = 0.0;
    std::int64_t exp = 0;

    ExtFloat() = default;
    explicit ExtFloat(double x) {
        if (x == 0.0) { mant = 0.0; exp = 0; return; }
        int e;
        mant = std::frexp(x, &e) * 2.0;  // into [1,2)
        exp = e - 1;
    }

    bool zero() const { return mant == 0.0; }

    ExtFloat& operator+=(const ExtFloat& o) {
        if (o.zero()) return *this;
        if (zero()) { *this = o; return *this; }
        std::int64_t diff = exp - o.exp;
        if (diff >= 64) return *this;
        if (diff <= -64) { *this = o; return *this; }
        double m = mant + std::ldexp(o.mant, static_cast<int>(-diff));
        int e;
        mant = std::frexp(m, &e) * 2.0;
        exp += e - 1;
        return *this;
    }

    friend ExtFloat operator+(ExtFloat a, const ExtFloat& b) { return a += b; }

    ExtFloat& operator*=(const ExtFloat& o) {
        if (zero() || o.zero()) { mant = 0.0; exp = 0; return *this; }
        double m = mant * o.mant;
        int e;
        mant = std::frexp(m, &e) * 2.0;
        exp += o.exp + e - 1;
        return *this;
    }

    friend ExtFloat operator*(ExtFloat a, const ExtFloat& b) { return a *= b; }

    ExtFloat pow(std::uint64_t k) const {
        ExtFloat r(1.0), b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    // Natural log; requires a nonzero value.
    double log() const {
        return std::log(mant) + static_cast<double>(exp) * 0.6931471805599453094;
    }

    friend bool operator<(const ExtFloat& a, const ExtFloat& b) {
        if (a.zero()) return !b.zero();
        if (b.zero()) return false;
        if (a.exp != b.exp) return a.exp < b.exp;
        return a.mant < b.mant;
    }
};

}  // namespace growth
