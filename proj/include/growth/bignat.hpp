#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace growth {

// Arbitrary-precision nonnegative integer. Every count in the library is a
// BigNat; subtraction is checked so a miscomputed inclusion-exclusion step
// surfaces immediately instead of wrapping.
class BigNat {
public:
    BigNat() : v_(0) {}
    BigNat(unsigned long n) : v_(n) {}
    BigNat(int n) : v_(n) {
        if (n < 0) throw std::domain_error("BigNat: negative initializer");
    }
    BigNat(long n) : v_(n) {
        if (n < 0) throw std::domain_error("BigNat: negative initializer");
    }
    explicit BigNat(const std::string& decimal) : v_(decimal) {
        if (v_ < 0) throw std::domain_error("BigNat: negative initializer");
    }
    explicit BigNat(mpz_class z) : v_(std::move(z)) {
        if (v_ < 0) throw std::domain_error("BigNat: negative initializer");
    }

    // Truncating conversion from a nonnegative double (used by the builtin
    // real-valued target families after rounding).
    static BigNat from_double(double x) {
        if (x < 0) throw std::domain_error("BigNat: negative double");
        return BigNat(mpz_class(x));
    }

    const mpz_class& raw() const { return v_; }

    BigNat& operator+=(const BigNat& o) { v_ += o.v_; return *this; }
    BigNat& operator*=(const BigNat& o) { v_ *= o.v_; return *this; }
    BigNat& operator-=(const BigNat& o) {
        if (v_ < o.v_)
            throw std::underflow_error("BigNat: subtraction would go negative");
        v_ -= o.v_;
        return *this;
    }

    friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
    friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
    friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }

    BigNat pow(unsigned long e) const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), e);
        return BigNat(r);
    }

    friend bool operator==(const BigNat& a, const BigNat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigNat& a, const BigNat& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigNat& a, const BigNat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigNat& a, const BigNat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigNat& a, const BigNat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigNat& a, const BigNat& b) { return a.v_ >= b.v_; }

    std::string str() const { return v_.get_str(); }

    bool fits_ulong() const { return v_.fits_ulong_p(); }
    unsigned long to_ulong() const {
        if (!fits_ulong()) throw std::overflow_error("BigNat: does not fit ulong");
        return v_.get_ui();
    }

    // Natural log, exact up to double rounding (uses the 2^exp * mantissa
    // decomposition, so it works far beyond double range).
    double log() const;

private:
    mpz_class v_;
};

inline double BigNat::log() const {
    if (v_ == 0) throw std::domain_error("BigNat::log of zero");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, v_.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453094;
}

}  // namespace growth
