#include "growth/targets.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace growth::targets {

GrowthTarget::GrowthTarget(std::vector<BigNat> f, std::string origin)
    : f_(std::move(f)), origin_(std::move(origin)) {
    if (f_.empty()) throw std::invalid_argument("GrowthTarget: empty table");
    F_.reserve(f_.size());
    BigNat acc(0);
    for (const auto& v : f_) {
        acc += v;
        F_.push_back(acc);
    }
}

const BigNat& GrowthTarget::f(long n) const {
    if (n < 0 || n >= static_cast<long>(f_.size()))
        throw RangeError("GrowthTarget: f(" + std::to_string(n) +
                         ") outside stored range 0.." + std::to_string(n_max()));
    return f_[static_cast<size_t>(n)];
}

const BigNat& GrowthTarget::F(long n) const {
    if (n < 0 || n >= static_cast<long>(F_.size()))
        throw RangeError("GrowthTarget: F(" + std::to_string(n) +
                         ") outside stored range 0.." + std::to_string(n_max()));
    return F_[static_cast<size_t>(n)];
}

std::string GrowthTarget::sha256() const {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    for (const auto& v : f_) {
        std::string s = v.str();
        s.push_back(',');
        EVP_DigestUpdate(ctx, s.data(), s.size());
    }
    EVP_DigestUpdate(ctx, origin_.data(), origin_.size());
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

ValidityReport validate(const GrowthTarget& t, long n_max) {
    if (n_max < 0) throw std::invalid_argument("validate: n_max must be >= 0");
    if (t.n_max() < 2 * n_max)
        throw RangeError("validate: condition (1) probes up to 2*n_max = " +
                         std::to_string(2 * n_max) + " but target ends at " +
                         std::to_string(t.n_max()));
    ValidityReport r;
    r.checked_range = n_max;
    for (long n = 1; n <= n_max && r.condition1_ok; ++n) {
        BigNat bound = t.f(n) * t.f(n);
        for (long m = n; m <= 2 * n; ++m) {
            if (t.f(m) > bound) {
                r.condition1_ok = false;
                r.c1_n = n;
                r.c1_m = m;
                break;
            }
        }
    }
    for (long n = 0; n <= n_max; ++n) {
        if (t.f(n) < BigNat(static_cast<unsigned long>(n) + 1)) {
            r.condition2_ok = false;
            r.c2_n = n;
            break;
        }
    }
    return r;
}

bool check_doubling_bound(const GrowthTarget& t, long p, long j_max) {
    if (p < 1) throw std::invalid_argument("check_doubling_bound: p must be >= 1");
    for (long j = 0; j <= j_max; ++j) {
        long lo = (j == 0) ? p : (p << (j - 1));
        long hi = p << j;
        if (t.n_max() < hi)
            throw RangeError("check_doubling_bound: needs f up to " + std::to_string(hi));
        BigNat bound = t.f(p).pow(1ul << j);
        for (long i = lo; i <= hi; ++i)
            if (t.f(i) > bound) return false;
    }
    return true;
}

CompareResult compare(const std::vector<BigNat>& f, const std::vector<BigNat>& g,
                      long C, long n_max) {
    if (C < 1) throw std::invalid_argument("compare: C must be >= 1");
    if (static_cast<long>(g.size()) <= n_max)
        throw RangeError("compare: g not defined up to n_max");
    if (static_cast<long>(f.size()) <= C * n_max)
        throw RangeError("compare: f not defined up to C*n_max");
    CompareResult r;
    for (long n = 1; n <= n_max; ++n) {
        if (g[static_cast<size_t>(n)] > f[static_cast<size_t>(C * n)]) {
            r.dominated = false;
            r.first_failure = n;
            break;
        }
    }
    return r;
}

namespace {

BigNat clamped_round(double value, long n) {
    BigNat floor_val(static_cast<unsigned long>(n) + 1);
    if (!std::isfinite(value))
        throw std::overflow_error("builtin: family value overflows double range");
    BigNat rounded = BigNat::from_double(std::round(std::max(value, 0.0)));
    return rounded > floor_val ? rounded : floor_val;
}

}  // namespace

GrowthTarget builtin(const std::string& spec, long n_max) {
    if (n_max < 1) throw std::invalid_argument("builtin: n_max must be >= 1");
    std::string name = spec;
    double param = 0.0;
    bool has_param = false;
    if (auto pos = spec.find(':'); pos != std::string::npos) {
        name = spec.substr(0, pos);
        param = std::stod(spec.substr(pos + 1));
        has_param = true;
    }
    std::vector<BigNat> f;
    f.reserve(static_cast<size_t>(n_max) + 1);
    if (name == "minimal") {
        for (long n = 0; n <= n_max; ++n) f.push_back(BigNat(static_cast<unsigned long>(n) + 1));
    } else if (name == "exponential") {
        BigNat v(1);
        for (long n = 0; n <= n_max; ++n) {
            f.push_back(v);
            v += v;
        }
    } else if (name == "power") {
        if (!has_param || param < 2.0)
            throw std::invalid_argument("builtin: power requires parameter alpha >= 2");
        f.push_back(BigNat(1));
        for (long n = 1; n <= n_max; ++n)
            f.push_back(clamped_round(std::pow(static_cast<double>(n), param - 1.0), n));
    } else if (name == "intermediate") {
        if (!has_param || param <= 0.0 || param >= 1.0)
            throw std::invalid_argument("builtin: intermediate requires parameter beta in (0,1)");
        f.push_back(BigNat(1));
        for (long n = 1; n <= n_max; ++n) {
            double hi = std::exp(std::pow(static_cast<double>(n), param));
            double lo = std::exp(std::pow(static_cast<double>(n - 1), param));
            f.push_back(clamped_round(hi - lo, n));
        }
    } else {
        throw std::invalid_argument("builtin: unknown family '" + name + "'");
    }
    GrowthTarget t(std::move(f), "builtin:" + spec);
    ValidityReport r = validate(t, n_max / 2);
    if (!r.ok()) {
        std::ostringstream msg;
        msg << "builtin: family '" << spec << "' fails validation";
        if (!r.condition1_ok) msg << " (condition 1 at n=" << r.c1_n << ", m=" << r.c1_m << ")";
        if (!r.condition2_ok) msg << " (condition 2 at n=" << r.c2_n << ")";
        throw std::invalid_argument(msg.str());
    }
    return t;
}

GrowthTarget normalize(const GrowthTarget& t) {
    if (t.n_max() < 1)
        throw RangeError("normalize: target must be defined at least on 0..1");
    std::vector<BigNat> f = t.f_values();
    if (f[0] == BigNat(1) && f[1] == BigNat(2)) return t;
    f[0] = BigNat(1);
    f[1] = BigNat(2);
    // Lowering the head can break f(m) <= f(k)^2 for m <= 2k; push the
    // minimal repair forward. Only lowers values, and a repaired entry at k
    // constrains positions up to 2k, so the tail stabilizes.
    for (long n = 2; n <= t.n_max(); ++n) {
        BigNat upper = f[static_cast<size_t>((n + 1) / 2)] *
                       f[static_cast<size_t>((n + 1) / 2)];
        for (long k = (n + 1) / 2 + 1; k < n; ++k) {
            BigNat b = f[static_cast<size_t>(k)] * f[static_cast<size_t>(k)];
            if (b < upper) upper = b;
        }
        if (f[static_cast<size_t>(n)] > upper) {
            BigNat floor_val(static_cast<unsigned long>(n) + 1);
            if (upper < floor_val)
                throw std::runtime_error(
                    "normalize: no finite modification preserves validity at n=" +
                    std::to_string(n));
            f[static_cast<size_t>(n)] = upper;
        }
    }
    GrowthTarget out(std::move(f), t.origin() + "|normalized");
    ValidityReport r = validate(out, t.n_max() / 2);
    if (!r.ok())
        throw std::runtime_error("normalize: adjusted target fails revalidation");
    return out;
}

GrowthTarget load_csv(std::istream& in, const std::string& origin) {
    std::string line;
    std::vector<BigNat> f;
    bool header_seen = false;
    long expected = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "n,f")
                throw std::runtime_error("growth-target CSV: expected header 'n,f'");
            header_seen = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("growth-target CSV: malformed row: " + line);
        long n = std::stol(line.substr(0, comma));
        if (n != expected)
            throw std::runtime_error("growth-target CSV: rows must be contiguous from 0");
        f.push_back(BigNat(line.substr(comma + 1)));
        ++expected;
    }
    if (f.empty()) throw std::runtime_error("growth-target CSV: no rows");
    return GrowthTarget(std::move(f), origin);
}

GrowthTarget load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open growth-target file: " + path);
    return load_csv(in, "file:" + path);
}

void save_csv(const GrowthTarget& t, std::ostream& out) {
    out << "n,f\n";
    for (long n = 0; n <= t.n_max(); ++n)
        out << n << ',' << t.f(n).str() << '\n';
}

}  // namespace growth::targets
