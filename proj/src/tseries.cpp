#include "growth/tseries.hpp"

#include <stdexcept>

namespace growth::tseries {

BigNat h_value(long s, long m) {
    if (s < 1) throw std::invalid_argument("h_value: part size s must be >= 1");
    if (m < 0) return BigNat(0);
    if (m == 0) return BigNat(1);
    // h[k] = h[k-1] + h[k-s], h[0] = 1, out-of-range terms 0.
    std::vector<BigNat> h(static_cast<size_t>(m) + 1);
    h[0] = BigNat(1);
    for (long k = 1; k <= m; ++k) {
        BigNat v = h[static_cast<size_t>(k - 1)];
        if (k >= s) v += h[static_cast<size_t>(k - s)];
        h[static_cast<size_t>(k)] = v;
    }
    return h[static_cast<size_t>(m)];
}

TSeries::TSeries(int d) : d_(d) {
    if (d < 0) throw std::invalid_argument("TSeries: d must be >= 0");
    h_.push_back(BigNat(1));                 // h_{d+1}(0) = 1
    prefix_.push_back(BigNat(1));            // #T(d, 0) = 1
    prefix_.push_back(BigNat(2));            // #T(d, 1) = 1 + h(0)
}

void TSeries::extend_to(long n) {
    const long s = d_ + 1;
    while (static_cast<long>(h_.size()) <= n) {
        const long m = static_cast<long>(h_.size());
        BigNat v = h_[static_cast<size_t>(m - 1)];
        if (m >= s) v += h_[static_cast<size_t>(m - s)];
        h_.push_back(v);
        prefix_.push_back(prefix_.back() + h_.back());
    }
}

const BigNat& TSeries::h(long m) {
    if (m < 0) throw std::out_of_range("TSeries::h: negative index");
    extend_to(m);
    return h_[static_cast<size_t>(m)];
}

const BigNat& TSeries::count(long n) {
    if (n < 0) throw std::out_of_range("TSeries::count: negative length");
    if (n > 0) extend_to(n - 1);
    return prefix_[static_cast<size_t>(n)];
}

TSeries& TCache::table(int d) {
    auto it = tables_.find(d);
    if (it == tables_.end()) {
        if (max_tables_ > 0 && tables_.size() >= max_tables_) {
            auto victim = tables_.begin();
            for (auto e = tables_.begin(); e != tables_.end(); ++e)
                if (e->second.last_used < victim->second.last_used) victim = e;
            tables_.erase(victim);
        }
        it = tables_.emplace(d, Entry{TSeries(d), 0}).first;
    }
    it->second.last_used = ++tick_;
    return it->second.series;
}

BigNat TCache::count_T(long d, long n) {
    if (n < 0) return BigNat(0);
    if (d < 0) d = 0;  // Convention: T(i, n) = T(0, n) for i < 0
    return table(static_cast<int>(d)).count(n);
}

BigNat TCache::count_union(long d, long e, long n) {
    if (d < 0) throw std::invalid_argument("count_union: d must be >= 0");
    if (e < 0 || e > n) throw std::invalid_argument("count_union: need 0 <= e <= n");
    // T(d,n) and x^e T(d-1, n-e) intersect exactly in x^e T(d, n-e):
    // prepending x's never creates an interior run.
    return count_T(d, n) + count_T(d - 1, n - e) - count_T(d, n - e);
}

namespace {

// Membership in T(d, n) by scanning interior x-runs; enumeration-side
// predicate, deliberately not routed through the tables.
bool word_in_T(const std::string& w, int d) {
    long first_y = -1, last_y = -1;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 'y') {
            if (first_y < 0) first_y = static_cast<long>(i);
            last_y = static_cast<long>(i);
        }
    }
    if (first_y < 0) return true;  // x^n
    long run = 0;
    for (long i = first_y + 1; i <= last_y; ++i) {
        if (w[static_cast<size_t>(i)] == 'x') {
            ++run;
        } else {
            if (run < d) return false;
            run = 0;
        }
    }
    return true;
}

}  // namespace

std::set<std::string> enumerate_T(int d, int n, int cap) {
    if (n < 0) throw std::invalid_argument("enumerate_T: n must be >= 0");
    if (n > cap) throw std::length_error("enumerate_T: n exceeds enumeration cap");
    std::set<std::string> out;
    const unsigned long total = 1ul << n;
    std::string w(static_cast<size_t>(n), 'x');
    for (unsigned long mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i)
            w[static_cast<size_t>(i)] = (mask >> i) & 1 ? 'y' : 'x';
        if (word_in_T(w, d)) out.insert(w);
    }
    return out;
}

ExtFloat ext_count_T(long d, long n) {
    if (n < 0) return ExtFloat();
    if (d < 0) d = 0;
    const long s = d + 1;
    // Sliding window of the last s h-values plus a running prefix sum.
    std::vector<ExtFloat> win(static_cast<size_t>(s));
    ExtFloat sum(1.0);  // the leading 1 of the closed form
    for (long m = 0; m < n; ++m) {
        ExtFloat v;
        if (m == 0) {
            v = ExtFloat(1.0);
        } else {
            v = win[static_cast<size_t>((m - 1) % s)];
            if (m >= s) v += win[static_cast<size_t>(m % s)];
        }
        win[static_cast<size_t>(m % s)] = v;
        sum += v;
    }
    return sum;
}

BigNat count_T_streaming(long d, long n) {
    if (n < 0) return BigNat(0);
    if (d < 0) d = 0;
    const long s = d + 1;
    std::vector<BigNat> win(static_cast<size_t>(s));
    BigNat sum(1);
    for (long m = 0; m < n; ++m) {
        BigNat v;
        if (m == 0) {
            v = BigNat(1);
        } else {
            v = win[static_cast<size_t>((m - 1) % s)];
            if (m >= s) v += win[static_cast<size_t>(m % s)];
        }
        win[static_cast<size_t>(m % s)] = v;
        sum += v;
    }
    return sum;
}

double log_count_T(long d, long n) {
    return ext_count_T(d, n).log();
}

namespace {

// Shared streaming skeleton: calls sink(n, prefix) at each requested length.
template <typename Value, typename Sink>
void stream_counts(long d, const std::vector<long>& lengths, Sink sink) {
    if (lengths.empty()) return;
    if (d < 0) d = 0;
    const long s = d + 1;
    const long n_hi = lengths.back();
    std::vector<Value> win(static_cast<size_t>(s));
    Value sum(1);
    size_t next_out = 0;
    for (long m = 0; m <= n_hi; ++m) {
        while (next_out < lengths.size() && lengths[next_out] == m)
            sink(lengths[next_out++], sum);
        if (m == n_hi) break;
        Value v;
        if (m == 0) {
            v = Value(1);
        } else {
            v = win[static_cast<size_t>((m - 1) % s)];
            if (m >= s) v += win[static_cast<size_t>(m % s)];
        }
        win[static_cast<size_t>(m % s)] = v;
        sum += v;
    }
}

}  // namespace

std::vector<ExtFloat> ext_count_T_multi(long d, const std::vector<long>& lengths) {
    std::vector<ExtFloat> out(lengths.size());
    stream_counts<ExtFloat>(d, lengths, [&](long n, const ExtFloat& v) {
        for (size_t i = 0; i < lengths.size(); ++i)
            if (lengths[i] == n) out[i] = v;
    });
    return out;
}

std::vector<BigNat> count_T_streaming_multi(long d, const std::vector<long>& lengths) {
    std::vector<BigNat> out(lengths.size());
    stream_counts<BigNat>(d, lengths, [&](long n, const BigNat& v) {
        for (size_t i = 0; i < lengths.size(); ++i)
            if (lengths[i] == n) out[i] = v;
    });
    return out;
}

}  // namespace growth::tseries
