#include "growth/construct.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace growth::construct {

namespace {

// Smallest value in [lo, hi] satisfying a monotone predicate (false..false,
// true..true), or -1. The binary route relies on count_T decreasing in d and
// count_union decreasing in e; the linear route is the literal definition.
template <typename Pred>
long smallest_satisfying(long lo, long hi, bool linear, Pred pred) {
    if (lo > hi) return -1;
    if (linear) {
        for (long v = lo; v <= hi; ++v)
            if (pred(v)) return v;
        return -1;
    }
    if (!pred(hi)) return -1;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

void require(bool cond, long n, const std::string& what) {
    if (!cond)
        throw std::logic_error("construction invariant failed at n=" + std::to_string(n) +
                               ": " + what);
}

void append_row(ConstructionTrace& trace, const targets::GrowthTarget& target,
                const ConstructionConfig& cfg, tseries::TCache& cache, long n) {
    const BigNat& F_n = target.F(n);
    TraceRow row;
    row.n = n;
    row.F = F_n;
    const bool first = trace.rows.empty();
    const BigNat A_prev = first ? BigNat(0) : trace.rows.back().A;
    const long d_prev = first ? 0 : trace.rows.back().d;
    const long e_prev = first ? 0 : trace.rows.back().e;

    if (n <= cfg.N) {
        row.d = n;
        row.e = n;
        row.a = BigNat(n + 1);
        row.A = A_prev + row.a;
        if (row.A > F_n)
            throw InvalidTarget("target violates f(n) >= n+1 in the initial segment at n=" +
                                std::to_string(n));
    } else {
        const BigNat budget = F_n - A_prev;
        long d = smallest_satisfying(d_prev, n, cfg.linear_search, [&](long cand) {
            return cache.count_T(cand, n) <= budget;
        });
        if (d < 0)
            throw SearchExhausted(n, "d-search exhausted at n=" + std::to_string(n) +
                                         ": A(n-1)=" + A_prev.str() + ", F(n)=" + F_n.str() +
                                         ", #T(n-1,n)=" + cache.count_T(n - 1, n).str());
        row.d = d;
        row.in_x = d > d_prev;
        const long e_lo = row.in_x ? 0 : e_prev + 1;
        long e = smallest_satisfying(e_lo, n, cfg.linear_search, [&](long cand) {
            return cache.count_union(d, cand, n) <= budget;
        });
        if (e < 0)
            throw SearchExhausted(n, "e-search exhausted at n=" + std::to_string(n) +
                                         ": A(n-1)=" + A_prev.str() + ", F(n)=" + F_n.str());
        row.e = e;
        row.in_y = row.in_x || e > e_prev + 1;
        row.a = cache.count_union(d, e, n);
        row.A = A_prev + row.a;

        require(!row.in_x || row.e >= 1, n, "e_n >= 1 for n in X");
        require(row.in_x || row.d == d_prev, n, "d_n = d_{n-1} off X");
        require(row.in_x || row.e >= e_prev + 1, n, "e_n >= e_{n-1}+1 off X");
    }
    require(row.d <= n, n, "d_n <= n");
    require(row.e >= 0 && row.e <= n, n, "e_n in [0, n]");
    require(row.a >= BigNat(n + 1), n, "a(n) >= n+1");
    require(row.A <= F_n, n, "A(n) <= F(n)");
    trace.rows.push_back(std::move(row));
}

void extend(ConstructionTrace& trace, const targets::GrowthTarget& target,
            const ConstructionConfig& cfg, tseries::TCache& cache) {
    for (long n = static_cast<long>(trace.rows.size()); n <= cfg.n_max; ++n) {
        append_row(trace, target, cfg, cache, n);
        if (cfg.checkpoint_path &&
            (n == cfg.n_max || (cfg.checkpoint_stride > 0 && n % cfg.checkpoint_stride == 0)))
            write_checkpoint(trace, *cfg.checkpoint_path);
    }
}

void check_preconditions(const targets::GrowthTarget& target, const ConstructionConfig& cfg) {
    if (cfg.N < 1 || cfg.n_max < cfg.N)
        throw InvalidTarget("config requires 1 <= N <= n_max");
    if (target.n_max() < cfg.n_max)
        throw InvalidTarget("target not defined up to n_max");
    if (target.f(0) != BigNat(1) || target.f(1) != BigNat(2))
        throw InvalidTarget("target not normalized: need f(0)=1, f(1)=2");
    // Condition (1) probes m <= 2n, so the checkable range is half the table.
    auto report = targets::validate(target, target.n_max() / 2);
    if (!report.ok())
        throw InvalidTarget("target fails admissibility validation");
}

}  // namespace

ConstructionTrace run(const targets::GrowthTarget& target, const ConstructionConfig& cfg,
                      tseries::TCache& cache) {
    check_preconditions(target, cfg);
    ConstructionTrace trace;
    trace.target_sha = target.sha256();
    trace.N = cfg.N;
    extend(trace, target, cfg, cache);
    return trace;
}

std::vector<TraceViolation> check_trace(const ConstructionTrace& trace,
                                        const targets::GrowthTarget& target,
                                        tseries::TCache& cache) {
    std::vector<TraceViolation> out;
    auto flag = [&](long n, const std::string& what) { out.push_back({n, what}); };
    BigNat A_prev(0);
    long d_prev = 0, e_prev = 0;
    for (size_t i = 0; i < trace.rows.size(); ++i) {
        const TraceRow& r = trace.rows[i];
        const long n = r.n;
        if (n != static_cast<long>(i)) {
            flag(n, "rows not contiguous from 0");
            break;
        }
        if (r.F != target.F(n)) flag(n, "F(n) does not match target");
        if (r.d < 0 || r.d > n) flag(n, "d_n outside [0, n]");
        if (r.e < 0 || r.e > n) flag(n, "e_n outside [0, n]");
        if (i > 0 && r.d < d_prev) flag(n, "d_n not weakly increasing");
        if (n > trace.N && r.in_x != (r.d > d_prev)) flag(n, "in_x inconsistent with d jump");
        if (r.a < BigNat(n + 1)) flag(n, "a(n) < n+1");
        if (r.A != A_prev + r.a) flag(n, "A(n) != A(n-1) + a(n)");
        if (r.A > r.F) flag(n, "A(n) > F(n)");
        if (n <= trace.N) {
            if (r.d != n || r.e != n) flag(n, "initial segment must have d_n = e_n = n");
            if (r.in_x) flag(n, "X must avoid the initial segment");
        } else {
            if (r.a != cache.count_union(r.d, r.e, n)) flag(n, "a(n) != union count");
            bool expect_y = r.in_x || r.e > e_prev + 1;
            if (r.in_y != expect_y) flag(n, "in_y inconsistent");
            if (r.in_x) {
                if (r.e < 1) flag(n, "e_n = 0 on X");
                // f(p) < #T(d_p - 1, p) for p in X
                if (!(target.f(n) < cache.count_T(r.d - 1, n)))
                    flag(n, "f(p) < #T(d_p-1, p) fails on X");
            } else {
                if (r.d != d_prev) flag(n, "d_n != d_{n-1} off X");
                if (r.e < e_prev + 1) flag(n, "e_n < e_{n-1}+1 off X");
                if (r.e > e_prev + 1) {
                    // late e-jump witness: e_p - 1 must have failed the budget
                    if (!(A_prev + cache.count_union(r.d, r.e - 1, n) > r.F))
                        flag(n, "e-minimality witness fails off X");
                }
            }
            if (r.in_y) {
                // F(n) <= A(n) + #T(d_n - 1, n - e_n - d_n + 1)
                if (!(r.F <= r.A + cache.count_T(r.d - 1, n - r.e - r.d + 1)))
                    flag(n, "F(n) <= A(n) + #T(d_n-1, n-e_n-d_n+1) fails on Y");
            }
        }
        A_prev = r.A;
        d_prev = r.d;
        e_prev = r.e;
    }
    return out;
}

DominationResult empirical_domination(const ConstructionTrace& trace,
                                      const targets::GrowthTarget& target,
                                      std::vector<long> C_candidates) {
    if (C_candidates.empty())
        for (long c = 1; c <= (1l << 16); c *= 2) C_candidates.push_back(c);
    const long n_max = static_cast<long>(trace.rows.size()) - 1;
    bool any_window = false;
    for (long C : C_candidates) {
        const long lo = trace.N + 1;
        const long hi = n_max / C;
        if (hi < lo) continue;
        any_window = true;
        bool pass = true;
        std::vector<BigNat> margins;
        margins.reserve(static_cast<size_t>(hi - lo + 1));
        for (long n = lo; n <= hi && pass; ++n) {
            const BigNat& F_n = target.F(n);
            const BigNat& A_Cn = trace.rows[static_cast<size_t>(C * n)].A;
            if (F_n > A_Cn)
                pass = false;
            else
                margins.push_back(A_Cn - F_n);
        }
        if (pass) {
            DominationResult r;
            r.found = true;
            r.C = C;
            r.window_lo = lo;
            r.window_hi = hi;
            r.margins = std::move(margins);
            return r;
        }
    }
    if (!any_window)
        throw WindowEmpty("empirical_domination: every candidate window [N+1, n_max/C] is empty");
    return {};
}

void save_trace(const ConstructionTrace& trace, std::ostream& out,
                const std::vector<std::string>& config_echo) {
    out << "# target_sha=" << trace.target_sha << '\n';
    out << "# N=" << trace.N << '\n';
    for (const auto& line : config_echo) out << "# " << line << '\n';
    out << "n,d,e,in_x,in_y,a,A,F\n";
    for (const auto& r : trace.rows)
        out << r.n << ',' << r.d << ',' << r.e << ',' << (r.in_x ? 1 : 0) << ','
            << (r.in_y ? 1 : 0) << ',' << r.a.str() << ',' << r.A.str() << ',' << r.F.str()
            << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ConstructionTrace load_trace(std::istream& in) {
    ConstructionTrace trace;
    trace.N = -1;
    std::string line;
    bool header_seen = false;
    long expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# target_sha=", 0) == 0)
                trace.target_sha = line.substr(13);
            else if (line.rfind("# N=", 0) == 0)
                trace.N = std::stol(line.substr(4));
            continue;
        }
        if (!header_seen) {
            if (line != "n,d,e,in_x,in_y,a,A,F")
                throw CorruptCheckpoint("trace CSV: unexpected header: " + line);
            header_seen = true;
            continue;
        }
        auto cols = split_csv(line);
        if (cols.size() != 8) throw CorruptCheckpoint("trace CSV: malformed row: " + line);
        TraceRow r;
        try {
            r.n = std::stol(cols[0]);
            if (r.n != expected)
                throw CorruptCheckpoint("trace CSV: rows not contiguous from 0 (saw n=" +
                                        cols[0] + ", expected " + std::to_string(expected) +
                                        ")");
            r.d = std::stol(cols[1]);
            r.e = std::stol(cols[2]);
            r.in_x = cols[3] == "1";
            r.in_y = cols[4] == "1";
            r.a = BigNat(cols[5]);
            r.A = BigNat(cols[6]);
            r.F = BigNat(cols[7]);
        } catch (const CorruptCheckpoint&) {
            throw;
        } catch (const std::exception&) {
            throw CorruptCheckpoint("trace CSV: unparsable row: " + line);
        }
        trace.rows.push_back(std::move(r));
        ++expected;
    }
    if (!header_seen) throw CorruptCheckpoint("trace CSV: missing header");
    return trace;
}

ConstructionTrace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorruptCheckpoint("cannot open trace file: " + path);
    return load_trace(in);
}

void write_checkpoint(const ConstructionTrace& trace, const std::string& path) {
    // Write-then-rename so an interrupt never leaves a torn checkpoint.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        save_trace(trace, out);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot finalize checkpoint: " + path);
    std::ofstream meta(path + ".meta");
    meta << trace.target_sha << ",N=" << trace.N
         << ",rows=" << trace.rows.size() << '\n';
}

namespace {

void verify_checkpoint_rows(const ConstructionTrace& trace,
                            const targets::GrowthTarget& target) {
    BigNat A_prev(0);
    long d_prev = 0;
    for (size_t i = 0; i < trace.rows.size(); ++i) {
        const TraceRow& r = trace.rows[i];
        const long n = r.n;
        if (n > target.n_max() || r.F != target.F(n))
            throw CorruptCheckpoint("checkpoint row F mismatch at n=" + std::to_string(n));
        if (r.d < 0 || r.d > n || r.e < 0 || r.e > n || (i > 0 && r.d < d_prev) ||
            r.a < BigNat(n + 1) || r.A != A_prev + r.a || r.A > r.F)
            throw CorruptCheckpoint("checkpoint row invariant failure at n=" + std::to_string(n));
        A_prev = r.A;
        d_prev = r.d;
    }
}

}  // namespace

ConstructionTrace resume(const targets::GrowthTarget& target, const ConstructionConfig& cfg,
                         tseries::TCache& cache) {
    check_preconditions(target, cfg);
    if (!cfg.checkpoint_path)
        throw std::invalid_argument("resume: config has no checkpoint path");
    std::ifstream in(*cfg.checkpoint_path);
    if (!in || in.peek() == std::ifstream::traits_type::eof())
        return run(target, cfg, cache);  // nothing saved yet: full run

    ConstructionTrace trace = load_trace(in);
    if (trace.target_sha != target.sha256())
        throw CorruptCheckpoint("checkpoint target hash does not match this target");
    if (trace.N != cfg.N)
        throw CorruptCheckpoint("checkpoint cutoff N does not match this config");
    verify_checkpoint_rows(trace, target);
    if (static_cast<long>(trace.rows.size()) > cfg.n_max + 1)
        trace.rows.resize(static_cast<size_t>(cfg.n_max) + 1);
    extend(trace, target, cfg, cache);
    return trace;
}

void emit_plot_data(const ConstructionTrace& trace, const targets::GrowthTarget& target,
                    std::ostream& out) {
    out << "n,A,F,ratio_log\n";
    for (const auto& r : trace.rows) {
        if (r.n > target.n_max() || r.F != target.F(r.n))
            throw std::runtime_error("emit_plot_data: trace and target are not aligned at n=" +
                                     std::to_string(r.n));
        double ratio = r.F.log() - r.A.log();
        out << r.n << ',' << r.A.str() << ',' << r.F.str() << ',' << ratio << '\n';
    }
}

}  // namespace growth::construct
