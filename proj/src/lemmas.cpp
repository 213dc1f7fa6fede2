#include "growth/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <ostream>
#include <sstream>
#include <thread>

#include "growth/extfloat.hpp"
#include "growth/tseries.hpp"

namespace growth::lemmas {

namespace {

constexpr long kStatedThreshold = 1l << 19;
constexpr long kDetailCap = 10000;

std::vector<long> expand(const Range& r) {
    std::vector<long> out;
    if (r.empty()) return out;
    long stride = r.stride > 0 ? r.stride : 1;
    for (long v = r.lo; v <= r.hi; v += stride) out.push_back(v);
    return out;
}

std::string ext_str(const ExtFloat& v) {
    std::ostringstream os;
    os << v.mant << "*2^" << v.exp;
    return os.str();
}

// Records an exact lhs >= rhs check.
void record_exact_ge(std::vector<CellResult>& cells, long detail_budget, CellResult cell,
                     const BigNat& lhs, const BigNat& rhs) {
    cell.pass = lhs >= rhs;
    cell.exact = true;
    cell.log_margin = lhs.log() - rhs.log();
    if (!cell.pass || static_cast<long>(cells.size()) < detail_budget) {
        cell.lhs = lhs.str();
        cell.rhs = rhs.str();
    }
    cells.push_back(std::move(cell));
}

// Marks a cell as outside the lemma's precondition.
void record_skip(std::vector<CellResult>& cells, long d, long n) {
    CellResult cell{d, n};
    cell.skipped = true;
    cells.push_back(std::move(cell));
}

void tally(LemmaReport& report, std::vector<CellResult> cells) {
    for (auto& c : cells) {
        if (c.skipped) {
            ++report.skipped;
            continue;
        }
        if (c.vacuous) {
            ++report.vacuous;
        } else {
            ++report.checked;
            if (c.pass) {
                ++report.passed;
            } else if (c.exploratory) {
                ++report.exploratory_failures;
            } else {
                report.failures.push_back(c);
            }
            report.min_log_margin = std::min(report.min_log_margin, c.log_margin);
        }
        if (static_cast<long>(report.cells.size()) < kDetailCap)
            report.cells.push_back(std::move(c));
    }
}

// Parallel map over the d-axis with a deterministic in-order merge.
template <typename PerD>
LemmaReport run_over_d(const std::string& name, const GridSpec& grid, PerD per_d) {
    LemmaReport report;
    report.lemma = name;
    std::vector<long> ds = expand(grid.d);
    const long threads = std::max(1l, grid.threads);
    if (threads == 1 || ds.size() <= 1) {
        for (long d : ds) tally(report, per_d(d));
        return report;
    }
    std::vector<std::vector<CellResult>> results(ds.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (ds.size() + static_cast<std::size_t>(threads) - 1) /
                        static_cast<std::size_t>(threads);
    for (long t = 0; t < threads; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(ds.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) results[i] = per_d(ds[i]);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& r : results) tally(report, std::move(r));
    return report;
}

}  // namespace

LemmaReport verify_doubling(const GridSpec& grid) {
    auto ns = expand(grid.n);
    return run_over_d("3.2", grid, [&](long d) {
        std::vector<CellResult> cells;
        tseries::TSeries table(static_cast<int>(d));
        for (long n : ns) {
            if (n < 2 || d >= n) { record_skip(cells, d, n); continue; }
            CellResult cell{d, n};
            BigNat lhs = BigNat(n) * table.count(2 * n);
            BigNat rhs = table.count(n) * table.count(n);
            record_exact_ge(cells, kDetailCap, std::move(cell), lhs, rhs);
        }
        return cells;
    });
}

LemmaReport verify_conditional_two_thirds(const GridSpec& grid) {
    auto ns = expand(grid.n);
    return run_over_d("3.3", grid, [&](long d) {
        std::vector<CellResult> cells;
        tseries::TSeries table(static_cast<int>(d));
        for (long n : ns) {
            if (n < 64 || d >= n) { record_skip(cells, d, n); continue; }
            CellResult cell{d, n};
            BigNat Tn = table.count(n);
            // hypothesis #T(d,n) <= n^(4/3), checked exactly as #T^3 <= n^4
            if (Tn.pow(3) > BigNat(n).pow(4)) {
                cell.vacuous = true;
                cells.push_back(std::move(cell));
                continue;
            }
            BigNat lhs = BigNat(8) * BigNat(n).pow(2) * table.count(2 * n).pow(3);
            BigNat rhs = Tn.pow(6);
            record_exact_ge(cells, kDetailCap, std::move(cell), lhs, rhs);
        }
        return cells;
    });
}

LemmaReport verify_shift(const GridSpec& grid) {
    auto ns = expand(grid.n);
    return run_over_d("3.4", grid, [&](long d) {
        std::vector<CellResult> cells;
        tseries::TSeries upper(static_cast<int>(d));
        tseries::TSeries lower(static_cast<int>(std::max(0l, d - 1)));
        for (long n : ns) {
            if (n < 0) { record_skip(cells, d, n); continue; }
            CellResult cell{d, n};
            long N;
            if (d >= 1) {
                // smallest integer N with d(N-2) >= (n-1)(d+1)
                N = 2 + ((n - 1) * (d + 1) + d - 1) / d;
            } else {
                N = n;  // second clause: #T(0,N) >= #T(0,n) for N >= n
            }
            record_exact_ge(cells, kDetailCap, std::move(cell), upper.count(N),
                            lower.count(n));
        }
        return cells;
    });
}

LemmaReport verify_base(const GridSpec& grid) {
    auto ns = expand(grid.n);
    return run_over_d("3.5", grid, [&](long d) {
        std::vector<CellResult> cells;
        for (long n : ns) {
            if (n < 512 || d > n - 1) { record_skip(cells, d, n); continue; }
            CellResult cell{d, n};
            BigNat lhs = tseries::count_T_streaming(d, 4 * n).pow(3);
            BigNat rhs = BigNat(4 * n).pow(4);
            record_exact_ge(cells, kDetailCap, std::move(cell), lhs, rhs);
        }
        return cells;
    });
}

namespace {

// Shared engine for the 512-bound (t = 0 only) and its tower form.
std::vector<CellResult> tower_cells(long d, const std::vector<long>& ns,
                                    const std::vector<long>& ts, const GridSpec& grid) {
    std::vector<CellResult> cells;
    for (long n : ns) {
        if (n < 1 || d < 0) continue;
        const bool exploratory = n < kStatedThreshold;
        std::vector<long> lengths;
        for (long t : ts) lengths.push_back(64 * (1l << t) * n);
        std::vector<long> sorted = lengths;
        std::sort(sorted.begin(), sorted.end());

        if (grid.mode == Mode::logfloat) {
            ExtFloat base = tseries::ext_count_T(d - 1, n);
            auto lhs_all = tseries::ext_count_T_multi(d, sorted);
            for (size_t i = 0; i < ts.size(); ++i) {
                long t = ts[i];
                CellResult cell{d, n, t};
                cell.exploratory = exploratory;
                cell.exact = false;
                auto it = std::find(sorted.begin(), sorted.end(), lengths[i]);
                const ExtFloat& lhs = lhs_all[static_cast<size_t>(it - sorted.begin())];
                ExtFloat rhs = ExtFloat(static_cast<double>(512 * (1l << t)) *
                                        static_cast<double>(n)) *
                               base.pow(1ul << t);
                cell.log_margin = lhs.log() - rhs.log();
                cell.pass = cell.log_margin > 0.0;
                cell.lhs = ext_str(lhs);
                cell.rhs = ext_str(rhs);
                if (cell.log_margin < grid.escalation_threshold) {
                    // margin too thin for float arithmetic: decide exactly
                    if (n >= kStatedThreshold)
                        std::cerr << "[lemmas] escalating to exact arithmetic at n=" << n
                                  << ", d=" << d << ", t=" << t
                                  << "; expect a long runtime\n";
                    BigNat exact_base = tseries::count_T_streaming(d - 1, n);
                    BigNat exact_lhs = tseries::count_T_streaming(d, lengths[i]);
                    BigNat exact_rhs =
                        BigNat(512 * (1l << t) * n) * exact_base.pow(1ul << t);
                    cell.exact = true;
                    cell.pass = exact_lhs >= exact_rhs;
                    cell.log_margin = exact_lhs.log() - exact_rhs.log();
                    cell.lhs = exact_lhs.str();
                    cell.rhs = exact_rhs.str();
                }
                cells.push_back(std::move(cell));
            }
        } else {
            BigNat base = tseries::count_T_streaming(d - 1, n);
            auto lhs_all = tseries::count_T_streaming_multi(d, sorted);
            for (size_t i = 0; i < ts.size(); ++i) {
                long t = ts[i];
                CellResult cell{d, n, t};
                cell.exploratory = exploratory;
                auto it = std::find(sorted.begin(), sorted.end(), lengths[i]);
                BigNat lhs = lhs_all[static_cast<size_t>(it - sorted.begin())];
                BigNat rhs = BigNat(512 * (1l << t) * n) * base.pow(1ul << t);
                record_exact_ge(cells, kDetailCap, std::move(cell), lhs, rhs);
            }
        }
    }
    return cells;
}

}  // namespace

LemmaReport verify_512(const GridSpec& grid) {
    auto ns = expand(grid.n);
    auto r = run_over_d("3.6", grid,
                        [&](long d) { return tower_cells(d, ns, {0}, grid); });
    return r;
}

LemmaReport verify_tower(const GridSpec& grid) {
    auto ns = expand(grid.n);
    auto ts = expand(grid.t);
    if (ts.empty()) ts = {0, 1, 2, 3};
    auto r = run_over_d("3.7", grid,
                        [&](long d) { return tower_cells(d, ns, ts, grid); });
    return r;
}

LemmaReport verify_remark(const targets::GrowthTarget& target, const GridSpec& grid) {
    LemmaReport report;
    report.lemma = "remark";
    auto ps = expand(grid.n);
    auto js = expand(grid.t);
    if (js.empty()) js = {0, 1, 2, 3, 4};
    std::vector<CellResult> cells;
    for (long p : ps) {
        if (p < 1) continue;
        for (long j : js) {
            long hi = p << j;
            if (hi > target.n_max()) {
                ++report.skipped;
                continue;
            }
            long lo = j == 0 ? p : (p << (j - 1));
            CellResult cell{-1, p, j};
            BigNat bound = target.f(p).pow(1ul << j);
            bool pass = true;
            double margin = std::numeric_limits<double>::infinity();
            long bad_i = -1;
            for (long i = lo; i <= hi; ++i) {
                const BigNat& fi = target.f(i);
                margin = std::min(margin, bound.log() - fi.log());
                if (fi > bound) {
                    pass = false;
                    bad_i = i;
                    break;
                }
            }
            cell.pass = pass;
            cell.log_margin = margin;
            cell.lhs = bound.str();
            cell.rhs = pass ? "max f(i) on segment" : target.f(bad_i).str();
            cells.push_back(std::move(cell));
        }
    }
    tally(report, std::move(cells));
    return report;
}

void write_report_csv(const LemmaReport& report, std::ostream& out, long max_rows) {
    out << "# lemma=" << report.lemma << " checked=" << report.checked
        << " passed=" << report.passed << " vacuous=" << report.vacuous
        << " skipped=" << report.skipped
        << " exploratory_failures=" << report.exploratory_failures
        << " failures=" << report.failures.size();
    if (report.checked > 0) out << " min_log_margin=" << report.min_log_margin;
    out << '\n';
    out << "lemma,cell,lhs,rhs,pass,log_margin\n";
    auto emit = [&](const CellResult& c) {
        out << report.lemma << ',';
        if (c.d >= 0) out << "d=" << c.d << ';';
        out << "n=" << c.n;
        if (c.t >= 0) out << ";t=" << c.t;
        if (c.vacuous) out << ";vacuous";
        if (c.exploratory) out << ";exploratory";
        out << ',' << c.lhs << ',' << c.rhs << ',' << (c.pass ? 1 : 0) << ','
            << c.log_margin << '\n';
    };
    long rows = 0;
    for (const auto& c : report.cells) {
        if (rows++ >= max_rows) {
            out << "# remaining cells truncated; failures follow\n";
            break;
        }
        emit(c);
    }
    if (rows > max_rows)
        for (const auto& c : report.failures) emit(c);
}

}  // namespace growth::lemmas
