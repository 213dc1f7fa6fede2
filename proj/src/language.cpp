#include "growth/language.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <stdexcept>

namespace growth::language {

Runs Runs::of(const std::string& w) {
    Runs r;
    r.length = static_cast<long>(w.size());
    std::vector<long> runs;  // x-run lengths between/around y's
    long cur = 0;
    long ys = 0;
    for (char c : w) {
        if (c == 'x') {
            ++cur;
        } else if (c == 'y') {
            runs.push_back(cur);
            cur = 0;
            ++ys;
        } else {
            throw std::invalid_argument("Runs: word must be over {x, y}");
        }
    }
    if (ys == 0) {
        r.pure_x = true;
        r.lead = r.length;
        return r;
    }
    r.lead = runs.front();
    r.interior.assign(runs.begin() + 1, runs.end());
    r.trail = cur;
    return r;
}

std::string Runs::word() const {
    if (pure_x) return std::string(static_cast<size_t>(length), 'x');
    std::string w(static_cast<size_t>(lead), 'x');
    w.push_back('y');
    for (long a : interior) {
        w.append(static_cast<size_t>(a), 'x');
        w.push_back('y');
    }
    w.append(static_cast<size_t>(trail), 'x');
    return w;
}

bool in_T(const std::string& w, long d) {
    Runs r = Runs::of(w);
    if (r.pure_x || d <= 0) return true;
    for (long a : r.interior)
        if (a < d) return false;
    return true;
}

LanguageSpec LanguageSpec::from_trace(const construct::ConstructionTrace& trace) {
    LanguageSpec spec;
    spec.d.reserve(trace.rows.size());
    spec.e.reserve(trace.rows.size());
    for (const auto& row : trace.rows) {
        spec.d.push_back(row.d);
        spec.e.push_back(row.e);
    }
    return spec;
}

bool in_language(const std::string& w, const LanguageSpec& spec) {
    const long n = static_cast<long>(w.size());
    if (n > spec.n_max())
        throw std::out_of_range("in_language: word longer than spec range");
    const long dn = spec.d[static_cast<size_t>(n)];
    const long en = spec.e[static_cast<size_t>(n)];
    if (in_T(w, dn)) return true;
    if (en > n) return false;
    for (long i = 0; i < en; ++i)
        if (w[static_cast<size_t>(i)] != 'x') return false;
    return in_T(w.substr(static_cast<size_t>(en)), dn - 1);
}

std::set<std::string> enumerate_language(const LanguageSpec& spec, long n, int cap) {
    if (n < 0 || n > spec.n_max())
        throw std::out_of_range("enumerate_language: n outside spec range");
    if (n > cap) throw std::length_error("enumerate_language: n exceeds enumeration cap");
    std::set<std::string> out;
    const unsigned long total = 1ul << n;
    std::string w(static_cast<size_t>(n), 'x');
    for (unsigned long mask = 0; mask < total; ++mask) {
        for (long i = 0; i < n; ++i)
            w[static_cast<size_t>(i)] = (mask >> i) & 1 ? 'y' : 'x';
        if (in_language(w, spec)) out.insert(w);
    }
    return out;
}

std::vector<FactorViolation> check_factorial(const LanguageSpec& spec, long n_max, int cap) {
    if (n_max > spec.n_max())
        throw std::out_of_range("check_factorial: n_max outside spec range");
    std::vector<FactorViolation> out;
    std::vector<std::set<std::string>> members;
    for (long n = 0; n <= n_max; ++n)
        members.push_back(enumerate_language(spec, n, cap));
    for (long n = 1; n <= n_max; ++n) {
        for (const auto& w : members[static_cast<size_t>(n)]) {
            for (long m = 0; m < n; ++m) {
                for (long i = 0; i + m <= n; ++i) {
                    std::string factor = w.substr(static_cast<size_t>(i), static_cast<size_t>(m));
                    if (!members[static_cast<size_t>(m)].count(factor))
                        out.push_back({w, factor});
                }
            }
        }
    }
    return out;
}

AvoidanceAutomaton AvoidanceAutomaton::build(const std::vector<std::string>& forbidden,
                                             const std::string& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("automaton: empty alphabet");
    for (size_t i = 0; i < alphabet.size(); ++i)
        for (size_t j = i + 1; j < alphabet.size(); ++j)
            if (alphabet[i] == alphabet[j])
                throw std::invalid_argument("automaton: alphabet symbols must be distinct");
    auto letter_index = [&](char c) -> long {
        auto pos = alphabet.find(c);
        if (pos == std::string::npos)
            throw std::invalid_argument(std::string("automaton: symbol '") + c +
                                        "' not in alphabet");
        return static_cast<long>(pos);
    };

    const long k = static_cast<long>(alphabet.size());
    // Trie with goto edges; node 0 is the root.
    std::vector<std::vector<long>> child(1, std::vector<long>(static_cast<size_t>(k), -1));
    std::vector<bool> terminal(1, false);
    for (const auto& w : forbidden) {
        if (w.empty())
            throw std::invalid_argument("automaton: empty forbidden word kills every word");
        long node = 0;
        for (char c : w) {
            long li = letter_index(c);
            if (child[static_cast<size_t>(node)][static_cast<size_t>(li)] < 0) {
                child[static_cast<size_t>(node)][static_cast<size_t>(li)] =
                    static_cast<long>(child.size());
                child.emplace_back(static_cast<size_t>(k), -1);
                terminal.push_back(false);
            }
            node = child[static_cast<size_t>(node)][static_cast<size_t>(li)];
        }
        terminal[static_cast<size_t>(node)] = true;
    }

    // Failure links (BFS); a node whose failure chain hits a terminal also
    // contains a forbidden factor.
    std::vector<long> fail(child.size(), 0);
    std::queue<long> bfs;
    for (long c = 0; c < k; ++c) {
        long v = child[0][static_cast<size_t>(c)];
        if (v >= 0) bfs.push(v);
    }
    while (!bfs.empty()) {
        long u = bfs.front();
        bfs.pop();
        if (terminal[static_cast<size_t>(fail[static_cast<size_t>(u)])])
            terminal[static_cast<size_t>(u)] = true;
        for (long c = 0; c < k; ++c) {
            long v = child[static_cast<size_t>(u)][static_cast<size_t>(c)];
            if (v < 0) continue;
            long f = fail[static_cast<size_t>(u)];
            while (f != 0 && child[static_cast<size_t>(f)][static_cast<size_t>(c)] < 0)
                f = fail[static_cast<size_t>(f)];
            long fc = child[static_cast<size_t>(f)][static_cast<size_t>(c)];
            fail[static_cast<size_t>(v)] = (fc >= 0 && fc != v) ? fc : 0;
            bfs.push(v);
        }
    }

    // Totalized transitions, then restrict to live (non-terminal) states.
    std::vector<std::vector<long>> delta(child.size(),
                                         std::vector<long>(static_cast<size_t>(k)));
    for (size_t u = 0; u < child.size(); ++u) {
        for (long c = 0; c < k; ++c) {
            long f = static_cast<long>(u);
            while (f != 0 && child[static_cast<size_t>(f)][static_cast<size_t>(c)] < 0)
                f = fail[static_cast<size_t>(f)];
            long v = child[static_cast<size_t>(f)][static_cast<size_t>(c)];
            delta[u][static_cast<size_t>(c)] = v >= 0 ? v : 0;
        }
    }

    std::vector<long> remap(child.size(), -1);
    long live = 0;
    for (size_t u = 0; u < child.size(); ++u)
        if (!terminal[u]) remap[u] = live++;
    if (remap[0] < 0)
        throw std::invalid_argument("automaton: root is dead (empty forbidden word?)");

    AvoidanceAutomaton a;
    a.alphabet_ = alphabet;
    a.next_.assign(static_cast<size_t>(live), std::vector<long>(static_cast<size_t>(k), -1));
    for (size_t u = 0; u < child.size(); ++u) {
        if (terminal[u]) continue;
        for (long c = 0; c < k; ++c) {
            long v = delta[u][static_cast<size_t>(c)];
            a.next_[static_cast<size_t>(remap[u])][static_cast<size_t>(c)] =
                terminal[static_cast<size_t>(v)] ? -1 : remap[static_cast<size_t>(v)];
        }
    }
    return a;
}

long AvoidanceAutomaton::step(long state, char c) const {
    if (state < 0) return -1;
    auto pos = alphabet_.find(c);
    if (pos == std::string::npos)
        throw std::invalid_argument("automaton: symbol not in alphabet");
    return next_[static_cast<size_t>(state)][pos];
}

bool AvoidanceAutomaton::accepts(const std::string& w) const {
    long s = 0;
    for (char c : w) {
        s = step(s, c);
        if (s < 0) return false;
    }
    return true;
}

std::vector<BigNat> AvoidanceAutomaton::count_avoiding(long n_max) const {
    std::vector<BigNat> g;
    g.reserve(static_cast<size_t>(n_max) + 1);
    std::vector<BigNat> occ(next_.size(), BigNat(0));
    occ[0] = BigNat(1);
    for (long n = 0;; ++n) {
        BigNat total(0);
        for (const auto& v : occ) total += v;
        g.push_back(total);
        if (n == n_max) break;
        std::vector<BigNat> nxt(next_.size(), BigNat(0));
        for (size_t u = 0; u < next_.size(); ++u) {
            if (occ[u] == BigNat(0)) continue;
            for (long v : next_[u])
                if (v >= 0) nxt[static_cast<size_t>(v)] += occ[u];
        }
        occ = std::move(nxt);
    }
    return g;
}

AvoidanceAutomaton::Classification AvoidanceAutomaton::classify() const {
    const long m = live_states();
    // Tarjan SCC over the live graph.
    std::vector<long> comp(static_cast<size_t>(m), -1), low(static_cast<size_t>(m)),
        idx(static_cast<size_t>(m), -1);
    std::vector<long> stack;
    std::vector<bool> on_stack(static_cast<size_t>(m), false);
    long counter = 0, ncomp = 0;

    // Iterative Tarjan to avoid recursion-depth limits on long tries.
    struct Frame {
        long v;
        size_t edge;
    };
    for (long root = 0; root < m; ++root) {
        if (idx[static_cast<size_t>(root)] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        while (!call.empty()) {
            Frame& fr = call.back();
            long v = fr.v;
            if (fr.edge == 0) {
                idx[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = counter++;
                stack.push_back(v);
                on_stack[static_cast<size_t>(v)] = true;
            }
            bool descended = false;
            while (fr.edge < next_[static_cast<size_t>(v)].size()) {
                long w = next_[static_cast<size_t>(v)][fr.edge++];
                if (w < 0) continue;
                if (idx[static_cast<size_t>(w)] < 0) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<size_t>(w)])
                    low[static_cast<size_t>(v)] =
                        std::min(low[static_cast<size_t>(v)], idx[static_cast<size_t>(w)]);
            }
            if (descended) continue;
            if (low[static_cast<size_t>(v)] == idx[static_cast<size_t>(v)]) {
                long w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<size_t>(w)] = false;
                    comp[static_cast<size_t>(w)] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            call.pop_back();
            if (!call.empty()) {
                long parent = call.back().v;
                low[static_cast<size_t>(parent)] =
                    std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
            }
        }
    }

    // Per-component vertex/edge tallies; a strongly connected component with
    // more internal edges than vertices carries two distinct cycles.
    std::vector<long> verts(static_cast<size_t>(ncomp), 0), edges(static_cast<size_t>(ncomp), 0);
    for (long v = 0; v < m; ++v) {
        ++verts[static_cast<size_t>(comp[static_cast<size_t>(v)])];
        for (long w : next_[static_cast<size_t>(v)])
            if (w >= 0 && comp[static_cast<size_t>(w)] == comp[static_cast<size_t>(v)])
                ++edges[static_cast<size_t>(comp[static_cast<size_t>(v)])];
    }
    std::vector<bool> cyclic(static_cast<size_t>(ncomp), false);
    for (long c = 0; c < ncomp; ++c)
        cyclic[static_cast<size_t>(c)] = edges[static_cast<size_t>(c)] >= 1 &&
                                         (verts[static_cast<size_t>(c)] > 1 ||
                                          edges[static_cast<size_t>(c)] >= 1);

    // Reachability from the root's component, in the condensation.
    std::vector<bool> reach(static_cast<size_t>(ncomp), false);
    {
        std::vector<long> todo{comp[0]};
        reach[static_cast<size_t>(comp[0])] = true;
        std::vector<std::set<long>> out(static_cast<size_t>(ncomp));
        for (long v = 0; v < m; ++v)
            for (long w : next_[static_cast<size_t>(v)])
                if (w >= 0 && comp[static_cast<size_t>(w)] != comp[static_cast<size_t>(v)])
                    out[static_cast<size_t>(comp[static_cast<size_t>(v)])].insert(
                        comp[static_cast<size_t>(w)]);
        while (!todo.empty()) {
            long c = todo.back();
            todo.pop_back();
            for (long w : out[static_cast<size_t>(c)])
                if (!reach[static_cast<size_t>(w)]) {
                    reach[static_cast<size_t>(w)] = true;
                    todo.push_back(w);
                }
        }
        for (long c = 0; c < ncomp; ++c)
            if (reach[static_cast<size_t>(c)] && cyclic[static_cast<size_t>(c)] &&
                edges[static_cast<size_t>(c)] > verts[static_cast<size_t>(c)])
                return {GrowthKind::exponential, 0};

        // Longest path in the condensation counting cyclic components.
        // Tarjan emits components in reverse topological order, so component
        // ids increase from sinks to sources: process in increasing id.
        std::vector<long> best(static_cast<size_t>(ncomp), 0);
        for (long c = 0; c < ncomp; ++c) {
            long b = 0;
            for (long w : out[static_cast<size_t>(c)])
                b = std::max(b, best[static_cast<size_t>(w)]);
            best[static_cast<size_t>(c)] = b + (cyclic[static_cast<size_t>(c)] ? 1 : 0);
        }
        long cycles_on_path = best[static_cast<size_t>(comp[0])];
        return {GrowthKind::polynomial, std::max(0l, cycles_on_path - 1)};
    }
}

std::vector<NecessityViolation> check_necessity(const std::vector<BigNat>& g, long n_max) {
    if (static_cast<long>(g.size()) <= n_max)
        throw std::out_of_range("check_necessity: g not defined up to n_max");
    std::vector<NecessityViolation> out;
    for (long n = 1; 2 * n <= n_max; ++n) {
        BigNat bound = g[static_cast<size_t>(n)] * g[static_cast<size_t>(n)];
        for (long m = n; m <= 2 * n; ++m) {
            if (g[static_cast<size_t>(m)] > bound)
                out.push_back({n, m, g[static_cast<size_t>(m)].str(),
                               g[static_cast<size_t>(n)].str()});
        }
    }
    return out;
}

std::vector<std::string> load_forbidden_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open forbidden-set file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

}  // namespace growth::language
