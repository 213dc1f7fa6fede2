#pragma once

#include <set>
#include <string>
#include <vector>

#include "growth/bignat.hpp"
#include "growth/construct.hpp"

namespace growth::language {

// Run-length view of a binary word: x^i y x^{a_1} y ... y x^j, or a pure
// power of x. Round-trips with the letter form.
struct Runs {
    bool pure_x = false;
    long length = 0;
    long lead = 0;                // i
    std::vector<long> interior;   // a_1 .. a_s (s >= 0)
    long trail = 0;               // j

    static Runs of(const std::string& w);
    std::string word() const;
};

// Membership in T(d, |w|): w = x^n, or every interior x-run >= d. Words with
// at most one y are always members; d <= 0 imposes no constraint.
bool in_T(const std::string& w, long d);

// Per-length (d_n, e_n) parameters defining the constructed language; the
// length-n slice is T(d_n, n) union x^{e_n} T(d_n - 1, n - e_n).
struct LanguageSpec {
    std::vector<long> d;
    std::vector<long> e;

    long n_max() const { return static_cast<long>(d.size()) - 1; }
    static LanguageSpec from_trace(const construct::ConstructionTrace& trace);
};

bool in_language(const std::string& w, const LanguageSpec& spec);

// All length-n members, by filtering the 2^n binary words; cardinality must
// match count_union(d_n, e_n, n). Guarded by the enumeration cap.
std::set<std::string> enumerate_language(const LanguageSpec& spec, long n, int cap = 16);

struct FactorViolation {
    std::string word;    // a member
    std::string factor;  // one of its factors that is not a member
};

// Factor-closure check: every contiguous subword of every member of length
// <= n_max must itself be a member. Violations are data.
std::vector<FactorViolation> check_factorial(const LanguageSpec& spec, long n_max, int cap = 16);

// Trie + failure-link automaton over a finite alphabet whose live-state
// walks are exactly the words avoiding every forbidden factor.
class AvoidanceAutomaton {
public:
    static AvoidanceAutomaton build(const std::vector<std::string>& forbidden,
                                    const std::string& alphabet);

    const std::string& alphabet() const { return alphabet_; }
    long live_states() const { return static_cast<long>(next_.size()); }

    // -1 is the dead state.
    long step(long state, char c) const;
    bool accepts(const std::string& w) const;

    // g(n) = number of live words of length n, 0..n_max, by state-occupancy DP.
    std::vector<BigNat> count_avoiding(long n_max) const;

    enum class GrowthKind { polynomial, exponential };
    struct Classification {
        GrowthKind kind;
        long degree = 0;  // meaningful when polynomial
    };

    // Exponential iff some reachable strongly connected component of the
    // live graph carries two distinct cycles; otherwise polynomial with
    // degree = (max number of cyclic components along a path) - 1.
    Classification classify() const;

private:
    std::string alphabet_;
    std::vector<std::vector<long>> next_;  // [state][letter index] -> state or -1
};

struct NecessityViolation {
    long n, m;
    std::string g_m, g_n;
};

// g(m) <= g(n)^2 for 1 <= n, n <= m <= 2n <= n_max; the factorial-language
// necessity condition. Violations are data.
std::vector<NecessityViolation> check_necessity(const std::vector<BigNat>& g, long n_max);

// Forbidden-set file: one word per line, '#' comments ignored.
std::vector<std::string> load_forbidden_file(const std::string& path);

}  // namespace growth::language
