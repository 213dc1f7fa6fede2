#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "growth/construct.hpp"
#include "growth/language.hpp"
#include "growth/lemmas.hpp"
#include "growth/targets.hpp"
#include "growth/tseries.hpp"

namespace {

using growth::BigNat;

// "d=1..64,n=2..256:2,t=0..3" -> ranges with optional stride.
growth::lemmas::GridSpec parse_grid(const std::string& spec) {
    growth::lemmas::GridSpec grid;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        auto eq = part.find('=');
        auto dots = part.find("..");
        if (eq == std::string::npos || dots == std::string::npos)
            throw CLI::ValidationError("--grid", "expected var=lo..hi[:stride], got '" + part + "'");
        std::string var = part.substr(0, eq);
        growth::lemmas::Range r;
        r.lo = std::stol(part.substr(eq + 1, dots - eq - 1));
        std::string rest = part.substr(dots + 2);
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            r.hi = std::stol(rest.substr(0, colon));
            r.stride = std::stol(rest.substr(colon + 1));
        } else {
            r.hi = std::stol(rest);
        }
        if (var == "d")
            grid.d = r;
        else if (var == "n")
            grid.n = r;
        else if (var == "t")
            grid.t = r;
        else
            throw CLI::ValidationError("--grid", "unknown grid variable '" + var + "'");
    }
    return grid;
}

growth::targets::GrowthTarget make_target(const std::string& input, const std::string& family,
                                          long table_len) {
    if (!family.empty()) return growth::targets::builtin(family, table_len);
    if (!input.empty()) return growth::targets::load_csv_file(input);
    throw CLI::ValidationError("target", "need --input or --family");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void echo_config(std::ostream& out, const std::vector<std::string>& kv) {
    for (const auto& line : kv) out << "# " << line << '\n';
}

int cmd_tcount(long d, long n, bool log_mode) {
    growth::tseries::TCache cache;
    if (log_mode)
        std::cout << growth::tseries::log_count_T(d, n) << '\n';
    else
        std::cout << cache.count_T(d, n).str() << '\n';
    return 0;
}

int cmd_validate(const std::string& input, const std::string& family, long nmax) {
    auto target = make_target(input, family, 2 * nmax);
    auto report = growth::targets::validate(target, nmax);
    if (report.ok()) {
        std::cout << "valid on 0.." << nmax << '\n';
        return 0;
    }
    if (!report.condition1_ok)
        std::cout << "condition 1 fails: f(" << report.c1_m << ") > f(" << report.c1_n
                  << ")^2\n";
    if (!report.condition2_ok)
        std::cout << "condition 2 fails: f(" << report.c2_n << ") < " << report.c2_n + 1
                  << '\n';
    return 1;
}

struct ConstructArgs {
    std::string input, family, out, checkpoint, plot_out;
    long N = 8;
    long nmax = 0;
    bool check = false, domination = false, linear_search = false;
};

int cmd_construct(const ConstructArgs& args) {
    auto raw = make_target(args.input, args.family, 2 * args.nmax);
    auto target = growth::targets::normalize(raw);
    if (target.origin() != raw.origin())
        std::cerr << "target normalized to f(0)=1, f(1)=2\n";

    growth::construct::ConstructionConfig cfg;
    cfg.N = args.N;
    cfg.n_max = args.nmax;
    cfg.linear_search = args.linear_search;
    if (!args.checkpoint.empty()) cfg.checkpoint_path = args.checkpoint;

    growth::tseries::TCache cache(256);
    auto trace = cfg.checkpoint_path ? growth::construct::resume(target, cfg, cache)
                                     : growth::construct::run(target, cfg, cache);

    std::vector<std::string> echo = {
        "target=" + target.origin(), "target_sha_echo=" + trace.target_sha,
        "n_max=" + std::to_string(cfg.n_max),
        "search=" + std::string(cfg.linear_search ? "linear" : "binary")};
    if (!args.out.empty()) {
        auto out = open_out(args.out);
        growth::construct::save_trace(trace, out, echo);
    }
    if (!args.plot_out.empty()) {
        auto out = open_out(args.plot_out);
        growth::construct::emit_plot_data(trace, target, out);
    }

    int rc = 0;
    if (args.check) {
        auto violations = growth::construct::check_trace(trace, target, cache);
        if (violations.empty()) {
            std::cout << "check_trace: 0 violations over " << trace.rows.size() << " rows\n";
        } else {
            for (const auto& v : violations)
                std::cout << "violation at n=" << v.n << ": " << v.what << '\n';
            rc = 1;
        }
    }
    if (args.domination) {
        auto dom = growth::construct::empirical_domination(trace, target);
        if (dom.found)
            std::cout << "domination: least C=" << dom.C << " on window [" << dom.window_lo
                      << ", " << dom.window_hi << "]\n";
        else {
            std::cout << "domination: no candidate C passes\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_verify_lemmas(const std::string& lemma, const std::string& grid_spec,
                      const std::string& mode, const std::string& out_path,
                      const std::string& input, const std::string& family, long nmax,
                      long threads) {
    auto grid = parse_grid(grid_spec);
    grid.threads = threads;
    if (mode == "logfloat")
        grid.mode = growth::lemmas::Mode::logfloat;
    else if (mode != "exact")
        throw CLI::ValidationError("--mode", "must be exact or logfloat");

    growth::lemmas::LemmaReport report;
    if (lemma == "3.2")
        report = growth::lemmas::verify_doubling(grid);
    else if (lemma == "3.3")
        report = growth::lemmas::verify_conditional_two_thirds(grid);
    else if (lemma == "3.4")
        report = growth::lemmas::verify_shift(grid);
    else if (lemma == "3.5")
        report = growth::lemmas::verify_base(grid);
    else if (lemma == "3.6")
        report = growth::lemmas::verify_512(grid);
    else if (lemma == "3.7")
        report = growth::lemmas::verify_tower(grid);
    else if (lemma == "remark")
        report = growth::lemmas::verify_remark(make_target(input, family, nmax), grid);
    else
        throw CLI::ValidationError("--lemma", "must be one of 3.2 3.3 3.4 3.5 3.6 3.7 remark");

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        echo_config(out, {"lemma=" + lemma, "grid=" + grid_spec, "mode=" + mode});
        growth::lemmas::write_report_csv(report, out);
    }
    std::cout << "lemma " << report.lemma << ": " << report.passed << '/' << report.checked
              << " passed, " << report.vacuous << " vacuous, " << report.skipped
              << " skipped, " << report.exploratory_failures << " exploratory failures, "
              << report.failures.size() << " failures\n";
    return report.ok() ? 0 : 1;
}

int cmd_language(const std::string& action, const std::string& trace_path, long n) {
    auto trace = growth::construct::load_trace_file(trace_path);
    auto spec = growth::language::LanguageSpec::from_trace(trace);
    if (action == "enumerate") {
        for (const auto& w : growth::language::enumerate_language(spec, n))
            std::cout << (w.empty() ? "(epsilon)" : w) << '\n';
        return 0;
    }
    if (action == "count") {
        std::cout << growth::language::enumerate_language(spec, n).size() << '\n';
        return 0;
    }
    if (action == "check-hereditary") {
        auto violations = growth::language::check_factorial(spec, n);
        if (violations.empty()) {
            std::cout << "hereditary up to n=" << n << '\n';
            return 0;
        }
        for (const auto& v : violations)
            std::cout << "factor '" << v.factor << "' of member '" << v.word
                      << "' is not a member\n";
        return 1;
    }
    throw CLI::ValidationError("language", "unknown action '" + action + "'");
}

int cmd_avoid(const std::string& action, const std::string& forbidden_path,
              const std::string& alphabet, long nmax, const std::string& out_path) {
    auto forbidden = growth::language::load_forbidden_file(forbidden_path);
    auto automaton = growth::language::AvoidanceAutomaton::build(forbidden, alphabet);
    if (action == "count") {
        auto g = automaton.count_avoiding(nmax);
        std::ostringstream body;
        echo_config(body, {"forbidden=" + forbidden_path, "alphabet=" + alphabet,
                           "nmax=" + std::to_string(nmax)});
        body << "n,g\n";
        for (size_t n = 0; n < g.size(); ++n) body << n << ',' << g[n].str() << '\n';
        if (out_path.empty())
            std::cout << body.str();
        else
            open_out(out_path) << body.str();
        return 0;
    }
    if (action == "classify") {
        auto cls = automaton.classify();
        if (cls.kind == growth::language::AvoidanceAutomaton::GrowthKind::exponential)
            std::cout << "exponential\n";
        else
            std::cout << "polynomial degree=" << cls.degree << '\n';
        return 0;
    }
    throw CLI::ValidationError("avoid", "unknown action '" + action + "'");
}

int cmd_compare(const std::string& f_path, const std::string& g_path, long C, long nmax,
                const std::string& use) {
    auto ft = growth::targets::load_csv_file(f_path);
    auto gt = growth::targets::load_csv_file(g_path);
    const auto& fv = use == "f" ? ft.f_values() : ft.F_values();
    const auto& gv = use == "f" ? gt.f_values() : gt.F_values();
    auto r = growth::targets::compare(fv, gv, C, nmax);
    if (r.dominated) {
        std::cout << "g(n) <= f(" << C << "n) on 1.." << nmax << '\n';
        return 0;
    }
    std::cout << "fails at n=" << r.first_failure << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of gap-constrained word counts, admissible growth "
                 "targets, and the hereditary-language construction realizing them"};
    app.require_subcommand(1);
    app.set_config("--config");
    long threads = 1;
    app.add_option("--threads", threads, "Worker threads for grid verification");

    // tcount
    auto* tc = app.add_subcommand("tcount", "Print #T(d, n)");
    long tc_d = 0, tc_n = 0;
    bool tc_log = false;
    tc->add_option("--d", tc_d, "Gap parameter d")->required();
    tc->add_option("--n", tc_n, "Word length n")->required();
    tc->add_flag("--log", tc_log, "Print ln #T(d, n) instead (approximate)");

    // validate
    auto* va = app.add_subcommand("validate", "Check growth-target admissibility");
    std::string va_input, va_family;
    long va_nmax = 0;
    va->add_option("--input", va_input, "Growth-target CSV (header n,f)");
    va->add_option("--family", va_family, "Builtin family name[:param]");
    va->add_option("--nmax", va_nmax, "Check conditions on 0..nmax")->required();

    // construct
    auto* co = app.add_subcommand("construct", "Run the recursion producing d_n/e_n/a/A");
    ConstructArgs ca;
    co->add_option("--input", ca.input, "Growth-target CSV (header n,f)");
    co->add_option("--family", ca.family, "Builtin family name[:param]");
    co->add_option("--N", ca.N, "Initial-segment cutoff N");
    co->add_option("--nmax", ca.nmax, "Last row n to produce")->required();
    co->add_option("--out", ca.out, "Trace CSV output path");
    co->add_option("--checkpoint", ca.checkpoint, "Checkpoint path (resumes if present)");
    co->add_option("--plot-out", ca.plot_out, "Plot-data CSV (n,A,F,ratio_log)");
    co->add_flag("--check", ca.check, "Verify every trace inequality afterwards");
    co->add_flag("--domination", ca.domination, "Report least C with F(n) <= A(Cn)");
    co->add_flag("--linear-search", ca.linear_search,
                 "Select d_n/e_n by linear scan instead of binary search");

    // verify-lemmas
    auto* vl = app.add_subcommand("verify-lemmas", "Check a stated inequality over a grid");
    std::string vl_lemma, vl_grid, vl_mode = "exact", vl_out, vl_input, vl_family;
    long vl_nmax = 0;
    vl->add_option("--lemma", vl_lemma, "One of 3.2 3.3 3.4 3.5 3.6 3.7 remark")->required();
    vl->add_option("--grid", vl_grid, "Grid, e.g. d=1..64,n=2..256:2,t=0..3")->required();
    vl->add_option("--mode", vl_mode, "exact or logfloat (with exact escalation)");
    vl->add_option("--out", vl_out, "Report CSV output path");
    vl->add_option("--input", vl_input, "Growth-target CSV (remark only)");
    vl->add_option("--family", vl_family, "Builtin family (remark only)");
    vl->add_option("--nmax", vl_nmax, "Target table length (remark only)");

    // language
    auto* la = app.add_subcommand("language", "Query the constructed hereditary language");
    std::string la_action, la_trace;
    long la_n = 0;
    la->add_option("action", la_action, "enumerate, count, or check-hereditary")->required();
    la->add_option("--trace", la_trace, "Trace CSV from construct")->required();
    la->add_option("--n", la_n, "Word length (or max length for check-hereditary)")
        ->required();

    // avoid
    auto* av = app.add_subcommand("avoid", "Finite forbidden-factor counting engine");
    std::string av_action, av_forbidden, av_alphabet = "xy", av_out;
    long av_nmax = 0;
    av->add_option("action", av_action, "count or classify")->required();
    av->add_option("--forbidden", av_forbidden, "File with one forbidden word per line")
        ->required();
    av->add_option("--alphabet", av_alphabet, "Alphabet as a string of distinct symbols");
    av->add_option("--nmax", av_nmax, "Count lengths 0..nmax");
    av->add_option("--out", av_out, "Counts CSV output path");

    // compare
    auto* cp = app.add_subcommand("compare", "Asymptotic-order check g(n) <= f(Cn)");
    std::string cp_f, cp_g, cp_use = "F";
    long cp_C = 1, cp_nmax = 0;
    cp->add_option("--f", cp_f, "Dominating target CSV")->required();
    cp->add_option("--g", cp_g, "Dominated target CSV")->required();
    cp->add_option("--C", cp_C, "Dilation constant")->required();
    cp->add_option("--nmax", cp_nmax, "Check on 1..nmax")->required();
    cp->add_option("--use", cp_use, "Compare per-length f or cumulative F (default F)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*tc) return cmd_tcount(tc_d, tc_n, tc_log);
        if (*va) return cmd_validate(va_input, va_family, va_nmax);
        if (*co) return cmd_construct(ca);
        if (*vl)
            return cmd_verify_lemmas(vl_lemma, vl_grid, vl_mode, vl_out, vl_input, vl_family,
                                     vl_nmax, threads);
        if (*la) return cmd_language(la_action, la_trace, la_n);
        if (*av) return cmd_avoid(av_action, av_forbidden, av_alphabet, av_nmax, av_out);
        if (*cp) return cmd_compare(cp_f, cp_g, cp_C, cp_nmax, cp_use);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
