// =============================================================================
// hcw.cpp
//
// Command-line front door.  Subcommands wire the pipeline together:
//
//   skolemize        normalization and witness-symbol introduction
//   solve            search for an evaluation of a term set
//   refute           climb hulls until some level has no evaluation
//   check-universal  decide a single-variable claim at a point
//   model            extract the finite structure behind a witness
//   hull             print a closure of a base term set
//   code             growth report for the iterated squaring chain
//
// Exit codes: 0 witness/true, 1 inconsistent/false, 2 input error,
// 3 budget exhausted / undecided.  Output is deterministic for fixed
// inputs; only --wall-budget can change how many hull levels are tried.
// =============================================================================
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hc/coding.hpp"
#include "hc/model.hpp"
#include "hc/normalize.hpp"
#include "hc/parse.hpp"
#include "hc/print.hpp"
#include "hc/report.hpp"
#include "hc/search.hpp"
#include "hc/skolem.hpp"

namespace {

using namespace hc;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

struct Options {
    std::string preset_name;
    std::string theory_file;
    std::string terms_file;
    std::string base_inline;
    std::string formula;
    std::string psi;
    std::string point;
    std::string format;
    std::string strategy = "propagate";
    unsigned hull_level = 0;
    unsigned max_level = 2;
    unsigned chain = 16;
    unsigned jobs = 1;
    std::uint64_t max_nodes = SearchOptions{}.max_nodes;
    std::uint64_t wall_budget_ms = 0;
    std::size_t dfs_cap = SearchOptions{}.dfs_domain_cap;
    bool csv = false;
};

Format resolve_format(const std::string& flag) {
    std::string v = flag;
    if (v.empty()) {
        const char* env = std::getenv("HCW_FORMAT");
        v = env ? env : "text";
    }
    if (v == "text") return Format::Text;
    if (v == "json") return Format::Json;
    throw DomainError("unknown format '" + v + "' (expected text or json)");
}

SearchOptions search_options(const Options& o) {
    SearchOptions so;
    if (o.strategy == "brute") {
        so.strategy = Strategy::Brute;
    } else if (o.strategy == "propagate") {
        so.strategy = Strategy::Propagate;
    } else {
        throw DomainError("unknown strategy '" + o.strategy +
                          "' (expected brute or propagate)");
    }
    so.max_nodes = o.max_nodes;
    so.jobs = o.jobs == 0 ? 1 : o.jobs;
    so.dfs_domain_cap = o.dfs_cap;
    return so;
}

Theory load_theory(Arena& a, SkolemRegistry& reg, const Options& o) {
    const bool have_preset = !o.preset_name.empty();
    const bool have_file = !o.theory_file.empty();
    if (have_preset == have_file)
        throw DomainError("provide exactly one theory source "
                          "(--preset or --theory)");
    if (have_preset) return preset(a, reg, o.preset_name);
    std::vector<FormulaId> axioms = parse_theory_text(a, slurp(o.theory_file));
    return make_theory(a, reg, file_stem(o.theory_file), axioms);
}

TermSet load_terms(Arena& a, const Options& o) {
    const bool have_file = !o.terms_file.empty();
    const bool have_inline = !o.base_inline.empty();
    if (have_file == have_inline)
        throw DomainError("provide exactly one term-set source "
                          "(--terms or --base)");
    std::vector<TermId> ts;
    if (have_file) {
        ts = parse_term_list_text(a, slurp(o.terms_file));
    } else {
        std::string_view rest = o.base_inline;
        while (!rest.empty()) {
            std::size_t semi = rest.find(';');
            std::string_view piece = rest.substr(0, semi);
            rest = semi == std::string_view::npos ? std::string_view{}
                                                  : rest.substr(semi + 1);
            std::size_t b = piece.find_first_not_of(" \t");
            if (b == std::string_view::npos) continue;
            std::size_t e = piece.find_last_not_of(" \t");
            ts.push_back(parse_term(a, piece.substr(b, e - b + 1)));
        }
    }
    if (ts.empty()) throw DomainError("term-set source is empty");
    return make_term_set(a, std::move(ts), "user");
}

int exit_for(const SearchOutcome& o) {
    switch (o.kind) {
        case SearchOutcome::Kind::Witness: return 0;
        case SearchOutcome::Kind::Inconsistent: return 1;
        default: return 3;
    }
}

int cmd_skolemize(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    const int sources = !o.preset_name.empty() + !o.theory_file.empty() +
                        !o.formula.empty();
    if (sources != 1)
        throw DomainError("provide exactly one input "
                          "(--preset, --theory, or --formula)");
    if (!o.formula.empty()) {
        FormulaId f = parse_formula(a, o.formula);
        SkolemizedFormula sk = skolemize(a, f, reg);
        std::cout << render_skolemization(a, sk, reg, fmt);
        return 0;
    }
    Theory t = load_theory(a, reg, o);
    std::cout << render_theory(a, t, reg, fmt);
    return 0;
}

int cmd_solve(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    Theory t = load_theory(a, reg, o);
    TermSet lam = load_terms(a, o);
    if (o.hull_level > 0) lam = theory_hull(a, lam, o.hull_level, reg, t);
    SearchOutcome out = find_evaluation(a, t, lam, search_options(o));
    std::cout << render_outcome(a, out, fmt);
    return exit_for(out);
}

int cmd_refute(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    Theory t = load_theory(a, reg, o);
    TermSet base = load_terms(a, o);
    RefutationResult r = herbrand_refute(a, reg, t, base, o.max_level,
                                         search_options(o), o.wall_budget_ms);
    std::cout << render_refutation(a, r, fmt);
    return exit_for(r.outcome);
}

int cmd_check_universal(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    Theory t = load_theory(a, reg, o);
    TermSet lam = load_terms(a, o);
    if (o.hull_level > 0) lam = theory_hull(a, lam, o.hull_level, reg, t);
    if (o.psi.empty()) throw DomainError("--psi is required");
    if (o.point.empty()) throw DomainError("--term is required");
    FormulaId psi = parse_formula(a, o.psi);
    TermId point = parse_term(a, o.point);
    UniversalCheck u = check_universal(a, t, psi, point, lam,
                                       search_options(o));
    std::cout << render_universal(a, u, fmt);
    switch (u.verdict) {
        case UniversalCheck::Verdict::Proved: return 0;
        case UniversalCheck::Verdict::Refuted: return 1;
        default: return 3;
    }
}

int cmd_model(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    Theory t = load_theory(a, reg, o);
    TermSet lam = load_terms(a, o);
    if (o.hull_level > 0) lam = theory_hull(a, lam, o.hull_level, reg, t);
    SearchOutcome out = find_evaluation(a, t, lam, search_options(o));
    if (out.kind != SearchOutcome::Kind::Witness) {
        std::cout << render_outcome(a, out, fmt);
        return exit_for(out);
    }
    FiniteHerbrandModel m = extract_model(a, *out.witness, lam);
    std::cout << render_model(a, m, fmt);
    return 0;
}

int cmd_hull(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    Theory t = load_theory(a, reg, o);
    TermSet base = load_terms(a, o);
    TermSet lam = o.hull_level == 0
                      ? std::move(base)
                      : theory_hull(a, base, o.hull_level, reg, t);
    std::cout << render_hull(a, lam, fmt);
    return 0;
}

int cmd_code(const Options& o) {
    Arena a;
    SkolemRegistry reg(a);
    Format fmt = resolve_format(o.format);
    std::string preset_name =
        o.preset_name.empty() ? "OMEGA0" : o.preset_name;
    Options with_preset = o;
    with_preset.preset_name = preset_name;
    with_preset.theory_file.clear();
    Theory t = load_theory(a, reg, with_preset);
    SkolemId q = k_invalid;
    for (const SkolemEntry& e : reg.entries())
        if (e.arity == 1) {
            q = e.symbol;
            break;
        }
    if (q == k_invalid)
        throw DomainError("theory '" + t.name +
                          "' declares no unary witness symbol");
    GrowthReport rep = q_chain_report(a, q, o.chain);
    if (o.csv) {
        std::cout << "i,value_bits,code_bits\n";
        for (const GrowthRow& r : rep.rows)
            std::cout << r.i << ',' << r.value_bits << ',' << r.code_bits
                      << '\n';
        return 0;
    }
    if (fmt == Format::Json) {
        std::string s = "{\n  \"fitted_c\": " + std::to_string(rep.fitted_c)
                        + ",\n  \"rows\": [";
        for (std::size_t k = 0; k < rep.rows.size(); ++k) {
            const GrowthRow& r = rep.rows[k];
            s += k ? ",\n    " : "\n    ";
            s += "{\"i\": " + std::to_string(r.i) +
                 ", \"value_bits\": " + std::to_string(r.value_bits) +
                 ", \"code_bits\": " + std::to_string(r.code_bits) + "}";
        }
        s += "\n  ]\n}\n";
        std::cout << s;
        return 0;
    }
    std::cout << "   i  value_bits  code_bits\n";
    for (const GrowthRow& r : rep.rows) {
        std::printf("%4u  %10llu  %9llu\n", r.i,
                    static_cast<unsigned long long>(r.value_bits),
                    static_cast<unsigned long long>(r.code_bits));
    }
    std::printf("fitted c: %.3f\n", rep.fitted_c);
    return 0;
}

void add_theory_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--preset", o.preset_name,
                    "bundled theory (EX2, EX3, T1, IND_SQ, OMEGA0, EX3_PLUS)");
    cmd->add_option("--theory", o.theory_file,
                    "theory file, one closed formula per line");
}

void add_terms_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--terms", o.terms_file,
                    "term-set file, one ground term per line");
    cmd->add_option("--base", o.base_inline,
                    "inline ground terms, semicolon separated");
}

void add_search_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--strategy", o.strategy, "brute or propagate");
    cmd->add_option("--max-nodes", o.max_nodes, "search node budget");
    cmd->add_option("--jobs", o.jobs, "worker threads (same output)");
    cmd->add_option("--dfs-cap", o.dfs_cap,
                    "largest term-set size the witness search will attempt");
}

void add_format_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format,
                    "text or json (default: $HCW_FORMAT or text)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for Herbrand consistency of arithmetic fragments"};
    app.require_subcommand(1);
    Options o;
    int rc = 0;

    CLI::App* sk = app.add_subcommand(
        "skolemize", "normalize and introduce witness symbols");
    add_theory_flags(sk, o);
    sk->add_option("--formula", o.formula, "single closed formula");
    add_format_flag(sk, o);
    sk->callback([&] { rc = cmd_skolemize(o); });

    CLI::App* so = app.add_subcommand(
        "solve", "search for an evaluation of a term set");
    add_theory_flags(so, o);
    add_terms_flags(so, o);
    so->add_option("--hull", o.hull_level, "grow the term set to this level");
    add_search_flags(so, o);
    add_format_flag(so, o);
    so->callback([&] { rc = cmd_solve(o); });

    CLI::App* re = app.add_subcommand(
        "refute", "climb hulls until no evaluation exists");
    add_theory_flags(re, o);
    add_terms_flags(re, o);
    re->add_option("--max-level", o.max_level, "deepest hull level to try");
    re->add_option("--wall-budget", o.wall_budget_ms,
                   "milliseconds before giving up between levels");
    add_search_flags(re, o);
    add_format_flag(re, o);
    re->callback([&] { rc = cmd_refute(o); });

    CLI::App* cu = app.add_subcommand(
        "check-universal", "decide a one-variable claim at a point");
    add_theory_flags(cu, o);
    add_terms_flags(cu, o);
    cu->add_option("--psi", o.psi, "open formula with one free variable");
    cu->add_option("--term", o.point, "ground term to instantiate at");
    cu->add_option("--hull", o.hull_level, "grow the term set to this level");
    add_search_flags(cu, o);
    add_format_flag(cu, o);
    cu->callback([&] { rc = cmd_check_universal(o); });

    CLI::App* mo = app.add_subcommand(
        "model", "extract the finite structure behind a witness");
    add_theory_flags(mo, o);
    add_terms_flags(mo, o);
    mo->add_option("--hull", o.hull_level, "grow the term set to this level");
    add_search_flags(mo, o);
    add_format_flag(mo, o);
    mo->callback([&] { rc = cmd_model(o); });

    CLI::App* hu = app.add_subcommand(
        "hull", "closure of a base term set under available symbols");
    add_theory_flags(hu, o);
    add_terms_flags(hu, o);
    hu->add_option("--level", o.hull_level, "closure depth");
    add_format_flag(hu, o);
    hu->callback([&] { rc = cmd_hull(o); });

    CLI::App* co = app.add_subcommand(
        "code", "growth report for the iterated squaring chain");
    co->add_option("--chain", o.chain, "chain length");
    co->add_option("--preset", o.preset_name,
                   "theory supplying the unary witness symbol");
    co->add_flag("--csv", o.csv, "emit CSV instead of a table");
    add_format_flag(co, o);
    co->callback([&] { rc = cmd_code(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
