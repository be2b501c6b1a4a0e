// Skolemization pipeline, the shared symbol registry, ground instance
// availability, and hull construction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "hc/coding.hpp"
#include "hc/normalize.hpp"
#include "hc/parse.hpp"
#include "hc/print.hpp"
#include "hc/skolem.hpp"
#include "oracles.hpp"

using namespace hc;

#ifndef HC_DATA_DIR
#define HC_DATA_DIR "tests/data"
#endif

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), {}};
}

TermSet load_lambda(Arena& a, const char* file) {
    auto terms = parse_term_list_text(a, slurp(std::string(HC_DATA_DIR) + "/" + file));
    return make_term_set(a, terms, "user");
}

}  // namespace

TEST_CASE("successor arithmetic axioms Skolemize to the expected open forms") {
    Arena a;
    SkolemRegistry reg(a);
    Theory t = preset(a, reg, "EX3");
    REQUIRE(t.axioms.size() == 4);
    CHECK(formula_text(a, t.axioms[0].sk.open) == "S(v0) != 0");
    CHECK(formula_text(a, t.axioms[1].sk.open) == "v0 + S(v1) = S(v0 + v1)");
    CHECK(formula_text(a, t.axioms[2].sk.open) == "v0 = 0 | v0 = S($0(v0))");
    CHECK(formula_text(a, t.axioms[3].sk.open) ==
          "!(v0 <= v1) | $1(v0, v1) + v0 = v1");
    REQUIRE(reg.size() == 2);
    CHECK(reg.entries()[0].arity == 1);
    CHECK(reg.entries()[1].arity == 2);
    CHECK(theory_symbols(a, t) == std::vector<SkolemId>{0, 1});
    // the code bound covers every symbol the theory uses
    mpz_class bound = theory_code_bound(reg, t);
    for (const SkolemEntry& e : reg.entries()) CHECK(e.body_code <= bound);
}

TEST_CASE("alpha-variant existentials share one symbol") {
    Arena a;
    SkolemRegistry reg(a);
    auto s1 = skolemize(a, parse_formula(a, "forall u (exists w (w = u + u))"), reg);
    auto s2 = skolemize(a, parse_formula(a, "forall p (exists q (q = p + p))"), reg);
    CHECK(reg.size() == 1);
    CHECK(s1.open == s2.open);
    // a structurally different existential gets its own symbol
    skolemize(a, parse_formula(a, "forall u (exists w (w = u * u))"), reg);
    CHECK(reg.size() == 2);
}

TEST_CASE("witness symbols are shared across whole theories") {
    Arena a;
    SkolemRegistry reg(a);
    Theory w = preset(a, reg, "OMEGA0");
    REQUIRE(reg.size() == 1);
    SkolemId witness = reg.entries()[0].symbol;
    Theory ind = preset(a, reg, "IND_SQ");
    // the induction axiom adds only its failure constant; both bounded
    // square-existence subformulas reuse the witness symbol
    REQUIRE(reg.size() == 2);
    CHECK(reg.entries()[1].arity == 0);
    auto syms = theory_symbols(a, ind);
    CHECK(std::find(syms.begin(), syms.end(), witness) != syms.end());
}

TEST_CASE("instances substitute simultaneously and reject bad input") {
    Arena a;
    SkolemRegistry reg(a);
    FormulaId open = skolemize(a, parse_formula(a, "forall x (forall y (x + y = y + x))"), reg).open;
    VarId v0 = a.var_id("v0"), v1 = a.var_id("v1");
    std::unordered_map<VarId, TermId> sub{{v0, a.var(v1)}, {v1, a.zero()}};
    CHECK_THROWS_AS(instance(a, open, sub), DomainError);  // not ground
    sub[v0] = a.numeral(1);
    FormulaId g = instance(a, open, sub);
    CHECK(formula_text(a, g) == "S(0) + 0 = 0 + S(0)");
    std::unordered_map<VarId, TermId> missing{{v0, a.zero()}};
    CHECK_THROWS_AS(instance(a, open, missing), DomainError);
}

TEST_CASE("atom_terms lists maximal terms once, left to right") {
    Arena a;
    FormulaId f = parse_formula(a, "!(v0 <= 0 * 0) | v0 != 0 * 0");
    auto ts = atom_terms(a, f);
    REQUIRE(ts.size() == 2);
    CHECK(term_text(a, ts[0]) == "v0");
    CHECK(term_text(a, ts[1]) == "0 * 0");
    FormulaId g = parse_formula(a, "x + y = y | x <= x + y");
    auto us = atom_terms(a, g);
    REQUIRE(us.size() == 3);
    CHECK(term_text(a, us[0]) == "x + y");
    CHECK(term_text(a, us[1]) == "y");
    CHECK(term_text(a, us[2]) == "x");
}

TEST_CASE("term sets sort by code, deduplicate, and reject open terms") {
    Arena a;
    TermId two = a.numeral(2);
    TermId zz = a.mul(a.zero(), a.zero());
    TermSet s = make_term_set(a, {two, a.zero(), zz, a.zero()}, "user");
    REQUIRE(s.size() == 3);
    CHECK(std::is_sorted(s.terms.begin(), s.terms.end(),
                         [&](TermId x, TermId y) { return term_code_less(a, x, y); }));
    CHECK(s.contains(two));
    CHECK(s.contains(zz));
    CHECK_FALSE(s.contains(a.succ(two)));
    CHECK(s.provenance == "user");
    CHECK_THROWS_AS(make_term_set(a, {a.var("x")}, "user"), DomainError);
}

TEST_CASE("available instances demand every atom-level term in the set") {
    Arena a;
    SkolemRegistry reg(a);
    Theory t = preset(a, reg, "EX2");
    TermSet lam = load_lambda(a, "ex2.lam");
    REQUIRE(lam.size() == 9);
    auto inst = available_instances(a, t, lam);

    // independent recount: try every substitution tuple over the set
    std::size_t expected = 0;
    for (std::size_t ax = 0; ax < t.axioms.size(); ++ax) {
        const auto& fv = t.axioms[ax].sk.free_vars;
        std::vector<std::size_t> idx(fv.size(), 0);
        while (true) {
            std::unordered_map<VarId, TermId> sub;
            for (std::size_t k = 0; k < fv.size(); ++k)
                sub[fv[k]] = lam.terms[idx[k]];
            FormulaId g = instance(a, t.axioms[ax].sk.open, sub);
            auto ts = atom_terms(a, g);
            if (std::all_of(ts.begin(), ts.end(),
                            [&](TermId u) { return lam.contains(u); }))
                ++expected;
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < lam.size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;  // wrapped every position (or none)
        }
    }
    CHECK(inst.size() == expected);
    CHECK(inst.size() == 163);

    // ordering: by axiom, then substitution tuple in code order
    for (std::size_t i = 1; i < inst.size(); ++i)
        CHECK(inst[i - 1].axiom <= inst[i].axiom);

    // every instance really is grounded inside the set
    for (const auto& gi : inst) {
        for (TermId u : gi.args) CHECK(lam.contains(u));
        for (TermId u : atom_terms(a, gi.formula)) CHECK(lam.contains(u));
        CHECK(a.free_vars(gi.formula).empty());
    }

    // the worked substitution u -> 0, v -> S(c)*S(c), x -> S(S(0)) appears
    REQUIRE(reg.entries()[0].arity == 0);
    std::vector<TermId> none;
    TermId c = a.skolem(reg.entries()[0].symbol, none);
    TermId scsc = a.mul(a.succ(c), a.succ(c));
    std::vector<TermId> want{a.zero(), scsc, a.numeral(2)};
    bool found = false;
    for (const auto& gi : inst)
        if (gi.axiom == 1 && gi.args == want) found = true;
    CHECK(found);
}

TEST_CASE("hull steps agree with the brute-force closure") {
    Arena a;
    SkolemRegistry reg(a);
    Theory t = preset(a, reg, "EX3");
    mpz_class j = theory_code_bound(reg, t);
    std::mt19937_64 rng(0x5EED11);
    oracle::GenConfig g;
    g.skolems = {{reg.entries()[0].symbol, 1}, {reg.entries()[1].symbol, 2}};
    g.max_depth = 2;
    for (int round = 0; round < 30; ++round) {
        auto domain = oracle::random_domain(a, rng, g, 1 + round % 5);
        TermSet lam = make_term_set(a, domain, "user");
        TermSet next = hull_step(a, lam, j, reg, std::nullopt, "hull level 1");
        auto by_hand = oracle::hull_step_by_hand(a, lam.terms, j, reg, std::nullopt);
        std::vector<TermId> got = next.terms;
        std::sort(got.begin(), got.end());
        CHECK(got == by_hand);
        CHECK(next.provenance == "hull level 1");
        // hull respects the code threshold: j = 0 admits no new Skolem terms
        TermSet bare = hull_step(a, lam, 0, reg, std::nullopt, "x");
        for (TermId u : bare.terms)
            if (!lam.contains(u)) CHECK(a.term(u).kind != TermKind::Skolem);
        // symbol restriction drops the other symbol's new applications
        std::vector<SkolemId> only{reg.entries()[0].symbol};
        TermSet narrow = hull_step(a, lam, j, reg, only, "x");
        for (TermId u : narrow.terms)
            if (!lam.contains(u) && a.term(u).kind == TermKind::Skolem)
                CHECK(a.term(u).symbol == reg.entries()[0].symbol);
        auto narrow_hand = oracle::hull_step_by_hand(a, lam.terms, j, reg, only);
        std::vector<TermId> got2 = narrow.terms;
        std::sort(got2.begin(), got2.end());
        CHECK(got2 == narrow_hand);
    }
}

TEST_CASE("iterated theory hull grows monotonically") {
    Arena a;
    SkolemRegistry reg(a);
    Theory t = preset(a, reg, "EX3_PLUS");
    REQUIRE(reg.size() == 3);
    std::vector<TermId> none;
    TermId point = a.skolem(reg.entries()[2].symbol, none);
    TermSet base = make_term_set(a, {a.zero(), point}, "user");

    TermSet l0 = theory_hull(a, base, 0, reg, t);
    CHECK(l0.terms == base.terms);
    TermSet l1 = theory_hull(a, base, 1, reg, t);
    CHECK(l1.size() == 18);
    CHECK(l1.provenance == "hull level 1");
    TermSet l2 = theory_hull(a, base, 2, reg, t);
    for (TermId u : l1.terms) CHECK(l2.contains(u));
    for (TermId u : base.terms) CHECK(l1.contains(u));
    // level 2 equals one more step at the same bound
    TermSet step = hull_step(a, l1, theory_code_bound(reg, t), reg,
                             theory_symbols(a, t), "hull level 2");
    CHECK(step.terms == l2.terms);
}
