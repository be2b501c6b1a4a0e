#include "hc/print.hpp"

namespace hc {

namespace {

// term precedence: 0 = sum, 1 = product, 2 = atomic
void print_term(const Arena& a, TermId t, int level, std::string& out) {
    const TermNode& n = a.term(t);
    switch (n.kind) {
        case TermKind::Var: out += a.var_name(n.symbol); return;
        case TermKind::Zero: out += '0'; return;
        case TermKind::Succ:
            out += "S(";
            print_term(a, a.args(t)[0], 0, out);
            out += ')';
            return;
        case TermKind::Add: {
            bool paren = level > 0;
            if (paren) out += '(';
            print_term(a, a.args(t)[0], 0, out);  // left-associative
            out += " + ";
            print_term(a, a.args(t)[1], 1, out);
            if (paren) out += ')';
            return;
        }
        case TermKind::Mul: {
            bool paren = level > 1;
            if (paren) out += '(';
            print_term(a, a.args(t)[0], 1, out);
            out += " * ";
            print_term(a, a.args(t)[1], 2, out);
            if (paren) out += ')';
            return;
        }
        case TermKind::Skolem: {
            out += '$';
            out += std::to_string(n.symbol);
            auto as = a.args(t);
            if (!as.empty()) {
                out += '(';
                for (std::size_t i = 0; i < as.size(); ++i) {
                    if (i) out += ", ";
                    print_term(a, as[i], 0, out);
                }
                out += ')';
            }
            return;
        }
    }
}

// formula precedence: 0 = implication/quantifier, 1 = disjunction,
// 2 = conjunction, 3 = negation/atom
void print_formula(const Arena& a, FormulaId f, int level, std::string& out) {
    const FormulaNode& n = a.formula(f);
    auto parenthesize = [&](int mine, auto&& body) {
        bool paren = level > mine;
        if (paren) out += '(';
        body();
        if (paren) out += ')';
    };
    switch (n.kind) {
        case FormulaKind::Eq:
            print_term(a, n.t0, 0, out);
            out += " = ";
            print_term(a, n.t1, 0, out);
            return;
        case FormulaKind::Le:
            print_term(a, n.t0, 0, out);
            out += " <= ";
            print_term(a, n.t1, 0, out);
            return;
        case FormulaKind::Not: {
            const FormulaNode& c = a.formula(n.f0);
            if (c.kind == FormulaKind::Eq) {
                print_term(a, c.t0, 0, out);
                out += " != ";
                print_term(a, c.t1, 0, out);
            } else {
                out += "!(";
                print_formula(a, n.f0, 0, out);
                out += ')';
            }
            return;
        }
        case FormulaKind::And:
            parenthesize(2, [&] {
                print_formula(a, n.f0, 2, out);  // left-associative
                out += " & ";
                print_formula(a, n.f1, 3, out);
            });
            return;
        case FormulaKind::Or:
            parenthesize(1, [&] {
                print_formula(a, n.f0, 1, out);
                out += " | ";
                print_formula(a, n.f1, 2, out);
            });
            return;
        case FormulaKind::Implies:
            parenthesize(0, [&] {
                print_formula(a, n.f0, 1, out);
                out += " -> ";
                print_formula(a, n.f1, 0, out);  // right-associative
            });
            return;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            parenthesize(0, [&] {
                out += n.kind == FormulaKind::Forall ? "forall " : "exists ";
                out += a.var_name(n.var);
                out += " (";
                print_formula(a, n.f0, 0, out);
                out += ')';
            });
            return;
        case FormulaKind::BoundedForall:
        case FormulaKind::BoundedExists:
            parenthesize(0, [&] {
                out += n.kind == FormulaKind::BoundedForall ? "forall "
                                                            : "exists ";
                out += a.var_name(n.var);
                out += " <= ";
                print_term(a, n.t0, 0, out);
                out += " (";
                print_formula(a, n.f0, 0, out);
                out += ')';
            });
            return;
    }
}

}  // namespace

std::string term_text(const Arena& a, TermId t) {
    std::string out;
    print_term(a, t, 0, out);
    return out;
}

std::string formula_text(const Arena& a, FormulaId f) {
    std::string out;
    print_formula(a, f, 0, out);
    return out;
}

}  // namespace hc
