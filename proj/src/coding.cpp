#include "hc/coding.hpp"

#include <algorithm>
#include <cmath>

#include "hc/code_digits.hpp"

namespace hc {

namespace {

void emit_nat(std::vector<std::uint8_t>& out, std::uint32_t k) {
    out.push_back(digits::NAT_BEGIN);
    std::uint8_t payload[9];
    int len = 0;
    for (std::uint32_t v = k; v > 0 || len == 0; v /= 16)
        payload[len++] = static_cast<std::uint8_t>(digits::NAT_DIGIT_BASE + v % 16);
    for (int i = len - 1; i >= 0; --i) out.push_back(payload[i]);
    out.push_back(digits::NAT_END);
}

void emit_term(const Arena& a, TermId t, std::vector<std::uint8_t>& out) {
    const TermNode& n = a.term(t);
    switch (n.kind) {
        case TermKind::Zero:
            out.push_back(digits::ZERO);
            return;
        case TermKind::Succ:
        case TermKind::Add:
        case TermKind::Mul:
            out.push_back(digits::OPEN);
            out.push_back(n.kind == TermKind::Succ  ? digits::SUCC
                          : n.kind == TermKind::Add ? digits::ADD
                                                    : digits::MUL);
            for (TermId c : a.args(t)) emit_term(a, c, out);
            out.push_back(digits::CLOSE);
            return;
        case TermKind::Var:
        case TermKind::Skolem:
            out.push_back(digits::OPEN);
            out.push_back(n.kind == TermKind::Var ? digits::VAR
                                                  : digits::SKOLEM);
            emit_nat(out, n.symbol);
            for (TermId c : a.args(t)) emit_term(a, c, out);
            out.push_back(digits::CLOSE);
            return;
    }
    throw DomainError("unreachable term kind");
}

std::uint8_t formula_tag(FormulaKind k) {
    switch (k) {
        case FormulaKind::Eq: return digits::EQ;
        case FormulaKind::Le: return digits::LE;
        case FormulaKind::Not: return digits::NOT;
        case FormulaKind::And: return digits::AND;
        case FormulaKind::Or: return digits::OR;
        case FormulaKind::Implies: return digits::IMPLIES;
        case FormulaKind::Forall: return digits::FORALL;
        case FormulaKind::Exists: return digits::EXISTS;
        case FormulaKind::BoundedForall: return digits::BFORALL;
        case FormulaKind::BoundedExists: return digits::BEXISTS;
    }
    throw DomainError("unreachable formula kind");
}

void emit_formula(const Arena& a, FormulaId f, std::vector<std::uint8_t>& out) {
    const FormulaNode& n = a.formula(f);
    out.push_back(digits::OPEN);
    out.push_back(formula_tag(n.kind));
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            emit_term(a, n.t0, out);
            emit_term(a, n.t1, out);
            break;
        case FormulaKind::Not:
            emit_formula(a, n.f0, out);
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            emit_formula(a, n.f0, out);
            emit_formula(a, n.f1, out);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            emit_nat(out, n.var);
            emit_formula(a, n.f0, out);
            break;
        case FormulaKind::BoundedForall:
        case FormulaKind::BoundedExists:
            emit_nat(out, n.var);
            emit_term(a, n.t0, out);
            emit_formula(a, n.f0, out);
            break;
    }
    out.push_back(digits::CLOSE);
}

Code from_digits(const std::vector<std::uint8_t>& ds) {
    mpz_class v = 1;
    for (std::uint8_t d : ds) {
        if (d < 2 || d >= 64) throw DomainError("digit out of range");
        v = v * 64 + d;
    }
    return Code{std::move(v)};
}

// ── decoding ─────────────────────────────────────────────────────────────────

struct DigitReader {
    const std::vector<std::uint8_t>& ds;
    std::size_t pos = 0;

    std::uint8_t peek() const {
        if (pos >= ds.size()) throw DomainError("truncated code");
        return ds[pos];
    }
    std::uint8_t next() {
        std::uint8_t d = peek();
        ++pos;
        return d;
    }
    void expect(std::uint8_t d, const char* what) {
        if (next() != d) throw DomainError(std::string("malformed code: ") + what);
    }
};

std::uint32_t read_nat(DigitReader& r) {
    r.expect(digits::NAT_BEGIN, "expected number");
    std::uint64_t k = 0;
    bool any = false;
    while (r.peek() != digits::NAT_END) {
        std::uint8_t d = r.next();
        if (d < digits::NAT_DIGIT_BASE) throw DomainError("malformed code: digit");
        k = k * 16 + (d - digits::NAT_DIGIT_BASE);
        if (k > 0xFFFFFFFFull) throw DomainError("malformed code: number too large");
        any = true;
    }
    r.next();  // NAT_END
    if (!any) throw DomainError("malformed code: empty number");
    return static_cast<std::uint32_t>(k);
}

TermId read_term(Arena& a, DigitReader& r) {
    if (r.peek() == digits::ZERO) {
        r.next();
        return a.zero();
    }
    r.expect(digits::OPEN, "expected term");
    std::uint8_t tag = r.next();
    TermId result;
    switch (tag) {
        case digits::SUCC:
            result = a.succ(read_term(a, r));
            break;
        case digits::ADD: {
            TermId l = read_term(a, r);
            result = a.add(l, read_term(a, r));
            break;
        }
        case digits::MUL: {
            TermId l = read_term(a, r);
            result = a.mul(l, read_term(a, r));
            break;
        }
        case digits::VAR: {
            std::uint32_t v = read_nat(r);
            if (v >= a.var_count()) throw DomainError("unknown variable in code");
            result = a.var(static_cast<VarId>(v));
            break;
        }
        case digits::SKOLEM: {
            std::uint32_t s = read_nat(r);
            if (s >= a.skolem_count())
                throw DomainError("unknown Skolem symbol in code");
            std::vector<TermId> as;
            while (r.peek() != digits::CLOSE) as.push_back(read_term(a, r));
            result = a.skolem(static_cast<SkolemId>(s), as);
            break;
        }
        default:
            throw DomainError("malformed code: term tag");
    }
    r.expect(digits::CLOSE, "unclosed term");
    return result;
}

FormulaId read_formula(Arena& a, DigitReader& r) {
    r.expect(digits::OPEN, "expected formula");
    std::uint8_t tag = r.next();
    FormulaId result;
    switch (tag) {
        case digits::EQ:
        case digits::LE: {
            TermId l = read_term(a, r);
            TermId rhs = read_term(a, r);
            result = tag == digits::EQ ? a.eq(l, rhs) : a.le(l, rhs);
            break;
        }
        case digits::NOT:
            result = a.not_(read_formula(a, r));
            break;
        case digits::AND:
        case digits::OR:
        case digits::IMPLIES: {
            FormulaId l = read_formula(a, r);
            FormulaId rhs = read_formula(a, r);
            result = tag == digits::AND  ? a.and_(l, rhs)
                     : tag == digits::OR ? a.or_(l, rhs)
                                         : a.implies(l, rhs);
            break;
        }
        case digits::FORALL:
        case digits::EXISTS: {
            std::uint32_t v = read_nat(r);
            if (v >= a.var_count()) throw DomainError("unknown variable in code");
            FormulaId body = read_formula(a, r);
            result = tag == digits::FORALL ? a.forall(v, body) : a.exists(v, body);
            break;
        }
        case digits::BFORALL:
        case digits::BEXISTS: {
            std::uint32_t v = read_nat(r);
            if (v >= a.var_count()) throw DomainError("unknown variable in code");
            TermId bound = read_term(a, r);
            FormulaId body = read_formula(a, r);
            result = tag == digits::BFORALL ? a.bounded_forall(v, bound, body)
                                            : a.bounded_exists(v, bound, body);
            break;
        }
        default:
            throw DomainError("malformed code: formula tag");
    }
    r.expect(digits::CLOSE, "unclosed formula");
    return result;
}

}  // namespace

std::size_t code_length(const Code& c) {
    if (c.value < 64) throw DomainError("not a code: missing sentinel");
    return mpz_sizeinbase(c.value.get_mpz_t(), 64) - 1;
}

std::vector<std::uint8_t> code_digits(const Code& c) {
    std::size_t n = code_length(c);
    std::vector<std::uint8_t> out(n);
    mpz_class v = c.value;
    for (std::size_t i = n; i-- > 0;) {
        mpz_class d = v % 64;
        out[i] = static_cast<std::uint8_t>(d.get_ui());
        v /= 64;
    }
    if (v != 1) throw DomainError("not a code: bad sentinel");
    for (std::uint8_t d : out)
        if (d < 2) throw DomainError("not a code: reserved digit");
    return out;
}

Code encode_digits(const std::vector<std::uint8_t>& ds) { return from_digits(ds); }

Code code_concat(const Code& a, const Code& b) {
    std::size_t nb = code_length(b);
    mpz_class shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), 64, static_cast<unsigned long>(nb));
    // drop b's sentinel, append its digits after a's
    return Code{a.value * shift + (b.value - shift)};
}

Code encode_term(const Arena& a, TermId t) {
    std::vector<std::uint8_t> ds;
    ds.reserve(a.term(t).code_len);
    emit_term(a, t, ds);
    return from_digits(ds);
}

Code encode_formula(const Arena& a, FormulaId f) {
    std::vector<std::uint8_t> ds;
    ds.reserve(a.formula(f).code_len);
    emit_formula(a, f, ds);
    return from_digits(ds);
}

Code encode_term_set(const Arena& a, std::vector<TermId> members) {
    std::sort(members.begin(), members.end(),
              [&](TermId x, TermId y) { return term_code_less(a, x, y); });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<std::uint8_t> ds;
    ds.push_back(digits::OPEN);
    ds.push_back(digits::SET);
    for (TermId t : members) emit_term(a, t, ds);
    ds.push_back(digits::CLOSE);
    return from_digits(ds);
}

Code encode_alternating(const Arena& a, const std::vector<TermId>& terms,
                        const std::vector<bool>& seps) {
    if (terms.empty()) throw DomainError("empty sequence");
    if (seps.size() + 1 != terms.size())
        throw DomainError("separator count must be term count - 1");
    std::vector<std::uint8_t> ds;
    ds.push_back(digits::OPEN);
    ds.push_back(digits::SEQ);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) ds.push_back(seps[i - 1] ? digits::SEP_LT : digits::SEP_EQ);
        emit_term(a, terms[i], ds);
    }
    ds.push_back(digits::CLOSE);
    return from_digits(ds);
}

TermId decode_term(Arena& a, const Code& c) {
    std::vector<std::uint8_t> ds = code_digits(c);
    DigitReader r{ds};
    TermId t = read_term(a, r);
    if (r.pos != ds.size()) throw DomainError("trailing digits after term");
    return t;
}

FormulaId decode_formula(Arena& a, const Code& c) {
    std::vector<std::uint8_t> ds = code_digits(c);
    DigitReader r{ds};
    FormulaId f = read_formula(a, r);
    if (r.pos != ds.size()) throw DomainError("trailing digits after formula");
    return f;
}

// ── omega hierarchy and the q chain ──────────────────────────────────────────

mpz_class omega(unsigned n, const mpz_class& x, std::uint64_t max_bits) {
    if (n > 2) throw DomainError("omega levels above 2 are not supported");
    if (x < 1) throw DomainError("omega requires x >= 1");
    if (n == 0) return x * x;
    // omega_{k+1}(x) = 2^(omega_k(floor(log2 x)))
    mpz_class lg = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
    mpz_class e = lg < 1 ? mpz_class(0) : omega(n - 1, lg, max_bits);
    if (e > max_bits) throw DomainError("omega result exceeds the bit budget");
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e.get_ui());
    return out;
}

std::vector<TermId> q_chain(Arena& a, SkolemId q, unsigned n) {
    if (a.skolem_arity(q) != 1)
        throw DomainError("chain symbol must be unary");
    std::vector<TermId> out;
    out.reserve(n + 1);
    TermId t = a.numeral(2);
    out.push_back(t);
    for (unsigned i = 0; i < n; ++i) {
        TermId args[1] = {t};
        t = a.skolem(q, args);
        out.push_back(t);
    }
    return out;
}

mpz_class squaring_value(const Arena& a, TermId t) {
    const TermNode& n = a.term(t);
    switch (n.kind) {
        case TermKind::Zero:
            return 0;
        case TermKind::Succ:
            return squaring_value(a, a.args(t)[0]) + 1;
        case TermKind::Add:
            return squaring_value(a, a.args(t)[0]) +
                   squaring_value(a, a.args(t)[1]);
        case TermKind::Mul:
            return squaring_value(a, a.args(t)[0]) *
                   squaring_value(a, a.args(t)[1]);
        case TermKind::Skolem: {
            if (n.arity != 1)
                throw DomainError("no standard value for this Skolem symbol");
            mpz_class v = squaring_value(a, a.args(t)[0]);
            return v * v;
        }
        case TermKind::Var:
            throw DomainError("no value for open terms");
    }
    throw DomainError("unreachable term kind");
}

GrowthReport q_chain_report(Arena& a, SkolemId q, unsigned n) {
    GrowthReport rep;
    std::vector<TermId> chain = q_chain(a, q, n);
    double c = 0.0;
    for (unsigned i = 0; i <= n; ++i) {
        mpz_class val = squaring_value(a, chain[i]);
        Code code = encode_term(a, chain[i]);
        GrowthRow row{i, mpz_sizeinbase(val.get_mpz_t(), 2),
                      mpz_sizeinbase(code.value.get_mpz_t(), 2)};
        rep.rows.push_back(row);
        c = std::max(c, static_cast<double>(row.code_bits) / (i + 1));
    }
    rep.fitted_c = c;
    return rep;
}

}  // namespace hc
