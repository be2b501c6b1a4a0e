#include "hc/parse.hpp"

#include <cctype>
#include <optional>

namespace hc {

namespace {

enum class Tok : std::uint8_t {
    LParen, RParen, Plus, Star, Comma,
    Eq, Le, Neq, Bang, Amp, Pipe, Arrow,
    Forall, Exists, Succ, Zero, Dollar, Ident, End
};

struct Token {
    Tok kind;
    std::string_view text;  // identifier or Skolem index digits
    std::size_t line, col;
};

class Lexer {
  public:
    Lexer(std::string_view src, std::size_t first_line)
        : src_(src), line_(first_line) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            std::size_t line = line_, col = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, {}, line, col});
                return out;
            }
            char c = src_[pos_];
            auto one = [&](Tok k) {
                ++pos_;
                ++col_;
                out.push_back({k, {}, line, col});
            };
            switch (c) {
                case '(': one(Tok::LParen); continue;
                case ')': one(Tok::RParen); continue;
                case '+': one(Tok::Plus); continue;
                case '*': one(Tok::Star); continue;
                case ',': one(Tok::Comma); continue;
                case '=': one(Tok::Eq); continue;
                case '&': one(Tok::Amp); continue;
                case '|': one(Tok::Pipe); continue;
                case '0': one(Tok::Zero); continue;
                case '<':
                    if (peek(1) == '=') {
                        two(out, Tok::Le, line, col);
                        continue;
                    }
                    fail("expected '<='", line, col);
                case '-':
                    if (peek(1) == '>') {
                        two(out, Tok::Arrow, line, col);
                        continue;
                    }
                    fail("expected '->'", line, col);
                case '!':
                    if (peek(1) == '=') {
                        two(out, Tok::Neq, line, col);
                    } else {
                        one(Tok::Bang);
                    }
                    continue;
                case '$': {
                    ++pos_;
                    ++col_;
                    std::size_t start = pos_;
                    while (pos_ < src_.size() && std::isdigit(uc(src_[pos_]))) {
                        ++pos_;
                        ++col_;
                    }
                    if (start == pos_)
                        fail("expected Skolem index after '$'", line, col);
                    out.push_back(
                        {Tok::Dollar, src_.substr(start, pos_ - start), line, col});
                    continue;
                }
                default: break;
            }
            if (std::isalpha(uc(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(uc(src_[pos_])) || src_[pos_] == '_' ||
                        src_[pos_] == '\'')) {
                    ++pos_;
                    ++col_;
                }
                std::string_view word = src_.substr(start, pos_ - start);
                if (word == "forall")
                    out.push_back({Tok::Forall, word, line, col});
                else if (word == "exists")
                    out.push_back({Tok::Exists, word, line, col});
                else if (word == "S")
                    out.push_back({Tok::Succ, word, line, col});
                else
                    out.push_back({Tok::Ident, word, line, col});
                continue;
            }
            fail(std::string("unexpected character '") + c + "'", line, col);
        }
    }

  private:
    static unsigned char uc(char c) { return static_cast<unsigned char>(c); }
    char peek(std::size_t d) const {
        return pos_ + d < src_.size() ? src_[pos_ + d] : '\0';
    }
    void two(std::vector<Token>& out, Tok k, std::size_t line, std::size_t col) {
        pos_ += 2;
        col_ += 2;
        out.push_back({k, {}, line, col});
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(uc(c))) {
                ++col_;
                ++pos_;
            } else {
                return;
            }
        }
    }
    [[noreturn]] void fail(const std::string& msg, std::size_t line,
                           std::size_t col) {
        throw ParseError(msg, line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col_ = 1;
};

class Parser {
  public:
    Parser(Arena& a, std::string_view text, std::size_t first_line = 1)
        : arena_(a), toks_(Lexer(text, first_line).run()) {}

    FormulaId formula() {
        FormulaId f = parse_implies();
        expect(Tok::End, "trailing input after formula");
        return f;
    }

    TermId term() {
        TermId t = parse_term();
        expect(Tok::End, "trailing input after term");
        return t;
    }

  private:
    const Token& cur() const { return toks_[i_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++i_;
        return true;
    }
    void expect(Tok k, const std::string& msg) {
        if (!accept(k)) throw ParseError(msg, cur().line, cur().col);
    }

    FormulaId parse_implies() {
        FormulaId l = parse_or();
        if (accept(Tok::Arrow)) return arena_.implies(l, parse_implies());
        return l;
    }
    FormulaId parse_or() {
        FormulaId l = parse_and();
        while (accept(Tok::Pipe)) l = arena_.or_(l, parse_and());
        return l;
    }
    FormulaId parse_and() {
        FormulaId l = parse_unary();
        while (accept(Tok::Amp)) l = arena_.and_(l, parse_unary());
        return l;
    }
    FormulaId parse_unary() {
        if (accept(Tok::Bang)) return arena_.not_(parse_unary());
        return parse_primary();
    }

    FormulaId parse_primary() {
        if (at(Tok::Forall) || at(Tok::Exists)) return parse_quantified();
        if (at(Tok::LParen)) {
            // either a parenthesized formula or a parenthesized term that
            // starts a comparison; backtrack once on the term reading
            std::size_t save = i_;
            ++i_;
            try {
                FormulaId f = parse_implies();
                expect(Tok::RParen, "expected ')'");
                if (at(Tok::Eq) || at(Tok::Le) || at(Tok::Neq))
                    throw ParseError("comparison of formulas", cur().line,
                                     cur().col);
                return f;
            } catch (const ParseError&) {
                i_ = save;
                return parse_comparison();
            }
        }
        return parse_comparison();
    }

    FormulaId parse_quantified() {
        bool universal = at(Tok::Forall);
        ++i_;
        if (!at(Tok::Ident))
            throw ParseError("expected variable after quantifier", cur().line,
                             cur().col);
        VarId v = arena_.var_id(cur().text);
        ++i_;
        std::optional<TermId> bound;
        if (accept(Tok::Le)) bound = parse_term();
        FormulaId body = parse_implies();
        if (bound) {
            return universal ? arena_.bounded_forall(v, *bound, body)
                             : arena_.bounded_exists(v, *bound, body);
        }
        return universal ? arena_.forall(v, body) : arena_.exists(v, body);
    }

    FormulaId parse_comparison() {
        TermId l = parse_term();
        if (accept(Tok::Eq)) return arena_.eq(l, parse_term());
        if (accept(Tok::Le)) return arena_.le(l, parse_term());
        if (accept(Tok::Neq)) return arena_.not_(arena_.eq(l, parse_term()));
        throw ParseError("expected '=', '<=' or '!=' after term", cur().line,
                         cur().col);
    }

    TermId parse_term() {
        TermId l = parse_product();
        while (accept(Tok::Plus)) l = arena_.add(l, parse_product());
        return l;
    }
    TermId parse_product() {
        TermId l = parse_factor();
        while (accept(Tok::Star)) l = arena_.mul(l, parse_factor());
        return l;
    }

    TermId parse_factor() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Zero:
                ++i_;
                return arena_.zero();
            case Tok::Succ: {
                ++i_;
                expect(Tok::LParen, "expected '(' after S");
                TermId inner = parse_term();
                expect(Tok::RParen, "expected ')'");
                return arena_.succ(inner);
            }
            case Tok::Ident: {
                ++i_;
                return arena_.var(arena_.var_id(t.text));
            }
            case Tok::Dollar: {
                ++i_;
                std::uint64_t k = 0;
                for (char c : t.text) k = k * 10 + static_cast<std::uint64_t>(c - '0');
                if (k >= arena_.skolem_count())
                    throw ParseError("unknown Skolem symbol $" +
                                         std::string(t.text),
                                     t.line, t.col);
                std::vector<TermId> args;
                if (accept(Tok::LParen)) {
                    args.push_back(parse_term());
                    while (accept(Tok::Comma)) args.push_back(parse_term());
                    expect(Tok::RParen, "expected ')'");
                }
                if (args.size() != arena_.skolem_arity(static_cast<SkolemId>(k)))
                    throw ParseError("Skolem symbol $" + std::string(t.text) +
                                         " expects " +
                                         std::to_string(arena_.skolem_arity(
                                             static_cast<SkolemId>(k))) +
                                         " argument(s)",
                                     t.line, t.col);
                return arena_.skolem(static_cast<SkolemId>(k), args);
            }
            case Tok::LParen: {
                ++i_;
                TermId inner = parse_term();
                expect(Tok::RParen, "expected ')'");
                return inner;
            }
            default:
                throw ParseError("expected term", t.line, t.col);
        }
    }

    Arena& arena_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

template <typename F>
auto parse_lines(std::string_view text, F&& parse_one) {
    std::vector<decltype(parse_one(std::string_view{}, std::size_t{0}))> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) out.push_back(parse_one(line, line_no));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

}  // namespace

FormulaId parse_formula(Arena& a, std::string_view text) {
    return Parser(a, text).formula();
}

TermId parse_term(Arena& a, std::string_view text) {
    return Parser(a, text).term();
}

std::vector<FormulaId> parse_theory_text(Arena& a, std::string_view text) {
    return parse_lines(text, [&](std::string_view line, std::size_t line_no) {
        return Parser(a, line, line_no).formula();
    });
}

std::vector<TermId> parse_term_list_text(Arena& a, std::string_view text) {
    return parse_lines(text, [&](std::string_view line, std::size_t line_no) {
        TermId t = Parser(a, line, line_no).term();
        if (!a.ground(t))
            throw ParseError("term is not ground", line_no, 1);
        return t;
    });
}

}  // namespace hc
