// Goedel coding: digit strings, roundtrips, the concatenation and length
// bounds, omega growth, and the squaring-chain report.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hc/arena.hpp"
#include "hc/coding.hpp"
#include "hc/parse.hpp"
#include "oracles.hpp"

using namespace hc;

namespace {

mpz_class pow64(std::size_t n) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 64, static_cast<unsigned long>(n));
    return out;
}

oracle::GenConfig ground_config(Arena& a) {
    oracle::GenConfig g;
    g.skolems = {{a.declare_skolem(1), 1}, {a.declare_skolem(2), 2}};
    g.max_depth = 4;
    return g;
}

}  // namespace

TEST_CASE("digit strings roundtrip and validate") {
    std::vector<std::uint8_t> ds{2, 63, 17, 2};
    Code c = encode_digits(ds);
    CHECK(code_length(c) == 4);
    CHECK(code_digits(c) == ds);
    CHECK(c.value == ((mpz_class(1) * 64 + 2) * 64 + 63) * 64 * 64 + 17 * 64 + 2);
    CHECK_THROWS_AS(encode_digits({1}), DomainError);
    CHECK_THROWS_AS(encode_digits({0, 5}), DomainError);
    CHECK_THROWS_AS(encode_digits({64}), DomainError);
    CHECK_THROWS_AS(code_length(Code{mpz_class(63)}), DomainError);
    CHECK_THROWS_AS(code_digits(Code{mpz_class(65)}), DomainError);  // digit 1
}

TEST_CASE("term and formula codes roundtrip") {
    Arena a;
    std::mt19937_64 rng(0xC0DE01);
    oracle::GenConfig g = ground_config(a);
    g.var_count = 3;
    for (int i = 0; i < 100000; ++i) {
        TermId t = oracle::random_term(a, rng, g);
        CHECK(decode_term(a, encode_term(a, t)) == t);
    }
    for (int i = 0; i < 2000; ++i) {
        FormulaId f = oracle::random_closed_formula(a, rng, 2);
        CHECK(decode_formula(a, encode_formula(a, f)) == f);
    }
}

TEST_CASE("distinct terms get distinct codes") {
    Arena a;
    std::mt19937_64 rng(0xC0DE02);
    oracle::GenConfig g = ground_config(a);
    std::set<TermId> terms;
    for (int i = 0; i < 4000; ++i) terms.insert(oracle::random_term(a, rng, g));
    std::set<mpz_class> codes;
    for (TermId t : terms) codes.insert(encode_term(a, t).value);
    CHECK(codes.size() == terms.size());
}

TEST_CASE("concatenation bound and exact composition law") {
    Arena a;
    std::mt19937_64 rng(0xC0DE03);
    oracle::GenConfig g = ground_config(a);
    for (int i = 0; i < 10000; ++i) {
        Code x = encode_term(a, oracle::random_term(a, rng, g));
        Code y = encode_term(a, oracle::random_term(a, rng, g));
        Code xy = code_concat(x, y);
        CHECK(xy.value <= 64 * x.value * y.value);
        CHECK(xy.value == x.value * pow64(code_length(y)) +
                              (y.value - pow64(code_length(y))));
        CHECK(code_length(xy) == code_length(x) + code_length(y));
        // concatenated digit strings agree with vector concatenation
        if (i < 100) {
            auto dx = code_digits(x);
            auto dy = code_digits(y);
            dx.insert(dx.end(), dy.begin(), dy.end());
            CHECK(code_digits(xy) == dx);
        }
    }
}

TEST_CASE("length is bounded by the base-2 logarithm of the code") {
    Arena a;
    std::mt19937_64 rng(0xC0DE04);
    oracle::GenConfig g = ground_config(a);
    for (int i = 0; i < 10000; ++i) {
        Code c = encode_term(a, oracle::random_term(a, rng, g));
        // code >= 64^length, so length <= log2(code) / 6 <= log2(code)
        CHECK(c.value >= pow64(code_length(c)));
        CHECK(6 * code_length(c) <=
              mpz_sizeinbase(c.value.get_mpz_t(), 2));
    }
}

TEST_CASE("set codes ignore order and duplicates") {
    Arena a;
    std::mt19937_64 rng(0xC0DE05);
    oracle::GenConfig g = ground_config(a);
    for (int round = 0; round < 200; ++round) {
        std::vector<TermId> members = oracle::random_domain(a, rng, g, 6);
        std::vector<TermId> shuffled = members;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        shuffled.push_back(shuffled.front());  // duplicate entry
        CHECK(encode_term_set(a, members).value ==
              encode_term_set(a, shuffled).value);
    }
}

TEST_CASE("alternating sequence codes separate order data") {
    Arena a;
    TermId t0 = a.zero();
    TermId t1 = a.succ(t0);
    TermId t2 = a.succ(t1);
    Code c1 = encode_alternating(a, {t0, t1, t2}, {false, true});
    Code c2 = encode_alternating(a, {t0, t1, t2}, {true, false});
    Code c3 = encode_alternating(a, {t0, t2, t1}, {false, true});
    CHECK(c1.value != c2.value);
    CHECK(c1.value != c3.value);
    CHECK(encode_alternating(a, {t0}, {}).value > 64);
    CHECK_THROWS_AS(encode_alternating(a, {}, {}), DomainError);
    CHECK_THROWS_AS(encode_alternating(a, {t0, t1}, {}), DomainError);
}

TEST_CASE("decoding rejects malformed digit strings") {
    Arena a;
    TermId t = parse_term(a, "S(0) + S(0) * S(0)");
    Code c = encode_term(a, t);
    auto ds = code_digits(c);
    // truncation
    std::vector<std::uint8_t> cut(ds.begin(), ds.end() - 1);
    CHECK_THROWS_AS(decode_term(a, encode_digits(cut)), DomainError);
    // trailing garbage (a second copy of the term)
    CHECK_THROWS_AS(decode_term(a, code_concat(c, c)), DomainError);
    // a formula code is not a term code
    FormulaId f = parse_formula(a, "x = 0");
    CHECK_THROWS_AS(decode_term(a, encode_formula(a, f)), DomainError);
    // symbols the arena has never declared are rejected
    SkolemId s = a.declare_skolem(1);
    std::vector<TermId> args{a.zero()};
    Code sk = encode_term(a, a.skolem(s, args));
    Code vr = encode_term(a, a.var("x"));
    Arena fresh;
    CHECK_THROWS_AS(decode_term(fresh, sk), DomainError);
    CHECK_THROWS_AS(decode_term(fresh, vr), DomainError);
    CHECK(decode_term(fresh, c) == parse_term(fresh, "S(0) + S(0) * S(0)"));
}

TEST_CASE("omega hierarchy values and guards") {
    CHECK(omega(0, 5) == 25);
    CHECK(omega(0, 1) == 1);
    CHECK(omega(1, 2) == 2);
    CHECK(omega(1, 16) == 65536);
    CHECK(omega(1, 17) == 65536);  // log2 truncates
    CHECK(omega(2, 16) == 65536);
    CHECK(omega(2, 65536) == (mpz_class(1) << 65536));
}

TEST_CASE("omega guard throws instead of exploding") {
    CHECK_THROWS_AS(omega(3, 2), DomainError);
    CHECK_THROWS_AS(omega(0, 0), DomainError);
    CHECK_THROWS_AS(omega(1, mpz_class(1) << 40, 100), DomainError);
    // within budget it still answers
    CHECK(omega(1, mpz_class(1) << 10) == (mpz_class(1) << 100));
}

TEST_CASE("squaring chain: values double their exponent each step") {
    Arena a;
    SkolemId q = a.declare_skolem(1);
    std::vector<TermId> chain = q_chain(a, q, 16);
    REQUIRE(chain.size() == 17);
    CHECK(chain[0] == a.numeral(2));
    for (unsigned i = 0; i <= 16; ++i) {
        mpz_class v = squaring_value(a, chain[i]);
        CHECK(v == (mpz_class(1) << (1u << i)));
    }
    SkolemId bin = a.declare_skolem(2);
    CHECK_THROWS_AS(q_chain(a, bin, 3), DomainError);
    std::vector<TermId> args{a.zero(), a.zero()};
    CHECK_THROWS_AS(squaring_value(a, a.skolem(bin, args)), DomainError);
    CHECK_THROWS_AS(squaring_value(a, a.var("x")), DomainError);
}

TEST_CASE("growth report: huge values, short codes") {
    Arena a;
    SkolemId q = a.declare_skolem(1);
    GrowthReport rep = q_chain_report(a, q, 16);
    REQUIRE(rep.rows.size() == 17);
    for (unsigned i = 0; i <= 16; ++i) {
        CHECK(rep.rows[i].i == i);
        CHECK(rep.rows[i].value_bits == (std::uint64_t{1} << i) + 1);
        CHECK(static_cast<double>(rep.rows[i].code_bits) <=
              rep.fitted_c * (i + 1) + 1e-9);
    }
    // each application appends the same digits, so code growth is linear
    std::uint64_t step = rep.rows[2].code_bits - rep.rows[1].code_bits;
    for (unsigned i = 2; i <= 16; ++i)
        CHECK(rep.rows[i].code_bits - rep.rows[i - 1].code_bits == step);
    // the fit is tight: some row attains it
    bool attained = false;
    for (auto& r : rep.rows)
        if (std::abs(static_cast<double>(r.code_bits) -
                     rep.fitted_c * (r.i + 1)) < 1e-6)
            attained = true;
    CHECK(attained);
}
