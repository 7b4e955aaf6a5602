#include <catch2/catch_amalgamated.hpp>

#include "moulcalc/catalog.hpp"
#include "moulcalc/mould_ops.hpp"
#include "moulcalc/sampling.hpp"

using namespace moulcalc;

namespace {

Word w_of(std::initializer_list<int> weights) {
    std::vector<Letter> ls;
    for (int v : weights) ls.push_back(Letter::weight(Scalar(v)));
    return Word(std::move(ls));
}

Alphabet small_weights() {
    return Alphabet::abstract_additive(
        {Letter::weight(Scalar(2)), Letter::weight(Scalar(5)), Letter::weight(Scalar(-3))});
}

}  // namespace

TEST_CASE("addition and scalar multiples") {
    Rng rng(1);
    Alphabet a = small_weights();
    Mould m = random_table_mould(a, 3, rng);
    Mould zero = zero_mould(a);
    for (const auto& w : words_up_to(a.letters, 3)) {
        CHECK(add(m, zero)(w) == m(w));
        CHECK(add(m, scalar_mul(Scalar(-1), m))(w) == 0);
    }
    Mould j = catalog::j_mould(a);
    CHECK(add(j, j)(w_of({2})) == 2);
}

TEST_CASE("product: unit, I x I, inverse of S") {
    Alphabet a = small_weights();
    Rng rng(2);
    Mould m = random_table_mould(a, 4, rng);
    Mould unit = one_mould(a);
    for (const auto& w : words_up_to(a.letters, 3)) {
        CHECK(mul(m, unit)(w) == m(w));
        CHECK(mul(unit, m)(w) == m(w));
    }
    Mould i = i_mould(a);
    CHECK(mul(i, i)(w_of({2, 5})) == 1);
    CHECK(mul(i, i)(w_of({2})) == 0);

    Mould s = catalog::s_mould(a);
    Mould sinv = mul_inverse(s);
    CHECK(mul(s, sinv)(w_of({2, 5})) == 0);
    CHECK(mul(s, sinv)(Word::empty()) == 1);
    // S^{-1} on a single letter is 1/omega = -S^{(omega)}
    CHECK(sinv(w_of({2})) == Scalar(1, 2));
    CHECK(sinv(w_of({2})) == -s(w_of({2})));
}

TEST_CASE("multiplicative inverse is two-sided; empty value must be nonzero") {
    Alphabet a = small_weights();
    Rng rng(3);
    Mould m = random_table_mould(a, 3, rng, false, true);
    Mould minv = mul_inverse(m);
    Mould unit = one_mould(a);
    for (const auto& w : words_up_to(a.letters, 3)) {
        CHECK(mul(m, minv)(w) == unit(w));
        CHECK(mul(minv, m)(w) == unit(w));
    }
    CHECK(mul_inverse(one_mould(a))(w_of({2, 2})) == 0);
    CHECK(mul_inverse(one_mould(a))(Word::empty()) == 1);
    Mould bad = random_table_mould(a, 2, rng, true);
    CHECK_THROWS_AS(mul_inverse(bad), not_invertible);
}

TEST_CASE("product associativity on random tabulated moulds") {
    Alphabet a = small_weights();
    Rng rng(4);
    Mould m = random_table_mould(a, 4, rng);
    Mould n = random_table_mould(a, 4, rng);
    Mould p = random_table_mould(a, 4, rng);
    CHECK(equal_up_to(mul(mul(m, n), p), mul(m, mul(n, p)), 4));
}

TEST_CASE("symetral inverse formula (-1)^{l(w)} M^{ret w}") {
    Alphabet a = small_weights();
    Mould s = catalog::s_mould(a);
    Mould sinv = mul_inverse(s);
    for (const auto& w : words_up_to(a.letters, 4)) {
        Scalar expected = s(retrograde(w));
        if (w.length() % 2 == 1) expected = -expected;
        CHECK(sinv(w) == expected);
    }
}

TEST_CASE("composition: units and a frozen J o Exp expansion") {
    Alphabet a = small_weights();
    Rng rng(5);
    Mould m = random_table_mould(a, 4, rng);
    Mould i = i_mould(a);
    SECTION("M o I = M") { CHECK(equal_up_to(compose(m, i), m, 3)); }
    SECTION("I o N = N when N vanishes on the empty word") {
        Mould n = random_table_mould(a, 4, rng, true);
        CHECK(equal_up_to(compose(i, n), n, 3));
    }
    SECTION("(J o Exp)^{(omega1, omega2)} expands to two cancelling terms") {
        Mould j = catalog::j_mould(a);
        Mould ex = catalog::exp_mould(a);
        Word w = w_of({2, 5});
        Word contracted = w_of({7});
        Scalar by_hand = j(contracted) * ex(w) + j(w) * ex(w_of({2})) * ex(w_of({5}));
        CHECK(by_hand == Scalar(1) * Scalar(1, 2) + Scalar(-1, 2) * 1);
        CHECK(by_hand == 0);
        CHECK(compose(j, ex)(w) == by_hand);
    }
}

TEST_CASE("composition inverse") {
    Alphabet a = small_weights();
    Mould i = i_mould(a);
    SECTION("I is its own inverse") { CHECK(equal_up_to(comp_inverse(i), i, 3)); }
    SECTION("length-1 base case inverts pointwise") {
        Mould c_i = scalar_mul(Scalar(3, 7), i);
        Mould inv = comp_inverse(c_i);
        CHECK(inv(w_of({2})) == Scalar(7, 3));
    }
    SECTION("comp_inverse(J o Exp) o (J o Exp) = I up to length 4") {
        Mould je = compose(catalog::j_mould(a), catalog::exp_mould(a));
        Mould inv = comp_inverse(je);
        CHECK(equal_up_to(compose(inv, je), i, 4));
        CHECK(equal_up_to(compose(je, inv), i, 4));
    }
    SECTION("rejects nonzero empty value or vanishing length-1 values") {
        CHECK_THROWS_AS(comp_inverse(one_mould(a)), not_comp_invertible);
        Mould t = catalog::t_mould(a);  // T vanishes on length-1 words
        CHECK_THROWS_AS(comp_inverse(t)(w_of({2})), not_comp_invertible);
    }
}

TEST_CASE("algebra-with-composition laws on random tabulated moulds") {
    Alphabet a = small_weights();
    Rng rng(6);
    Mould m = random_table_mould(a, 4, rng);
    Mould n = random_table_mould(a, 4, rng);
    Mould c = random_table_mould(a, 4, rng, true);
    CHECK(equal_up_to(compose(add(m, n), c), add(compose(m, c), compose(n, c)), 4));
    CHECK(equal_up_to(compose(mul(m, n), c), mul(compose(m, c), compose(n, c)), 4));
}

TEST_CASE("exp and log") {
    Alphabet a = small_weights();
    Rng rng(7);
    SECTION("exp of zero is the unit") { CHECK(equal_up_to(mexp(zero_mould(a)), one_mould(a), 3)); }
    SECTION("low-length expansion") {
        Mould m = random_table_mould(a, 3, rng, true);
        Mould em = mexp(m);
        CHECK(em(w_of({5})) == m(w_of({5})));
        Word w = w_of({2, 5});
        CHECK(em(w) == m(w) + Scalar(1, 2) * m(w_of({2})) * m(w_of({5})));
    }
    SECTION("exp o log and log o exp are the identity up to the bound") {
        Mould m = random_table_mould(a, 3, rng, true);
        CHECK(equal_up_to(mlog(mexp(m)), m, 3));
        Mould g = random_table_mould(a, 3, rng, false, true);
        CHECK(equal_up_to(mexp(mlog(g)), g, 3));
    }
    SECTION("domain errors") {
        Mould bad = random_table_mould(a, 2, rng, false, true);
        CHECK_THROWS_AS(mexp(bad), non_nilpotent);
        Mould bad2 = random_table_mould(a, 2, rng, true);
        CHECK_THROWS_AS(mlog(bad2), non_nilpotent);
    }
}

TEST_CASE("simple derivations") {
    Alphabet a = small_weights();
    Rng rng(8);
    Mould m = random_table_mould(a, 3, rng);
    SECTION("lang multiplies by the length") {
        CHECK(lang(m)(w_of({2, 5})) == 2 * m(w_of({2, 5})));
        CHECK(derive_simple(lang_weight(), m)(w_of({2, 5})) == 2 * m(w_of({2, 5})));
    }
    SECTION("nabla multiplies by the weight") { CHECK(nabla(m)(w_of({5})) == 5 * m(w_of({5}))); }
    SECTION("derivations kill the unit") {
        CHECK(equal_up_to(nabla(one_mould(a)), zero_mould(a), 3));
        CHECK(equal_up_to(lang(one_mould(a)), zero_mould(a), 3));
    }
    SECTION("Leibniz rule for nabla and lang") {
        Mould n = random_table_mould(a, 3, rng);
        CHECK(equal_up_to(nabla(mul(m, n)), add(mul(nabla(m), n), mul(m, nabla(n))), 3));
        CHECK(equal_up_to(lang(mul(m, n)), add(mul(lang(m), n), mul(m, lang(n))), 3));
    }
    SECTION("non-additive weight maps are rejected") {
        WeightMap bogus{"bogus", [](const Alphabet&, const Word& w) { return Scalar(w.length() * w.length()); }};
        CHECK_THROWS_AS(derive_simple(bogus, m), not_additive);
    }
}

TEST_CASE("dar derivation") {
    Alphabet a = small_weights();
    Rng rng(9);
    Mould d = random_table_mould(a, 4, rng, true);
    SECTION("kills the unit") { CHECK(equal_up_to(dar(d, one_mould(a)), zero_mould(a), 3)); }
    SECTION("single letter: only the full middle factorization contributes") {
        Mould m = random_table_mould(a, 4, rng);
        Word w = w_of({5});
        CHECK(dar(d, m)(w) == m(w) * d(w));
    }
    SECTION("Leibniz identity on random moulds up to length 4") {
        Mould m1 = random_table_mould(a, 4, rng);
        Mould m2 = random_table_mould(a, 4, rng);
        CHECK(equal_up_to(dar(d, mul(m1, m2)), add(mul(dar(d, m1), m2), mul(m1, dar(d, m2))), 4));
    }
}

TEST_CASE("automorphisms A_f") {
    std::vector<Letter> ls = {Letter::weight(Scalar(2)), Letter::weight(Scalar(5)), Letter::weight(Scalar(1, 3))};
    Alphabet a = Alphabet::abstract_multiplicative(ls);
    Rng rng(10);
    Mould m = random_table_mould(a, 4, rng);
    Mould n = random_table_mould(a, 4, rng);
    SECTION("e^nabla scales by the multiplicative weight") {
        Word w(std::vector<Letter>{ls[0], ls[1]});
        CHECK(exp_nabla(m)(w) == Scalar(10) * m(w));
    }
    SECTION("fixes the unit") { CHECK(equal_up_to(exp_nabla(one_mould(a)), one_mould(a), 3)); }
    SECTION("multiplicative on products") {
        CHECK(equal_up_to(exp_nabla(mul(m, n)), mul(exp_nabla(m), exp_nabla(n)), 4));
        CHECK(equal_up_to(automorphism(exp_nabla_morphism(), mul(m, n)), mul(exp_nabla(m), exp_nabla(n)), 4));
    }
    SECTION("non-morphisms are rejected") {
        MorphismMap bogus{"bogus", [](const Alphabet&, const Word& w) { return Scalar(w.length() + 1); }};
        CHECK_THROWS_AS(automorphism(bogus, m), not_morphism);
    }
}

TEST_CASE("alphabet mismatch is detected") {
    Alphabet a = small_weights();
    Alphabet b = Alphabet::abstract_multiplicative({Letter::weight(Scalar(2))});
    Rng rng(11);
    Mould m = random_table_mould(a, 2, rng);
    Mould n = random_table_mould(b, 2, rng);
    CHECK_THROWS_AS(add(m, n), alphabet_mismatch);
    CHECK_THROWS_AS(mul(m, n), alphabet_mismatch);
}

TEST_CASE("randomized equality of rule moulds") {
    Rng rng(12);
    // Na agrees with the unsigned retrograde of S at random rational letters
    CHECK(equal_sampled([](const Alphabet& a) { return catalog::na_mould(a); },
                        [](const Alphabet& a) {
                            Mould s = catalog::s_mould(a);
                            return Mould(a, [s](const Alphabet&, const Word& w) {
                                Scalar v = s(w);
                                return w.length() % 2 == 0 ? v : -v;
                            });
                        },
                        3, 3, rng));
    CHECK(!equal_sampled([](const Alphabet& a) { return catalog::na_mould(a); },
                         [](const Alphabet& a) { return catalog::s_mould(a); }, 3, 3, rng));
}

TEST_CASE("undefined words and length bounds") {
    Alphabet a = small_weights();
    Mould::Table t;
    t[Word::empty()] = Scalar(1);
    Mould m(a, 0, std::move(t));
    CHECK(m(Word::empty()) == 1);
    CHECK_THROWS_AS(m(w_of({2})), undefined_word);
}

TEST_CASE("forcing a rule mould into a table") {
    Alphabet a = small_weights();
    auto table = catalog::na_mould(a).tabulate(2);
    CHECK(table.size() == 13);  // 1 + 3 + 9 words
    CHECK(table.at(w_of({2, 5})) == Scalar(1, 14));
}
