#include <catch2/catch_amalgamated.hpp>

#include "moulcalc/catalog.hpp"
#include "moulcalc/sampling.hpp"
#include "moulcalc/symmetry.hpp"

using namespace moulcalc;

namespace {

Word w_of(std::initializer_list<int> weights) {
    std::vector<Letter> ls;
    for (int v : weights) ls.push_back(Letter::weight(Scalar(v)));
    return Word(std::move(ls));
}

Alphabet positive_weights(Rng& rng, int k) {
    std::vector<Letter> ls;
    std::set<std::int64_t> seen;
    while (static_cast<int>(ls.size()) < k) {
        std::int64_t v = rng.int_in(1, (1 << 30));
        if (seen.insert(v).second) ls.push_back(Letter::weight(Scalar(v)));
    }
    return Alphabet::abstract_additive(std::move(ls));
}

}  // namespace

TEST_CASE("frozen catalog values") {
    Alphabet a = Alphabet::abstract_additive(
        {Letter::weight(Scalar(2)), Letter::weight(Scalar(5)), Letter::weight(Scalar(-2))});
    SECTION("T vanishes on single letters and multiplies inverse differences") {
        Mould t = catalog::t_mould(a);
        CHECK(t(w_of({2})) == 0);
        CHECK(t(Word::empty()) == 0);
        CHECK(t(w_of({2, 5})) == Scalar(1, 3));
        CHECK(t(w_of({2, 5, -2})) == Scalar(1, 3) * Scalar(-1, 7));
        CHECK_THROWS_AS(t(w_of({5, 5})), pole_at_word);
    }
    SECTION("J is (-1)^{r+1}/r") {
        Mould j = catalog::j_mould(a);
        CHECK(j(Word::empty()) == 0);
        CHECK(j(w_of({5})) == 1);
        CHECK(j(w_of({5, 2})) == Scalar(-1, 2));
        CHECK(j(w_of({5, 2, 2})) == Scalar(1, 3));
    }
    SECTION("S carries the sign, Na does not, and Na = (-1)^r S") {
        Mould s = catalog::s_mould(a);
        Mould na = catalog::na_mould(a);
        CHECK(s(w_of({2})) == Scalar(-1, 2));
        CHECK(na(w_of({2, 5})) == Scalar(1, 14));  // 1/(2 * 7)
        for (const auto& w : words_up_to(a.letters, 3)) {
            Scalar nav, sv;
            try {
                nav = na(w);
                sv = s(w);
            } catch (const pole_at_word&) {
                continue;  // resonant word, poles in both normalizations
            }
            Scalar sign = w.length() % 2 == 0 ? Scalar(1) : Scalar(-1);
            CHECK(nav == sign * sv);
        }
        CHECK_THROWS_AS(s(w_of({2, -2})), pole_at_word);
    }
    SECTION("Exp on a length-3 word is 1/6") {
        CHECK(catalog::exp_mould(a)(w_of({1, 2, 3})) == Scalar(1, 6));
        CHECK(catalog::exp_mould(a)(Word::empty()) == 1);
    }
    SECTION("Exp is the mould exponential of I") {
        CHECK(equal_up_to(catalog::exp_mould(a), mexp(i_mould(a)), 4));
    }
}

TEST_CASE("Se and Ne in the q-realization") {
    // degree letter [1] in dimension 1 with multiplier q: e^{omega} = q
    std::vector<Letter> idx = {Letter::degree({1}), Letter::degree({2}), Letter::degree({3})};
    Scalar q(3, 2);
    Alphabet a = Alphabet::degrees(1, {Scalar(1)}, idx, {q});
    Mould se = catalog::se_mould(a);
    Mould ne = catalog::ne_mould(a);
    Mould ne_inv = catalog::ne_inv_mould(a);
    SECTION("Ne_inv on a single letter is 1/(e^omega - 1)") {
        CHECK(ne_inv(Word::single(idx[0])) == Scalar(1) / (q - 1));
        CHECK(ne_inv(Word::single(idx[1])) == Scalar(1) / (q * q - 1));
    }
    SECTION("Ne is the multiplicative inverse of Ne_inv") {
        CHECK(equal_up_to(ne, mul_inverse(ne_inv), 4));
    }
    SECTION("Ne is the e^{-2 nabla} twist of Se") {
        MorphismMap twist{"e^{-2 nabla}", [](const Alphabet& al, const Word& w) {
                              Scalar mu = word_mult_weight(al, w);
                              return Scalar(1) / (mu * mu);
                          }};
        CHECK(equal_up_to(ne, automorphism(twist, se), 4));
    }
    SECTION("resonant words raise poles") {
        // q = 1 multiplier makes every word resonant
        Alphabet res = Alphabet::degrees(1, {Scalar(1)}, idx, {Scalar(1)});
        CHECK_THROWS_AS(catalog::ne_inv_mould(res)(Word::single(idx[0])), pole_at_word);
        CHECK_THROWS_AS(catalog::se_mould(res)(Word::single(idx[0])), pole_at_word);
    }
}

TEST_CASE("Sam: equation-built equals the closed form") {
    Rng rng(31);
    SECTION("single letters") {
        Alphabet a = Alphabet::abstract_additive({Letter::weight(Scalar(0)), Letter::weight(Scalar(7))});
        Mould sam = catalog::sam_mould(a);
        CHECK(sam(Word::empty()) == 0);
        CHECK(sam(w_of({7})) == 0);
        CHECK(sam(w_of({0})) == 1);
    }
    SECTION("frozen length-2 values") {
        Alphabet a = Alphabet::abstract_additive(
            {Letter::weight(Scalar(0)), Letter::weight(Scalar(2)), Letter::weight(Scalar(5))});
        Mould sam = catalog::sam_mould(a);
        // all nonzero: (omega2 - omega1) / (2 omega1 omega2)
        CHECK(sam(w_of({2, 5})) == Scalar(3, 20));
        // one zero entry
        CHECK(sam(w_of({0, 5})) == Scalar(-1, 5));
        CHECK(sam(w_of({2, 0})) == Scalar(1, 2));
        CHECK(sam(w_of({0, 0})) == 0);
    }
    SECTION("closed form matches the equation on random alphabets with a zero letter") {
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<Letter> ls = {Letter::weight(Scalar(0))};
            for (int i = 0; i < 3; ++i) ls.push_back(Letter::weight(rng.big_int()));
            Alphabet a = Alphabet::abstract_additive(std::move(ls));
            CHECK(equal_up_to(catalog::sam_mould(a), catalog::sam_closed_form(a), 4));
        }
    }
    SECTION("Sam is alternal at length 4") {
        std::vector<Letter> ls = {Letter::weight(Scalar(0)), Letter::weight(rng.big_int()),
                                  Letter::weight(rng.big_int())};
        Alphabet a = Alphabet::abstract_additive(std::move(ls));
        CHECK(check_alternal(catalog::sam_mould(a), 4).ok);
    }
}

TEST_CASE("Tram: fixed point of composition with Sam, supported on resonance") {
    // letters omega, -omega, 0 make genuinely resonant words
    Alphabet a = Alphabet::abstract_additive(
        {Letter::weight(Scalar(3)), Letter::weight(Scalar(-3)), Letter::weight(Scalar(0))});
    Mould tram = catalog::tram_mould(a);
    Mould sam = catalog::sam_mould(a);
    SECTION("frozen values") {
        CHECK(tram(w_of({0, 0})) == 0);
        CHECK(tram(w_of({0})) == 1);
        CHECK(tram(w_of({3})) == 0);
        CHECK(tram(w_of({3, -3})) == Scalar(1, 3));  // Sam^{(omega,-omega)} = 1/omega
    }
    SECTION("vanishes off resonance") {
        for (const auto& w : words_up_to(a.letters, 4)) {
            if (w.is_empty()) continue;
            if (word_weight(a, w) != 0) CHECK(tram(w) == 0);
        }
    }
    SECTION("Tram = Tram o Sam and Tram = Sam o Tram up to length 4") {
        CHECK(equal_up_to(tram, compose(tram, sam), 4));
        CHECK(equal_up_to(tram, compose(sam, tram), 4));
    }
    SECTION("iterates of Sam stabilize at the word length") {
        Mould it2 = compose(sam, sam);
        Mould it3 = compose(it2, sam);
        Mould it4 = compose(it3, sam);
        for (const auto& w : words_up_to(a.letters, 3)) {
            if (w.is_empty()) continue;
            if (w.length() <= 2) CHECK(it2(w) == tram(w));
            CHECK(it3(w) == tram(w));
            CHECK(it4(w) == tram(w));
        }
    }
    SECTION("Tram is alternal at length 4") { CHECK(check_alternal(tram, 4).ok); }
}

TEST_CASE("conjugacy mould equations") {
    Rng rng(32);
    SECTION("nabla Na = Na x I and nabla(Na^{-1}) x Na = -I at length 5") {
        for (int trial = 0; trial < 2; ++trial) {
            Alphabet a = positive_weights(rng, 3);
            Mould na = catalog::na_mould(a);
            Mould na_inv = mul_inverse(na);
            CHECK(equal_up_to(nabla(na), mul(na, i_mould(a)), 5));
            CHECK(equal_up_to(mul(nabla(na_inv), na), scalar_mul(Scalar(-1), i_mould(a)), 5));
            CHECK(equal_up_to(nabla(na_inv), scalar_mul(Scalar(-1), mul(i_mould(a), na_inv)), 5));
        }
    }
    SECTION("e^nabla (Ne_inv) = (1 + I) x Ne_inv at length 4") {
        std::vector<Letter> idx = {Letter::degree({1}), Letter::degree({2}), Letter::degree({3})};
        for (const Scalar& q : {Scalar(2), Scalar(5, 3)}) {
            Alphabet a = Alphabet::degrees(1, {Scalar(1)}, idx, {q});
            Mould ne_inv = catalog::ne_inv_mould(a);
            Mould lhs = exp_nabla(ne_inv);
            Mould rhs = mul(add(one_mould(a), i_mould(a)), ne_inv);
            CHECK(equal_up_to(lhs, rhs, 4));
        }
    }
}

TEST_CASE("symetral inverse formula holds for S and Na at length 5") {
    Rng rng(33);
    Alphabet a = positive_weights(rng, 2);
    for (const auto& name : {std::string("S"), std::string("Na")}) {
        Mould m = catalog::make(name, a);
        Mould minv = mul_inverse(m);
        for (const auto& w : words_up_to(a.letters, 5)) {
            Scalar expected = m(retrograde(w));
            if (w.length() % 2 == 1) expected = -expected;
            CHECK(minv(w) == expected);
        }
    }
}

TEST_CASE("duality through composition with Exp") {
    Rng rng(34);
    SECTION("Se o Exp is symetral at length 4") {
        Alphabet a = sample_multiplicative_alphabet(4, rng);
        Mould se = catalog::se_mould(a);
        CHECK(check_symetral(compose(se, catalog::exp_mould(a)), 4, /*skip_poles=*/true).ok);
    }
    SECTION("J o Exp is alternal at length 4") {
        Alphabet a = sample_additive_alphabet(4, rng);
        Mould j = catalog::j_mould(a);
        CHECK(check_alternal(compose(j, catalog::exp_mould(a)), 4).ok);
    }
}

TEST_CASE("declared symmetries of the registry pass at the desk scale") {
    Rng rng(35);
    for (const auto& entry : catalog::entries()) {
        if (entry.name == "Sig") continue;  // il-type, checked in the symmetry suite
        DYNAMIC_SECTION("catalog mould " << entry.name) {
            Alphabet a;
            if (entry.name == "Se" || entry.name == "Ne" || entry.name == "Ne_inv")
                a = sample_multiplicative_alphabet(3, rng);
            else if (entry.name == "Sam" || entry.name == "Tram")
                a = Alphabet::abstract_additive(
                    {Letter::weight(Scalar(4)), Letter::weight(Scalar(-4)), Letter::weight(Scalar(0))});
            else
                a = sample_additive_alphabet(3, rng);
            Mould m = catalog::make(entry.name, a);
            CHECK(check_symmetry(m, entry.declared, 3, /*skip_poles=*/true).ok);
        }
    }
    CHECK_THROWS_AS(catalog::make("NoSuchMould", Alphabet::abstract_additive()), mould_error);
}

TEST_CASE("Sig at rational letters agrees with the generating sum") {
    Alphabet a = Alphabet::abstract_additive({Letter::weight(Scalar(1, 2)), Letter::weight(Scalar(1, 3))});
    Scalar q(2);
    const int cap = 4;
    Mould sig = catalog::sig_mould(a, q, cap);
    // length 1: sum_{s=1..cap} Se^{(s)} v^{s-1}
    Scalar v(1, 2), acc(0);
    for (int s = 1; s <= cap; ++s) acc += catalog::se_at_integers(q, {s}) * scalar_pow(v, s - 1);
    CHECK(sig(Word::single(Letter::weight(v))) == acc);
    CHECK(sig(Word::empty()) == 1);
}
