#include <catch2/catch_amalgamated.hpp>

#include "moulcalc/arbor.hpp"
#include "moulcalc/normalform.hpp"
#include "moulcalc/sampling.hpp"
#include "moulcalc/symmetry.hpp"

using namespace moulcalc;

namespace {

/// The quadratic example field on C^2:
/// X = l x dx + b y dy + (a20 x^2 + a11 xy + a02 y^2) dx
///               + (b20 x^2 + b11 xy + b02 y^2) dy.
PreparedField quadratic_example(Scalar l, Scalar b, Scalar a20, Scalar a11, Scalar a02, Scalar b20, Scalar b11,
                                Scalar b02) {
    std::vector<LocalTerm> terms = {
        {a20, {2, 0}, 0}, {a11, {1, 1}, 0}, {a02, {0, 2}, 0},
        {b20, {2, 0}, 1}, {b11, {1, 1}, 1}, {b02, {0, 2}, 1},
    };
    return decompose(2, {l, b}, terms);
}

PreparedField random_field(Rng& rng, Scalar l1, Scalar l2) {
    return quadratic_example(l1, l2, rng.small_rational(), rng.small_rational(), rng.small_rational(),
                             rng.small_rational(), rng.small_rational(), rng.small_rational());
}

}  // namespace

TEST_CASE("homogeneous operators act by degree shift") {
    SECTION("x^2 dx sends x to x^2") {
        HomOp d = HomOp::derivation({1}, {Scalar(1)});
        Jet x = Jet::coordinate(1, 5, 0);
        CHECK(d.apply(x) == Jet::monomial(1, 5, {2}, Scalar(1)));
    }
    SECTION("D_{(1,0)} = x^2 dx + b xy dy on xy gives (1+b) x^2 y") {
        Scalar b(7, 3);
        HomOp d = HomOp::derivation({1, 0}, {Scalar(1), b});
        Jet xy = Jet::monomial(2, 5, {1, 1}, Scalar(1));
        Jet expect = Jet::monomial(2, 5, {2, 1}, Scalar(1) + b);
        CHECK(d.apply(xy) == expect);
    }
    SECTION("composite operators chain the beta factors, last letter first") {
        // beta^{n}(m) for D_n = sum alpha_i x^{n+e_i} d_i is sum alpha_i m_i
        HomOp d1 = HomOp::derivation({1, 0}, {Scalar(2), Scalar(3)});
        HomOp d2 = HomOp::derivation({0, 1}, {Scalar(5), Scalar(7)});
        Monomial m = {2, 1};
        auto beta = [](const HomOp& d, const Monomial& mm) { return d.coeff_on(mm); };
        // B_{(n1,n2)} applies B_{n2} to x^m first, then B_{n1} on x^{m+n2}
        Jet in = Jet::monomial(2, 6, m, Scalar(1));
        Jet out = comould({&d1, &d2})(in);
        Monomial m2 = {2, 2};  // m + n2
        Scalar expect = beta(d2, m) * beta(d1, m2);
        CHECK(out == Jet::monomial(2, 6, {3, 2}, expect));
    }
}

TEST_CASE("decompose splits a field into admissible homogeneous parts") {
    SECTION("the quadratic example produces the four displayed parts") {
        Scalar a20(1), a11(2), a02(3), b20(4), b11(5), b02(6);
        PreparedField f = quadratic_example(Scalar(2), Scalar(5), a20, a11, a02, b20, b11, b02);
        REQUIRE(f.parts.size() == 4);
        CHECK(f.parts.at({1, 0}).alpha == std::vector<Scalar>{a20, b11});
        CHECK(f.parts.at({0, 1}).alpha == std::vector<Scalar>{a11, b02});
        CHECK(f.parts.at({-1, 2}).alpha == std::vector<Scalar>{a02, Scalar(0)});
        CHECK(f.parts.at({2, -1}).alpha == std::vector<Scalar>{Scalar(0), b20});
    }
    SECTION("a purely linear field has an empty alphabet") {
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)}, {});
        CHECK(f.parts.empty());
    }
    SECTION("X = 2x dx + 5y dy + x^2 dx has the single part D_{(1,0)} = x^2 dx") {
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)}, {{Scalar(1), {2, 0}, 0}});
        REQUIRE(f.parts.size() == 1);
        CHECK(f.parts.at({1, 0}).alpha == std::vector<Scalar>{Scalar(1), Scalar(0)});
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(decompose(2, {Scalar(2), Scalar(5)}, {{Scalar(1), {0, 1}, 0}}), not_prepared);
        CHECK_THROWS_AS(decompose(2, {Scalar(2), Scalar(5)}, {{Scalar(1), {0, 0}, 0}}), not_local);
        CHECK(!is_admissible_degree({-1, -1, 3}));
        CHECK(!is_admissible_degree({-2, 3}));
        CHECK(!is_admissible_degree({1, -1}));  // total degree 0
        CHECK(is_admissible_degree({-1, 2}));
    }
}

TEST_CASE("the essential commutation identity on jets") {
    Rng rng(41);
    PreparedField f = random_field(rng, Scalar(2), Scalar(5));
    const int trunc = 5;
    JetOperator xlin = f.linear_operator(trunc);
    Alphabet deg = f.alphabet();
    for (const auto& w : words_up_to(deg.letters, 4)) {
        if (w.is_empty()) continue;
        std::vector<const HomOp*> ops;
        for (const auto& l : w.letters) ops.push_back(&f.part(l.degree_vector()));
        JetOperator bw = comould(ops);
        JetOperator lhs = xlin.after(bw) - bw.after(xlin);
        JetOperator rhs = word_weight(deg, w) * bw;
        CHECK(is_zero_operator(lhs - rhs, 2, trunc));
    }
}

TEST_CASE("contraction is multiplicative and sends 1 and I to the expected operators") {
    Rng rng(42);
    PreparedField f = random_field(rng, Scalar(2), Scalar(5));
    const int trunc = 4;
    Alphabet wa = f.weight_alphabet();
    SECTION("contract(1) is the identity") {
        CHECK(operators_equal(contract(one_mould(wa), f, trunc), JetOperator::identity(), 2, trunc));
    }
    SECTION("contract(I) = X - X_lin") {
        JetOperator x_nonlin = f.as_operator(trunc) - f.linear_operator(trunc);
        CHECK(operators_equal(contract(i_mould(wa), f, trunc), x_nonlin, 2, trunc));
    }
    SECTION("contract(M x N) = contract(M) o contract(N)") {
        Mould m = random_table_mould(wa, 4, rng);
        Mould n = random_table_mould(wa, 4, rng);
        JetOperator lhs = contract(mul(m, n), f, trunc);
        JetOperator rhs = contract(m, f, trunc).after(contract(n, f, trunc));
        CHECK(operators_equal(lhs, rhs, 2, trunc));
    }
}

TEST_CASE("alternal contractions derive, symetral contractions multiply") {
    Rng rng(43);
    PreparedField f = random_field(rng, Scalar(2), Scalar(5));
    const int trunc = 4;
    Alphabet wa = f.weight_alphabet();
    Mould alt = random_alternal(wa, 4, rng);
    Mould sym = mexp(alt);
    JetOperator p_alt = contract(alt, f, trunc);
    JetOperator p_sym = contract(sym, f, trunc);
    for (int t = 0; t < 4; ++t) {
        Jet phi(2, trunc), psi(2, trunc);
        for (const auto& m : monomials_up_to(2, 2)) {
            phi.p.add_term(m, rng.small_rational_or_zero());
            psi.p.add_term(m, rng.small_rational_or_zero());
        }
        CHECK(p_alt(phi * psi) == p_alt(phi) * psi + phi * p_alt(psi));
        CHECK(p_sym(phi * psi) == p_sym(phi) * p_sym(psi));
    }
}

TEST_CASE("resonance scan") {
    SECTION("lambda = (2,5) with letter (1,0): no resonance at any length") {
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)}, {{Scalar(1), {2, 0}, 0}});
        CHECK(resonance_scan(f, 6).empty());
    }
    SECTION("lambda = (1,-1) with letter (1,1): every word is resonant") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(-1)}, {{Scalar(1), {2, 1}, 0}});
        auto res = resonance_scan(f, 3);
        CHECK(res.size() == 3);  // one word per length
    }
    SECTION("lambda = (1,2) with letter (2,-1): resonant at length 1") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(2)}, {{Scalar(1), {2, 0}, 1}});
        auto res = resonance_scan(f, 1);
        REQUIRE(res.size() == 1);
        CHECK(res[0] == Word::single(Letter::degree({2, -1})));
    }
}

TEST_CASE("linearization through Na") {
    SECTION("the 1-D quadratic field has normalizer coefficient 1/2") {
        PreparedField f = decompose(1, {Scalar(2)}, {{Scalar(1), {2}, 0}});
        auto lin = linearize(f, 3);
        CHECK(lin.normalizer[0].coeff({2}) == Scalar(1, 2));
        CHECK(lin.normalizer[0].coeff({3}) == Scalar(1, 4));
        CHECK(lin.conjugated[0] == Scalar(2) * Jet::coordinate(1, 3, 0));
    }
    SECTION("a purely linear field keeps the identity normalizer") {
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)}, {});
        auto lin = linearize(f, 4);
        CHECK(lin.normalizer[0] == Jet::coordinate(2, 4, 0));
        CHECK(lin.normalizer[1] == Jet::coordinate(2, 4, 1));
    }
    SECTION("mould-built jets equal the classical oracle exactly") {
        Rng rng(44);
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)},
                                    {{Scalar(1), {2, 0}, 0}, {Scalar(1, 3), {1, 1}, 1}});
        auto lin = linearize(f, 5);
        auto orc = oracle_normalize(f, 5, NormalizeMode::linearize);
        CHECK(lin.normalizer == orc.normalizer);
        CHECK(lin.conjugated == orc.conjugated);
    }
    SECTION("resonant fields are rejected with the offending word") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(2)}, {{Scalar(1), {2, 0}, 1}});
        CHECK_THROWS_AS(linearize(f, 3), resonant_error);
        CHECK_THROWS_AS(oracle_normalize(f, 3, NormalizeMode::linearize), resonant_error);
    }
}

TEST_CASE("the classical oracle in dulac mode") {
    SECTION("identity on linear input") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(-1)}, {});
        auto res = oracle_normalize(f, 4, NormalizeMode::dulac);
        CHECK(res.normalizer[0] == Jet::coordinate(2, 4, 0));
        CHECK(res.conjugated[0] == Jet::coordinate(2, 4, 0));
        CHECK(res.conjugated[1] == Scalar(-1) * Jet::coordinate(2, 4, 1));
    }
    SECTION("resonant output contains only resonant monomials") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(-1)},
                                    {{Scalar(1), {2, 1}, 0}, {Scalar(1), {2, 0}, 0}, {Scalar(1), {1, 2}, 1}});
        auto res = oracle_normalize(f, 4, NormalizeMode::dulac);
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, c] : res.conjugated[static_cast<std::size_t>(i)].p.terms()) {
                if (monomial_degree(m) == 1) continue;
                Scalar key = Scalar(m[0]) * 1 + Scalar(m[1]) * (-1) - (i == 0 ? Scalar(1) : Scalar(-1));
                CHECK(key == 0);
            }
    }
}

TEST_CASE("pruned prenormal form through Tram") {
    SECTION("a non-resonant field prunes to its linear part") {
        PreparedField f = decompose(2, {Scalar(2), Scalar(5)},
                                    {{Scalar(1), {2, 0}, 0}, {Scalar(1, 2), {1, 1}, 1}});
        auto jets = prenormal_tram(f, 4);
        CHECK(jets[0] == Scalar(2) * Jet::coordinate(2, 4, 0));
        CHECK(jets[1] == Scalar(5) * Jet::coordinate(2, 4, 1));
        // oracle cross-check: dulac retains nothing either
        auto orc = oracle_normalize(f, 4, NormalizeMode::dulac);
        CHECK(orc.conjugated == jets);
    }
    SECTION("lambda = (1,-1): surviving monomials are exactly the resonant ones") {
        PreparedField f = decompose(2, {Scalar(1), Scalar(-1)},
                                    {{Scalar(1), {2, 1}, 0}, {Scalar(1), {2, 0}, 0}, {Scalar(1), {1, 2}, 1}});
        auto jets = prenormal_tram(f, 4);
        int survivors = 0;
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, c] : jets[static_cast<std::size_t>(i)].p.terms()) {
                if (monomial_degree(m) == 1) continue;
                ++survivors;
                Scalar key = Scalar(m[0]) - Scalar(m[1]) - (i == 0 ? Scalar(1) : Scalar(-1));
                CHECK(key == 0);
            }
        // same resonant support as the dulac oracle
        auto orc = oracle_normalize(f, 4, NormalizeMode::dulac);
        int oracle_survivors = 0;
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, c] : orc.conjugated[static_cast<std::size_t>(i)].p.terms())
                if (monomial_degree(m) > 1) ++oracle_survivors;
        CHECK(survivors == oracle_survivors);
    }
}

TEST_CASE("diffeo parts and substitution") {
    SECTION("f = qx + x^2 reproduces phi o f on monomials up to degree 6") {
        Scalar q(5, 2);
        PreparedDiffeo d = diffeo_parts(1, {q}, {{Scalar(1), {2}, 0}}, 6);
        JetOperator flin = d.linear_substitution();
        for (int k = 0; k <= 6; ++k) {
            Jet mono = Jet::monomial(1, 6, {k}, Scalar(1));
            Jet direct = mono.substitute(d.components);  // phi o f
            Jet via_parts = mono;
            Jet sum = mono;
            for (const auto& [n, op] : d.parts) sum += op.apply(mono);
            CHECK(flin(sum) == direct);
        }
        // B_1 is proportional to x^2 d/dx: check its action shape
        const HomOp& b1 = d.parts.at({1});
        CHECK(b1.coeff_on({1}) != 0);
        CHECK(b1.coeff_on({0}) == 0);
    }
    SECTION("a linear diffeo has no operator parts") {
        PreparedDiffeo d = diffeo_parts(1, {Scalar(3)}, {}, 5);
        CHECK(d.parts.empty());
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(diffeo_parts(1, {Scalar(0)}, {}, 4), not_local);
        CHECK_THROWS_AS(diffeo_parts(2, {Scalar(2), Scalar(3)}, {{Scalar(1), {0, 0}, 0}}, 4), not_local);
        CHECK_THROWS_AS(diffeo_parts(2, {Scalar(2), Scalar(3)}, {{Scalar(1), {0, 1}, 0}}, 4), not_prepared);
    }
}

TEST_CASE("diffeo contraction is multiplicative as well") {
    Rng rng(45);
    PreparedDiffeo d = diffeo_parts(2, {Scalar(2), Scalar(3)},
                                    {{Scalar(1), {0, 2}, 0}, {Scalar(1, 2), {2, 0}, 1}}, 4);
    std::vector<Letter> wl;
    for (const auto& [n, op] : d.parts) wl.push_back(Letter::weight(d.mult_weight_of(n)));
    Alphabet wa = Alphabet::abstract_multiplicative(std::move(wl));
    Mould m = random_table_mould(wa, 4, rng);
    Mould n = random_table_mould(wa, 4, rng);
    JetOperator lhs = contract(mul(m, n), d, 4);
    JetOperator rhs = contract(m, d, 4).after(contract(n, d, 4));
    CHECK(operators_equal(lhs, rhs, 2, 4));
}

TEST_CASE("diffeo linearization matches the classical oracle") {
    SECTION("f = qx + x^2 to degree 4") {
        Scalar q(3, 2);
        PreparedDiffeo d = diffeo_parts(1, {q}, {{Scalar(1), {2}, 0}}, 4);
        auto lin = diffeo_linearize(d, 4);
        auto orc = diffeo_oracle(d, 4);
        CHECK(lin.normalizer == orc.normalizer);
        CHECK(lin.conjugated[0] == q * Jet::coordinate(1, 4, 0));
        // first homological step: coefficient 1/(q(q-1)) = Ne_inv-scaled
        CHECK(lin.normalizer[0].coeff({2}) == Scalar(1) / (q * q - q));
    }
    SECTION("two dimensions with coupled nonlinearities") {
        PreparedDiffeo d =
            diffeo_parts(2, {Scalar(2), Scalar(3)}, {{Scalar(1), {0, 2}, 0}, {Scalar(1, 2), {2, 0}, 1}}, 4);
        auto lin = diffeo_linearize(d, 4);
        auto orc = diffeo_oracle(d, 4);
        CHECK(lin.normalizer == orc.normalizer);
        CHECK(lin.conjugated[0] == Scalar(2) * Jet::coordinate(2, 4, 0));
        CHECK(lin.conjugated[1] == Scalar(3) * Jet::coordinate(2, 4, 1));
    }
    SECTION("linear input gives the identity") {
        PreparedDiffeo d = diffeo_parts(1, {Scalar(7)}, {}, 4);
        auto lin = diffeo_linearize(d, 4);
        CHECK(lin.normalizer[0] == Jet::coordinate(1, 4, 0));
    }
    SECTION("multiplicative resonance is rejected") {
        // q = -1: the word of two letters of degree 1 has weight q^2 = 1
        PreparedDiffeo d = diffeo_parts(1, {Scalar(-1)}, {{Scalar(1), {2}, 0}}, 4);
        CHECK_THROWS_AS(diffeo_linearize(d, 4), resonant_error);
        CHECK_THROWS_AS(diffeo_oracle(d, 4), resonant_error);
    }
}
