#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcft/parser.hpp"
#include "lcft/rng.hpp"
#include "lcft/series.hpp"

using namespace lcft;

static TowerSpecPtr F(int p, int d, int prec = 24) { return TowerSpec::make2(FieldSpec::get(p, d), prec, prec); }

TEST_CASE("geometric series: (1 - t2)^-1 = 1 + t2 + t2^2 + ...") {
    auto S = F(3, 1);
    TowerElem x = TowerElem::one(S) - TowerElem::param(S, 2);
    TowerElem inv = x.inverse();
    CHECK(!inv.is_exact());
    CHECK(inv.s2().known_end() == 24);
    for (long j = 0; j < 24; ++j) {
        Series1 cj = inv.coeff_top(j);
        CHECK(cj.coeffs().size() == 1);
        CHECK(cj.coeff(0).first == 1);
    }
    CHECK((x * inv).eq_known(TowerElem::one(S)));
}

TEST_CASE("valuation additivity on monomials") {
    auto S = F(5, 1);
    TowerElem t1 = TowerElem::param(S, 1), t2 = TowerElem::param(S, 2);
    TowerElem x = t1 * t2.pow(3) * (t1.inverse() * t2.inverse());
    CHECK(x.v_top() == 2);
    CHECK(x.is_exact());
}

TEST_CASE("characteristic-2 frobenius on squares") {
    auto S = F(2, 1);
    TowerElem x = TowerElem::one(S) + TowerElem::param(S, 1) * TowerElem::param(S, 2);
    TowerElem sq = x * x;
    TowerElem expect = parse_element("1+t1^2*t2^2", S);
    CHECK(sq.is_exact());
    CHECK(sq.eq_known(expect));
    CHECK(sq.str() == "1+(t1^2)*t2^2");
}

TEST_CASE("ring axioms on random triples") {
    for (auto [p, d] : {std::pair{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}}) {
        auto S = F(p, d);
        Rng rng(42);
        for (int it = 0; it < 100; ++it) {
            TowerElem a = random_nonzero(S, rng), b = random_nonzero(S, rng), c = random_nonzero(S, rng);
            CHECK((a * b).eq_known(b * a));
            CHECK(((a * b) * c).eq_known(a * (b * c)));
            CHECK((a * (b + c)).eq_known(a * b + a * c));
            CHECK(((a + b) + c).eq_known(a + (b + c)));
        }
    }
}

TEST_CASE("product valuations add at both levels") {
    for (auto [p, d] : {std::pair{2, 1}, {3, 2}}) {
        auto S = F(p, d);
        Rng rng(7);
        for (int it = 0; it < 200; ++it) {
            TowerElem a = random_nonzero(S, rng), b = random_nonzero(S, rng);
            TowerElem ab = a * b;
            CHECK(ab.v_top() == a.v_top() + b.v_top());
            auto da = a.decompose(), db = b.decompose(), dab = ab.decompose();
            CHECK(dab.a1 == da.a1 + db.a1);
        }
    }
}

TEST_CASE("canonical decomposition") {
    auto S3 = F(3, 1);
    SUBCASE("f = t2") {
        auto d = TowerElem::param(S3, 2).decompose();
        CHECK(d.a2 == 1);
        CHECK(d.a1 == 0);
        CHECK(d.c == 0);
        CHECK(d.unit.is_exact_one());
    }
    SUBCASE("q=3, f = 2*t1*t2^-1 -> (-1, 1, 1, 1) since theta = 2") {
        TowerElem f = parse_element("2*t1*t2^-1", S3);
        auto d = f.decompose();
        CHECK(d.a2 == -1);
        CHECK(d.a1 == 1);
        CHECK(d.c == 1);
        CHECK(d.unit.is_exact_one());
    }
    SUBCASE("principal unit passes through") {
        TowerElem f = parse_element("1+t2", S3);
        auto d = f.decompose();
        CHECK(d.a2 == 0);
        CHECK(d.a1 == 0);
        CHECK(d.c == 0);
        CHECK(d.unit.eq_known(f));
    }
    SUBCASE("random recomposition") {
        Rng rng(3);
        for (auto [p, dd] : {std::pair{2, 2}, {3, 1}, {5, 1}}) {
            auto S = F(p, dd);
            for (int it = 0; it < 100; ++it) {
                TowerElem f = random_nonzero(S, rng);
                auto dc = f.decompose();
                TowerElem re = dc.unit.scaled(S->k->exp(dc.c)).shifted_t1(dc.a1).shifted_top(dc.a2);
                CHECK(re.eq_known(f));
            }
        }
    }
}

TEST_CASE("reduction to the residue field") {
    auto S = F(3, 1);
    TowerElem t1 = TowerElem::param(S, 1), t2 = TowerElem::param(S, 2);
    CHECK(print_element((t1 + t2).reduce_to_residue()) == "t1");
    TowerElem h = random_nonzero(S, *new Rng(9), 0, 2); // v >= 0
    CHECK((t2 * t2 * h).reduce_to_residue().is_exact_zero());
    TowerElem th = TowerElem::constant(S, S->k->theta());
    CHECK((th * (TowerElem::one(S) + t2)).reduce_to_residue().eq_known(TowerElem::constant(S->residue, S->k->theta())));
    CHECK_THROWS_AS(t2.inverse().reduce_to_residue(), Error);
}

TEST_CASE("2-form residues") {
    auto S = F(3, 1);
    TowerElem t1 = TowerElem::param(S, 1), t2 = TowerElem::param(S, 2);
    SUBCASE("res(c * dt1/t1 ^ dt2/t2) = c") {
        for (uint8_t c = 0; c < 3; ++c)
            CHECK(residue_2form(TowerElem::constant(S, c), t1, t2).idx() == c);
    }
    SUBCASE("wedge of equal forms vanishes; antisymmetry") {
        Rng rng(11);
        for (int it = 0; it < 50; ++it) {
            TowerElem b = random_nonzero(S, rng), f = random_nonzero(S, rng), g = random_nonzero(S, rng);
            CHECK(residue_2form(b, f, f).is_zero());
            CHECK(residue_2form(b, g, f).idx() == (-residue_2form(b, f, g)).idx());
        }
    }
    SUBCASE("log-derivative additivity: res(b, f, gh) = res(b, f, g) + res(b, f, h)") {
        for (auto [p, d] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
            auto Sp = F(p, d);
            Rng rng(13);
            for (int it = 0; it < 60; ++it) {
                TowerElem b = random_nonzero(Sp, rng), f = random_nonzero(Sp, rng);
                TowerElem g = random_nonzero(Sp, rng), h = random_nonzero(Sp, rng);
                Fq lhs = residue_2form(b, f, g * h);
                Fq rhs = residue_2form(b, f, g) + residue_2form(b, f, h);
                CHECK(lhs == rhs);
            }
        }
    }
    SUBCASE("p-th powers do not move the residue (d(h^p) = 0)") {
        for (auto [p, d] : {std::pair{2, 1}, {3, 1}}) {
            auto Sp = F(p, d);
            Rng rng(17);
            for (int it = 0; it < 60; ++it) {
                TowerElem b = random_nonzero(Sp, rng), f = random_nonzero(Sp, rng), g = random_nonzero(Sp, rng);
                TowerElem h = random_nonzero(Sp, rng);
                CHECK(residue_2form(b, f * h.pow(p), g) == residue_2form(b, f, g));
            }
        }
    }
}

TEST_CASE("1-form residues at level 1") {
    auto S1 = TowerSpec::make1(FieldSpec::get(3, 1));
    TowerElem t1 = TowerElem::param(S1, 1);
    CHECK(residue_1form(TowerElem::constant(S1, 2), t1).idx() == 2);
    TowerElem u = parse_element("1+t1", S1);
    // res(t1^-1 * du/u) = [t1^0] 1/(1+t1) = 1
    CHECK(residue_1form(t1.inverse(), u).idx() == 1);
}

TEST_CASE("substitution") {
    auto S = F(2, 1);
    auto L = TowerSpec::make2(FieldSpec::get(2, 1), 24, 24, "t1", "s");
    TowerElem t2 = TowerElem::param(S, 2);
    SUBCASE("t2 -> s^2 maps t2 to s^2") {
        TowerElem im1 = TowerElem::param(L->residue, 1);
        TowerElem im2 = TowerElem::param(L, 2).pow(2);
        TowerElem r = substitute(t2, L, im1, im2);
        CHECK(r.eq_known(TowerElem::param(L, 2).pow(2)));
        CHECK(r.v_top() == 2);
    }
    SUBCASE("identity images give the identity") {
        Rng rng(23);
        for (int it = 0; it < 40; ++it) {
            TowerElem f = random_nonzero(S, rng);
            TowerElem r = substitute(f, S, TowerElem::param(S->residue, 1), TowerElem::param(S, 2));
            CHECK(r.eq_known(f));
        }
    }
    SUBCASE("artin-schreier style image t2 -> pi^2*(1+pi)^-1 has outer valuation 2") {
        auto Lp = TowerSpec::make2(FieldSpec::get(2, 1), 24, 24, "t1", "pi");
        TowerElem pi = TowerElem::param(Lp, 2);
        TowerElem im2 = pi.pow(2) * (TowerElem::one(Lp) + pi).inverse();
        TowerElem r = substitute(t2, Lp, TowerElem::param(Lp->residue, 1), im2);
        CHECK(r.v_top() == 2);
        // it is a ring homomorphism on certified windows
        TowerElem f = parse_element("t2^2+t2", S);
        TowerElem rf = substitute(f, Lp, TowerElem::param(Lp->residue, 1), im2);
        CHECK(rf.eq_known(im2 * im2 + im2));
    }
}

TEST_CASE("precision accounting") {
    auto S = F(3, 1, 8);
    TowerElem t2 = TowerElem::param(S, 2);
    SUBCASE("x - x on approximate data is zero-so-far, not certified zero") {
        TowerElem a = (TowerElem::one(S) + t2).inverse();
        TowerElem diff = a - a;
        CHECK(diff.known_zero());
        CHECK(!diff.is_exact_zero());
        CHECK_THROWS_AS((void)diff.v_top(), Error);
        CHECK_THROWS_AS((void)diff.inverse(), Error);
    }
    SUBCASE("exact zero rejects inversion with DivisionByZero") {
        try {
            (void)TowerElem::zero(S).inverse();
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrKind::division_by_zero);
        }
    }
    SUBCASE("windows shrink through multiplication") {
        TowerElem a = (TowerElem::one(S) + t2).inverse(); // window 8 at v 0
        TowerElem b = a * t2.pow(3);                      // window 8 at v 3
        CHECK(b.v_top() == 3);
        CHECK(b.s2().known_end() == 11);
        TowerElem c = a * b;
        CHECK(c.s2().known_end() == 11); // min(8 + 3, 11 + 0)
    }
    SUBCASE("residue outside the window fails with precision error") {
        TowerElem u = (TowerElem::one(S) + t2).inverse(); // known to t2^8
        TowerElem f = u.truncated(2);                     // tiny window
        try {
            (void)residue_2form(TowerElem::one(S), f * TowerElem::param(S, 1), t2.pow(40));
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrKind::precision);
        }
    }
}

TEST_CASE("level-1 arithmetic mirrors level 2") {
    auto S1 = TowerSpec::make1(FieldSpec::get(5, 1));
    TowerElem t = TowerElem::param(S1, 1);
    TowerElem x = (TowerElem::one(S1) - t).inverse();
    for (long j = 0; j < 24; ++j) CHECK(x.s1().coeff(j).first == 1);
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        TowerElem a = random_nonzero(S1, rng), b = random_nonzero(S1, rng);
        CHECK((a * b).eq_known(b * a));
        CHECK((a * b).s1().valuation() == a.s1().valuation() + b.s1().valuation());
    }
}

TEST_CASE("constant-field maps") {
    auto S2 = F(2, 1);
    auto S4 = TowerSpec::make2(FieldSpec::get(2, 2), 24, 24);
    Rng rng(37);
    for (int it = 0; it < 50; ++it) {
        TowerElem f = random_nonzero(S2, rng);
        TowerElem up = f.map_constants(S4);
        TowerElem down = up.descend_constants(S2);
        CHECK(down.eq_known(f));
    }
    TowerElem th = TowerElem::constant(S4, S4->k->theta());
    CHECK_THROWS_AS(th.descend_constants(S2), Error);
}
