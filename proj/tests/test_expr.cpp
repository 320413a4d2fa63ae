#include <catch2/catch_amalgamated.hpp>

#include "germlab/parse.hpp"
#include "germlab/unipoly.hpp"

using namespace germlab;

namespace {

MPoly<Rat> term(Rat c, std::uint32_t ex, std::uint32_t ey, std::uint32_t ez,
                std::uint32_t et) {
    return MPoly<Rat>::monomial(std::move(c), Exp{ex, ey, ez, et});
}

/// Deterministic small-polynomial generator for property tests.
struct PolyGen {
    SplitMix64 rng{0x6765726d6c6162ULL};

    Rat coeff() {
        std::int64_t n = std::int64_t(rng.next_below(9)) - 4;
        return Rat(n);
    }
    MPoly<Rat> poly() {
        MPoly<Rat> p;
        std::size_t nterms = 1 + rng.next_below(4);
        for (std::size_t i = 0; i < nterms; ++i) {
            Exp e{std::uint32_t(rng.next_below(4)), std::uint32_t(rng.next_below(4)), 0,
                  std::uint32_t(rng.next_below(3))};
            p.add_term(e, coeff());
        }
        return p;
    }
    UniPoly<Rat> upoly(std::size_t max_deg) {
        std::vector<Rat> cs(1 + rng.next_below(max_deg + 1));
        for (auto& c : cs) c = coeff();
        return UniPoly<Rat>(std::move(cs));
    }
};

}  // namespace

TEST_CASE("parse: three-term family expression") {
    auto p = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    MPoly<Rat> expected =
        term(1, 3, 0, 0, 0) + term(1, 0, 6, 0, 0) + term(-3, 1, 4, 0, 2);
    REQUIRE(p == expected);
    REQUIRE(p.term_count() == 3);
}

TEST_CASE("parse: zero literal gives the empty term map") {
    auto p = parse_poly("0");
    REQUIRE(p.is_zero());
    REQUIRE(p.term_count() == 0);
}

TEST_CASE("parse: quartic product expands fully") {
    auto p = parse_poly("x*y*(x-y)*(x-t*y)");
    // x^3 y - (1+t) x^2 y^2 + t x y^3, expanded by hand
    MPoly<Rat> expected = term(1, 3, 1, 0, 0) + term(-1, 2, 2, 0, 0) +
                          term(-1, 2, 2, 0, 1) + term(1, 1, 3, 0, 1);
    REQUIRE(p == expected);
}

TEST_CASE("parse: rational literals and signs") {
    REQUIRE(parse_poly("1/4") == MPoly<Rat>(make_rat(1, 4)));
    REQUIRE(parse_poly("-2") == MPoly<Rat>(Rat(-2)));
    REQUIRE(parse_poly("x * -2") == term(-2, 1, 0, 0, 0));
    REQUIRE(parse_poly("(x + y)^2") ==
            term(1, 2, 0, 0, 0) + term(2, 1, 1, 0, 0) + term(1, 0, 2, 0, 0));
}

TEST_CASE("parse: errors carry positions") {
    REQUIRE_THROWS_AS(parse_poly("x + * y"), ParseError);
    try {
        parse_poly("x + * y");
    } catch (const ParseError& e) {
        REQUIRE(e.position() == 4);
    }
    REQUIRE_THROWS_AS(parse_poly("w + 1"), ParseError);
    REQUIRE_THROWS_AS(parse_poly("x^-2"), ParseError);
    REQUIRE_THROWS_AS(parse_poly("x^t"), ParseError);
    REQUIRE_THROWS_AS(parse_poly("2/0"), ParseError);
    REQUIRE_THROWS_AS(parse_poly("x y"), ParseError);  // implicit multiplication
    try {
        parse_poly("0.5*x");
        FAIL("decimal literal accepted");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("rational") != std::string::npos);
    }
}

TEST_CASE("derive: family partials") {
    auto hp = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    REQUIRE(derive(hp, VX) == parse_poly("3*x^2 - 3*t^2*y^4"));
    REQUIRE(derive(hp, VT) == parse_poly("-6*t*x*y^4"));
    REQUIRE(derive(parse_poly("5/7"), VX).is_zero());
    REQUIRE(derive(parse_poly("x^3 + y^6 - 3*t^2*x*y^4"), VZ).is_zero());
}

TEST_CASE("substitute: specialization and branch pullback") {
    auto fx = parse_poly("3*x^2 - 3*t^2*y^4");
    std::map<Var, MPoly<Rat>> bind{{VY, MPoly<Rat>(Rat(1))}};
    REQUIRE(substitute(fx, bind) == parse_poly("3*x^2 - 3*t^2"));

    auto hp = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    REQUIRE(substitute(hp, {}) == hp);

    // pull back along the polar branch x = t*s^2, y = s (s played by y)
    std::map<Var, MPoly<Rat>> branch{{VX, parse_poly("t*y^2")}};
    REQUIRE(substitute(hp, branch) == parse_poly("(1 - 2*t^3)*y^6"));
}

TEST_CASE("substitute_value: fixing t") {
    auto hp = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto at = substitute_value(hp, VT, make_rat(1, 4));
    REQUIRE(at == parse_poly("x^3 + y^6 - 3/16*x*y^4"));
    REQUIRE_FALSE(at.depends_on(VT));
}

TEST_CASE("gcd_uni: fraction field of Q[t], and plain field cases") {
    // p(a) coefficients as polynomials in t: 3a^2 - 3t^2 and 6a
    using Pt = UniPoly<Rat>;
    using Pa = UniPoly<Pt>;
    Pa p(std::vector<Pt>{Pt(std::vector<Rat>{Rat(0), Rat(0), Rat(-3)}), Pt(), Pt(Rat(3))});
    Pa q(std::vector<Pt>{Pt(), Pt(Rat(6))});
    auto g = gcd_qt(p, q);
    REQUIRE(g.deg() == 0);  // unit: the monic gcd over Q(t) is 1

    // monic gcd over the fraction field: unit gcd normalizes to 1
    auto monic_gcd = gcd_uni_qt(p, q);
    REQUIRE(monic_gcd == UniPoly<RatFunc>::one());
    // gcd(p, 0) = monic(p): 3a^2 - 3t^2 becomes a^2 - t^2
    auto monic_p = gcd_uni_qt(p, Pa());
    REQUIRE(monic_p.deg() == 2);
    REQUIRE(monic_p.coeff(2) == RatFunc(1));
    REQUIRE(monic_p.coeff(1) == RatFunc(0));
    REQUIRE(monic_p.coeff(0) ==
            RatFunc(Pt(std::vector<Rat>{Rat(0), Rat(0), Rat(-1)})));

    UniPoly<Rat> a2(std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
    UniPoly<Rat> a1(std::vector<Rat>{Rat(0), Rat(1)});
    REQUIRE(gcd_field(a2, a1) == a1);                    // gcd(a^2, a) = a
    UniPoly<Rat> p3(std::vector<Rat>{Rat(2), Rat(0), Rat(4)});
    REQUIRE(gcd_field(p3, UniPoly<Rat>()) == monic(p3));  // gcd(p, 0) = monic(p)
}

TEST_CASE("gcd over Q(t): genuine common factors survive") {
    using Pt = UniPoly<Rat>;
    using Pa = UniPoly<Pt>;
    // (a - t) is the common factor of (a - t)(a + 1) and (a - t)(a - 1)
    Pa a_minus_t(std::vector<Pt>{Pt(std::vector<Rat>{Rat(0), Rat(-1)}), Pt(Rat(1))});
    Pa a_plus_1(std::vector<Pt>{Pt(Rat(1)), Pt(Rat(1))});
    Pa a_minus_1(std::vector<Pt>{Pt(Rat(-1)), Pt(Rat(1))});
    auto g = gcd_qt(a_minus_t * a_plus_1, a_minus_t * a_minus_1);
    REQUIRE(g.deg() == 1);
    auto monic_g = gcd_uni_qt(a_minus_t * a_plus_1, a_minus_t * a_minus_1);
    REQUIRE(monic_g.coeff(1) == RatFunc(1));
    REQUIRE(monic_g.coeff(0) == RatFunc(Pt(std::vector<Rat>{Rat(0), Rat(-1)})));
    // squarefree detection over Q(t)
    REQUIRE_FALSE(squarefree_over_qt(a_minus_t * a_minus_t * a_plus_1));
    REQUIRE(squarefree_over_qt(a_minus_t * a_plus_1 * a_minus_1));
}

TEST_CASE("print-parse round trip on canonical forms") {
    for (const char* src :
         {"x^3 + y^6 - 3*t^2*x*y^4", "x*y*(x-y)*(x-t*y)", "0", "-2/3", "x^4+y^4+z^5+t*x^2*y^2",
          "x - y", "1/4*t^2 - x"}) {
        auto p = parse_poly(src);
        REQUIRE(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("property: ring laws, Leibniz rule, substitution morphism") {
    PolyGen gen;
    std::map<Var, MPoly<Rat>> bind{{VX, parse_poly("y^2 - t")}, {VY, parse_poly("x + 1")}};
    for (int iter = 0; iter < 250; ++iter) {
        auto p = gen.poly(), q = gen.poly(), r = gen.poly();
        REQUIRE(p * (q + r) == p * q + p * r);
        REQUIRE((p * q) * r == p * (q * r));
        for (Var v : {VX, VY, VT})
            REQUIRE(derive(p * q, v) == derive(p, v) * q + p * derive(q, v));
        REQUIRE(substitute(p + q, bind) == substitute(p, bind) + substitute(q, bind));
        REQUIRE(substitute(p * q, bind) == substitute(p, bind) * substitute(q, bind));
        REQUIRE(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("property: univariate gcd divides both arguments") {
    PolyGen gen;
    int nontrivial = 0;
    for (int iter = 0; iter < 250; ++iter) {
        auto a = gen.upoly(4), b = gen.upoly(4);
        if (a.is_zero() && b.is_zero()) continue;
        auto g = gcd_field(a, b);
        REQUIRE_FALSE(g.is_zero());
        if (!a.is_zero()) REQUIRE(divmod_field(a, g).second.is_zero());
        if (!b.is_zero()) REQUIRE(divmod_field(b, g).second.is_zero());
        if (g.deg() > 0) ++nontrivial;
        // forced common factor to keep the property meaningful
        auto c = gen.upoly(2);
        if (c.is_zero()) continue;
        auto g2 = gcd_field(a * c, b * c);
        if (!(a * c).is_zero()) REQUIRE(divmod_field(a * c, g2).second.is_zero());
        if (!(b * c).is_zero()) REQUIRE(divmod_field(b * c, g2).second.is_zero());
        // gcd(ac, bc) = c * gcd(a, b) up to a unit
        if (!a.is_zero() || !b.is_zero()) REQUIRE(g2.deg() == c.deg() + g.deg());
    }
    REQUIRE(nontrivial >= 0);
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
    // (a-1)^2 * (a^2+1)
    UniPoly<Rat> am1(std::vector<Rat>{Rat(-1), Rat(1)});
    UniPoly<Rat> a21(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
    auto f = am1 * am1 * a21;
    auto dec = squarefree_decomposition(f);
    REQUIRE(dec.size() == 2);
    REQUIRE(dec[0].first == a21);
    REQUIRE(dec[0].second == 1);
    REQUIRE(dec[1].first == am1);
    REQUIRE(dec[1].second == 2);
}
