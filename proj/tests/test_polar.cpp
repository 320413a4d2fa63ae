#include <catch2/catch_amalgamated.hpp>

#include "germlab/parse.hpp"
#include "germlab/polar.hpp"

using namespace germlab;

namespace {
const WeightSystem kHpWs{{VX, VY}, {2, 1}, 6};
const RootConfig kCfg{};
}  // namespace

TEST_CASE("polar_poly: partial derivative with respect to x") {
    REQUIRE(polar_poly(parse_poly("x^3 + y^6 - 3*t^2*x*y^4")) ==
            parse_poly("3*x^2 - 3*t^2*y^4"));
    REQUIRE(polar_poly(parse_poly("x^3 + (1+t)*y^7")) == parse_poly("3*x^2"));
    REQUIRE(polar_poly(parse_poly("x*y")) == parse_poly("y"));
    REQUIRE_THROWS_AS(polar_poly(parse_poly("y^2")), InputError);
}

TEST_CASE("branch_roots: exact branches of the HP family") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto d = branch_roots(F, kHpWs, make_rat(1, 4), kCfg);
    REQUIRE(d.branches.size() == 2);
    REQUIRE(d.branches[0].a.exact == make_rat(1, 4));
    REQUIRE(d.branches[1].a.exact == make_rat(-1, 4));
    REQUIRE(d.branches[0].multiplicity == 1);
    REQUIRE(d.x_axis_order == 0);
    REQUIRE(d.squarefree);
    REQUIRE_FALSE(d.degenerate);
    REQUIRE_FALSE(d.y_axis_in_branches);
}

TEST_CASE("branch_roots: double branch and non-squarefree polar") {
    auto F = parse_poly("x^3 + (1+t)*y^7");
    WeightSystem ws{{VX, VY}, {7, 3}, 21};
    auto d = branch_roots(F, ws, Rat(2), kCfg);
    REQUIRE(d.branches.size() == 1);
    REQUIRE(d.branches[0].a.exact == 0);
    REQUIRE(d.branches[0].multiplicity == 2);
    REQUIRE_FALSE(d.squarefree);
    REQUIRE(d.y_axis_in_branches);
    REQUIRE(d.x_axis_order == 0);
}

TEST_CASE("branch_roots: numeric control family at a rational point") {
    auto F = parse_poly("x^3 + y^6 + t*x*y^4");
    auto d = branch_roots(F, kHpWs, Rat(-3), kCfg);
    REQUIRE(d.branches.size() == 2);
    REQUIRE(d.branches[0].a.exact == Rat(1));
    REQUIRE(d.branches[1].a.exact == Rat(-1));
    REQUIRE(d.squarefree);
}

TEST_CASE("branch_roots: degenerate polar is reported, not fatal") {
    auto F = parse_poly("(t - 1)*x^3 + y^9");
    WeightSystem ws{{VX, VY}, {3, 1}, 9};
    auto d = branch_roots(F, ws, Rat(1), kCfg);
    REQUIRE(d.degenerate);
    REQUIRE(d.branches.empty());
    auto ok = branch_roots(F, ws, Rat(2), kCfg);
    REQUIRE_FALSE(ok.degenerate);
    REQUIRE(ok.branches.size() == 1);
    REQUIRE(ok.branches[0].multiplicity == 2);
}

TEST_CASE("branch_roots: weight-order precondition") {
    auto F = parse_poly("x^3 + t*y^2");  // weights (2, 3): heavier on y
    WeightSystem ws{{VX, VY}, {2, 3}, 6};
    REQUIRE_THROWS_AS(branch_roots(F, ws, Rat(1), kCfg), InputError);
}

TEST_CASE("branch_curve: sample evaluation") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto d = branch_roots(F, kHpWs, make_rat(1, 4), kCfg);
    auto pts = branch_curve(d.branches[0], d.w1, d.w2,
                            {GaussRat(Rat(1)), GaussRat(Rat(0))});
    REQUIRE(pts[0].first.c == GaussRat(make_rat(1, 4)));
    REQUIRE(pts[0].second.c == GaussRat(Rat(1)));
    REQUIRE(pts[1].first.c == GaussRat(Rat(0)));
    REQUIRE(pts[1].second.c == GaussRat(Rat(0)));
    auto neg = branch_curve(d.branches[1], d.w1, d.w2, {GaussRat(Rat(2))});
    REQUIRE(neg[0].first.c == GaussRat(Rat(-1)));  // (-1/4 * 4, 2)
    REQUIRE(neg[0].second.c == GaussRat(Rat(2)));
}

TEST_CASE("property: branch residuals are certified zero enclosures") {
    struct Case {
        const char* expr;
        WeightSystem ws;
        Rat t0;
    };
    std::vector<Case> cases = {
        {"x^3 + y^6 - 3*t^2*x*y^4", kHpWs, make_rat(1, 4)},
        {"x^3 + y^6 + t*x*y^4", kHpWs, Rat(-3)},
        {"x^3 + y^6 + t*x*y^4", kHpWs, Rat(1)},
        {"x^3 + 3*t*x*y^4", kHpWs, make_rat(1, 2)},
        {"x^3 + (1+t)*y^7", WeightSystem{{VX, VY}, {7, 3}, 21}, Rat(0)},
    };
    for (const auto& c : cases) {
        auto F = parse_poly(c.expr);
        auto d = branch_roots(F, c.ws, c.t0, kCfg);
        auto fx = substitute_value(polar_poly(F), VT, c.t0);
        std::int64_t mult_total = 0;
        for (const auto& b : d.branches) {
            mult_total += b.multiplicity;
            for (const GaussRat& s :
                 {GaussRat(Rat(1)), GaussRat(make_rat(1, 2)), GaussRat(Rat(0), Rat(1))}) {
                CBall x = ball_scale(b.a.enclosure(), gauss_pow(s, d.w1));
                CBall y{gauss_pow(s, d.w2)};
                CBall residual = eval_mpoly_ball(fx, x, y);
                REQUIRE(residual.contains_zero());
                if (b.a.is_exact_value()) {
                    REQUIRE(residual.r == 0);
                    REQUIRE(residual.c.is_zero());
                }
            }
        }
        REQUIRE(mult_total == d.p.deg());
    }
}

TEST_CASE("property: weighted consistency of F along branches") {
    // F(gamma(s)) = s^d * f(a, 1) for exact branches, checked symbolically
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    for (const Rat& t0 : {make_rat(1, 4), make_rat(1, 3), make_rat(-2, 5)}) {
        auto f = substitute_value(F, VT, t0);
        auto d = branch_roots(F, kHpWs, t0, kCfg);
        for (const auto& b : d.branches) {
            REQUIRE(b.a.is_exact_value());
            // substitute x -> a*y^2, y -> y (y plays the branch parameter s)
            std::map<Var, MPoly<Rat>> bind{
                {VX, MPoly<Rat>::monomial(b.a.exact, Exp{0, 2, 0, 0})}};
            auto pulled = substitute(f, bind);
            Rat expected = detail::dehomogenize_x(f).eval(b.a.exact);
            REQUIRE(pulled == MPoly<Rat>::monomial(expected, Exp{0, 6, 0, 0}));
        }
    }
}
