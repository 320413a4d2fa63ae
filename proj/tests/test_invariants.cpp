#include <catch2/catch_amalgamated.hpp>

#include "germlab/invariants.hpp"
#include "germlab/parse.hpp"

using namespace germlab;

namespace {
const WeightSystem kHpWs{{VX, VY}, {2, 1}, 6};
const RootConfig kCfg{};

template <class K>
KReport<K> hp_k_at(const MPoly<Rat>& F, const WeightSystem& ws, const K& t0) {
    auto d = branch_roots(F, ws, t0, kCfg);
    return k_values(F, ws, d, t0, kCfg);
}
}  // namespace

TEST_CASE("k_values: HP family has unequal k on its two branches") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto report = hp_k_at(F, kHpWs, make_rat(1, 4));
    REQUIRE(report.entries.size() == 2);
    // canonical order puts the branch a = +1/4 first
    REQUIRE(report.entries[0].a.exact == make_rat(1, 4));
    REQUIRE(report.entries[0].k.is_exact());
    REQUIRE(report.entries[0].k.exact == make_rat(-2, 31));
    REQUIRE(report.entries[1].k.exact == make_rat(2, 33));
    REQUIRE(report.equality == KReport<Rat>::Equality::Unequal);
    REQUIRE(report.witness == std::make_pair(std::size_t(0), std::size_t(1)));
    REQUIRE_FALSE(report.all_equal());
    REQUIRE_FALSE(report.excluded_axis);
}

TEST_CASE("k_values: single branch is vacuously equal") {
    auto F = parse_poly("x^3 + (1+t)*y^7");
    WeightSystem ws{{VX, VY}, {7, 3}, 21};
    auto report = hp_k_at(F, ws, Rat(0));
    REQUIRE(report.entries.size() == 1);
    REQUIRE(report.entries[0].k.is_exact());
    REQUIRE(report.entries[0].k.exact == make_rat(1, 7));
    REQUIRE(report.equality == KReport<Rat>::Equality::Vacuous);
    REQUIRE(report.all_equal());
}

TEST_CASE("k_values: quadratic branches still give exact equal k") {
    auto F = parse_poly("x^3 + 3*t*x*y^4");
    auto report = hp_k_at(F, kHpWs, make_rat(1, 2));
    REQUIRE(report.entries.size() == 2);
    for (const auto& e : report.entries) {
        REQUIRE_FALSE(e.a.is_exact_value());  // a = +/- i/sqrt(2)
        REQUIRE(e.a.quad.has_value());
        REQUIRE(e.k.is_exact());              // but k = 1/(4t) is rational
        REQUIRE(e.k.exact == make_rat(1, 2));
    }
    REQUIRE(report.equality == KReport<Rat>::Equality::AllEqual);
    REQUIRE_FALSE(report.used_ball_policy);
}

TEST_CASE("k_values: certified inequality for quadratic branches") {
    // x^3 + y^6 + t*x*y^4 at t = 1: k_+- = a/(4ta+6) with a = +-i/sqrt(3)
    auto F = parse_poly("x^3 + y^6 + t*x*y^4");
    auto report = hp_k_at(F, kHpWs, Rat(1));
    REQUIRE(report.entries.size() == 2);
    for (const auto& e : report.entries) {
        REQUIRE(e.a.quad.has_value());
        REQUIRE(e.a.ball.r <= rat_pow2(-40));
        REQUIRE_FALSE(e.k.is_exact());
    }
    REQUIRE(report.equality == KReport<Rat>::Equality::Unequal);
    // the difference ball itself excludes zero
    CBall diff = ball_sub(report.entries[0].k.enclosure(), report.entries[1].k.enclosure());
    REQUIRE(diff.excludes_zero());
}

TEST_CASE("k_values: exact witness at t = -3 for the numeric control") {
    auto F = parse_poly("x^3 + y^6 + t*x*y^4");
    auto report = hp_k_at(F, kHpWs, Rat(-3));
    REQUIRE(report.entries.size() == 2);
    REQUIRE(report.entries[0].a.exact == Rat(1));
    REQUIRE(report.entries[0].k.exact == make_rat(-1, 6));
    REQUIRE(report.entries[1].k.exact == make_rat(-1, 18));
    REQUIRE(report.equality == KReport<Rat>::Equality::Unequal);
}

TEST_CASE("k_values: degenerate branch (F_y vanishes) is reported") {
    auto F = parse_poly("x^3 + t*x^2*y^2");
    auto d = branch_roots(F, kHpWs, Rat(1), kCfg);
    auto report = k_values(F, kHpWs, d, Rat(1), kCfg);
    REQUIRE(report.entries.size() == 2);
    REQUIRE(report.entries[0].a.exact == Rat(0));
    REQUIRE(report.entries[0].degenerate_fy);
    REQUIRE(report.equality == KReport<Rat>::Equality::Undecided);
}

TEST_CASE("k_values: HP closed forms at five sample points") {
    // k along a = +t is -t^2/(1-2t^3); along a = -t it is t^2/(1+2t^3)
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    for (const char* ts : {"1/4", "1/3", "1/5", "2/5", "3/7"}) {
        Rat t0 = *rat_from_string(ts);
        auto report = hp_k_at(F, kHpWs, t0);
        Rat t3 = t0 * t0 * t0;
        REQUIRE(report.entries[0].k.exact == -t0 * t0 / (1 - 2 * t3));
        REQUIRE(report.entries[1].k.exact == t0 * t0 / (1 + 2 * t3));
        REQUIRE_FALSE(report.all_equal());
    }
}

TEST_CASE("property: k scale invariance under F -> c*F") {
    for (const char* expr :
         {"x^3 + y^6 - 3*t^2*x*y^4", "x^3 + 3*t*x*y^4", "x^3 + y^6 + t*x*y^4"}) {
        auto F = parse_poly(expr);
        for (const char* cs : {"3", "-1/2", "7"}) {
            Rat c = *rat_from_string(cs);
            Rat t0 = make_rat(1, 2);
            auto base = hp_k_at(F, kHpWs, t0);
            auto scaled = hp_k_at(F.scaled(c), kHpWs, t0);
            REQUIRE(base.entries.size() == scaled.entries.size());
            for (std::size_t i = 0; i < base.entries.size(); ++i) {
                const auto& u = base.entries[i].k;
                const auto& v = scaled.entries[i].k;
                REQUIRE(u.kind == v.kind);
                if (u.is_exact()) {
                    REQUIRE(u.exact == v.exact);
                } else if (u.kind == KValue<Rat>::Kind::Quad) {
                    REQUIRE(u.quad == v.quad);
                } else {
                    REQUIRE(u.ball.c == v.ball.c);
                }
            }
            REQUIRE(base.all_equal() == scaled.all_equal());
        }
    }
}

TEST_CASE("hp_coefficients: exact HP leading coefficients and ratios") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto d4 = branch_roots(F, kHpWs, make_rat(1, 4), kCfg);
    auto h4 = hp_coefficients(F, kHpWs, d4, make_rat(1, 4), kCfg);
    REQUIRE(h4.entries.size() == 2);
    REQUIRE(h4.entries[0].c.exact == make_rat(31, 32));  // branch a = +1/4
    REQUIRE(h4.entries[1].c.exact == make_rat(33, 32));  // branch a = -1/4
    REQUIRE(h4.zero_count == 0);
    REQUIRE(h4.base_index == 0);
    REQUIRE(h4.ratios.size() == 2);
    REQUIRE(h4.ratios[0].exact == Rat(1));
    REQUIRE(h4.ratios[1].exact == make_rat(33, 31));

    auto d3 = branch_roots(F, kHpWs, make_rat(1, 3), kCfg);
    auto h3 = hp_coefficients(F, kHpWs, d3, make_rat(1, 3), kCfg);
    REQUIRE(h3.entries[0].c.exact == make_rat(25, 27));
    REQUIRE(h3.entries[1].c.exact == make_rat(29, 27));
}

TEST_CASE("hp_coefficients: binomial family evaluates to 1 at the origin branch") {
    auto F = parse_poly("x^3 + (1+t)*y^7");
    WeightSystem ws{{VX, VY}, {7, 3}, 21};
    auto d = branch_roots(F, ws, Rat(0), kCfg);
    auto h = hp_coefficients(F, ws, d, Rat(0), kCfg);
    REQUIRE(h.entries.size() == 1);
    REQUIRE(h.entries[0].c.exact == Rat(1));
}

TEST_CASE("hp_coefficients: consistency with symbolic pullback") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    Rat t0 = make_rat(1, 4);
    auto f = substitute_value(F, VT, t0);
    auto d = branch_roots(F, kHpWs, t0, kCfg);
    auto h = hp_coefficients(F, kHpWs, d, t0, kCfg);
    for (std::size_t i = 0; i < h.entries.size(); ++i) {
        std::map<Var, MPoly<Rat>> bind{
            {VX, MPoly<Rat>::monomial(h.entries[i].a.exact, Exp{0, 2, 0, 0})}};
        auto pulled = substitute(f, bind);
        auto it = pulled.terms().find(Exp{0, 6, 0, 0});
        REQUIRE(it != pulled.terms().end());
        REQUIRE(it->second == h.entries[i].c.exact);
    }
}

TEST_CASE("compare_members: HP members are distinguished, controls are not") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    auto r = compare_members(F, kHpWs, make_rat(1, 4), make_rat(1, 3), kCfg);
    REQUIRE(r.verdict == ComparisonVerdict::Distinguished);
    auto sym = compare_members(F, kHpWs, make_rat(1, 3), make_rat(1, 4), kCfg);
    REQUIRE(sym.verdict == ComparisonVerdict::Distinguished);

    auto same = compare_members(F, kHpWs, make_rat(1, 4), make_rat(1, 4), kCfg);
    REQUIRE(same.verdict == ComparisonVerdict::NotDistinguished);

    auto control = parse_poly("x^3 + 3*t*x*y^4");
    auto rc = compare_members(control, kHpWs, make_rat(1, 2), make_rat(1, 4), kCfg);
    REQUIRE(rc.verdict == ComparisonVerdict::NotDistinguished);
}

TEST_CASE("compare_members: quadratic-branch ratios are exactly {1, -1}") {
    auto F = parse_poly("x^3 + 3*t*x*y^4");
    auto d = branch_roots(F, kHpWs, make_rat(1, 2), kCfg);
    auto h = hp_coefficients(F, kHpWs, d, make_rat(1, 2), kCfg);
    REQUIRE(h.ratios.size() == 2);
    REQUIRE(h.ratios[0].is_exact());
    REQUIRE(h.ratios[0].exact == Rat(1));
    REQUIRE(h.ratios[1].is_exact());
    REQUIRE(h.ratios[1].exact == Rat(-1));
}

TEST_CASE("hp_coefficients: vanishing leading coefficients are counted separately") {
    // x^3 + t*x^2*y^2 at t=1 is x^2(x + y^2): the polar branch a = 0 lies on
    // {f = 0}, so its leading coefficient vanishes (non-isolated input,
    // exercised through the direct API)
    auto F = parse_poly("x^3 + t*x^2*y^2");
    auto d = branch_roots(F, kHpWs, Rat(1), kCfg);
    auto h = hp_coefficients(F, kHpWs, d, Rat(1), kCfg);
    REQUIRE(h.entries.size() == 2);
    REQUIRE(h.entries[0].certified_zero);  // a = 0 sorts first
    REQUIRE(h.zero_count == 1);
    REQUIRE(h.base_index == 1);
    REQUIRE(h.ratios.size() == 1);
    REQUIRE(h.ratios[0].exact == Rat(1));
}

TEST_CASE("branch-order independence of the equality verdict") {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    Rat t0 = make_rat(1, 4);
    auto d = branch_roots(F, kHpWs, t0, kCfg);
    auto reversed = d;
    std::reverse(reversed.branches.begin(), reversed.branches.end());
    auto a = k_values(F, kHpWs, d, t0, kCfg);
    auto b = k_values(F, kHpWs, reversed, t0, kCfg);
    REQUIRE(a.all_equal() == b.all_equal());
    REQUIRE((a.equality == KReport<Rat>::Equality::Unequal) ==
            (b.equality == KReport<Rat>::Equality::Unequal));
}
