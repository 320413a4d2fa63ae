#include <catch2/catch_amalgamated.hpp>
#include <thread>

#include "germlab/verdict.hpp"

using namespace germlab;

namespace {

FamilySpec spec_of(const std::string& expr, const std::string& domain,
                   std::initializer_list<const char*> ts) {
    FamilySpec spec;
    spec.expr_text = expr;
    spec.F = parse_poly(expr);
    spec.domain_note = domain;
    for (const char* t : ts) spec.t_samples.push_back(TSample{*rat_from_string(t)});
    return spec;
}

bool has_footnote_containing(const ReportDocument& doc, const std::string& needle) {
    for (const auto& f : doc.footnotes)
        if (f.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("verdict: HP family fails the k-condition") {
    auto out = analyze_family(spec_of("x^3 + y^6 - 3*t^2*x*y^4", "0<|t|<1/2",
                                      {"1/4", "1/3"}));
    REQUIRE(out.verdict == VerdictKind::FailsKCondition);
    REQUIRE(out.report.verdict == "FailsKCondition");
    REQUIRE(out.report.weights.w == std::vector<long long>{2, 1});
    REQUIRE_FALSE(out.report.weights.swapped);
    // witness detail mentions the two exact k-values
    bool witness_found = false;
    for (const auto& d : out.report.verdict_details)
        if (d.find("-2/31") != std::string::npos && d.find("2/33") != std::string::npos)
            witness_found = true;
    REQUIRE(witness_found);
    // the generic membership must agree (not a member)
    REQUIRE(out.report.membership_generic.computed);
    REQUIRE_FALSE(out.report.membership_generic.member);
    // user-sample comparison is distinguished
    REQUIRE(out.report.comparisons.size() == 1);
    REQUIRE(out.report.comparisons[0].verdict == "DISTINGUISHED");
    // three automatic samples were added to the two user ones
    REQUIRE(out.report.samples.size() == 5);
    REQUIRE(out.report.samples[2].user_sample == false);
}

TEST_CASE("verdict: binomial control is analytically trivial with exceptional t") {
    auto out = analyze_family(spec_of("x^3 + (1+t)*y^7", "|t|<2", {"0", "1"}));
    REQUIRE(out.verdict == VerdictKind::AnalyticallyTrivialGeneric);
    const auto& m = out.report.membership_generic;
    REQUIRE(m.member);
    REQUIRE(m.exceptional_rational == std::vector<std::string>{"-1"});
    REQUIRE(m.retests.size() == 1);
    REQUIRE(m.retests[0].t0 == "-1");
    REQUIRE(m.retests[0].inside_domain);
    REQUIRE_FALSE(m.retests[0].member);
    REQUIRE_FALSE(m.retests[0].isolated);
    REQUIRE(m.revalidation_samples.size() == 3);
    // per-sample Milnor number is 12 at both samples
    for (const auto& s : out.report.samples) {
        if (!s.user_sample) continue;
        REQUIRE(s.milnor.computed);
        REQUIRE(s.milnor.mu == 12);
        REQUIRE(s.milnor.orbit_codim == 13);
    }
    // F_x = 3x^2 is not squarefree: the reduced pathway never applies
    REQUIRE_FALSE(out.report.reduced_paths.empty());
    for (const auto& rp : out.report.reduced_paths) {
        REQUIRE(rp.status == "not_applicable");
        REQUIRE(rp.reason.find("squarefree") != std::string::npos);
    }
}

TEST_CASE("reduced_path_check: direct preconditions") {
    RootConfig cfg;
    auto binomial = parse_poly("x^3 + (1+t)*y^7");
    WeightSystem ws73{{VX, VY}, {7, 3}, 21};
    auto d = branch_roots(binomial, ws73, Rat(0), cfg);
    auto rp = reduced_path_check<Rat>(binomial, ws73, make_rat(1, 7), Rat(0), d);
    REQUIRE(rp.status == ReducedPathResult<Rat>::Status::NotApplicable);

    auto hp = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    WeightSystem ws21{{VX, VY}, {2, 1}, 6};
    auto dhp = branch_roots(hp, ws21, make_rat(1, 4), cfg);
    REQUIRE(dhp.squarefree);  // squarefree polar, but the k-condition fails:
    // solving jointly for (k, u) must fail, because no single k works
    auto rhp = reduced_path_check<Rat>(hp, ws21, std::nullopt, make_rat(1, 4), dhp);
    REQUIRE(rhp.status == ReducedPathResult<Rat>::Status::Failed);
}

TEST_CASE("verdict: monomial control succeeds with reduced path R = 0") {
    auto out = analyze_family(spec_of("x^3 + 3*t*x*y^4", "0<|t|<1", {"1/2", "1/4"}));
    REQUIRE(out.verdict == VerdictKind::AnalyticallyTrivialGeneric);
    REQUIRE(out.report.membership_generic.exceptional_rational ==
            std::vector<std::string>{"0"});
    REQUIRE(out.report.reduced_paths.size() >= 2);
    for (const auto& rp : out.report.reduced_paths) {
        REQUIRE(rp.status == "success");
        REQUIRE(rp.residual == "0");
        REQUIRE(rp.cofactor_u == "0");
        REQUIRE(rp.u_vanishes_at_origin);
    }
    // k_common = 1/(4t): check the two user samples
    REQUIRE(out.report.reduced_paths[0].k_common == "1/2");
    REQUIRE(out.report.reduced_paths[1].k_common == "1");
    // the comparison of members does not distinguish them
    REQUIRE(out.report.comparisons[0].verdict == "NOT_DISTINGUISHED");
}

TEST_CASE("verdict: three-variable example is not analytically trivial") {
    auto out = analyze_family(spec_of("x^4+y^4+z^5+t*x^2*y^2", "|t|<2", {"0", "1"}));
    REQUIRE(out.verdict == VerdictKind::NotAnalyticallyTrivialByTangentCriterion);
    REQUIRE(out.report.membership_generic.computed);
    REQUIRE_FALSE(out.report.membership_generic.member);
    REQUIRE(has_footnote_containing(out.report, "NOT EVALUATED"));
    REQUIRE(has_footnote_containing(out.report, "UNCHECKED"));
    // residual evidence present
    REQUIRE_FALSE(out.report.membership_generic.residual_num.empty());
    for (const auto& s : out.report.samples) {
        REQUIRE(s.error.empty());
        REQUIRE(s.isolated);
        if (s.t0 == "0" || s.t0 == "1") {
            REQUIRE(s.milnor.mu == 36);
            REQUIRE(s.milnor.orbit_codim == 38);
        }
    }
}

TEST_CASE("verdict: Whitney family is inconclusive (homogeneous)") {
    auto out = analyze_family(spec_of("x*y*(x-y)*(x-t*y)", "0<|t|<1", {"1/2", "1/3"}));
    REQUIRE(out.verdict == VerdictKind::Inconclusive);
    REQUIRE(out.report.weights.homogeneous);
    REQUIRE(out.report.weights.w == std::vector<long long>{1, 1});
    bool reason_found = false;
    for (const auto& r : out.report.inconclusive_reasons)
        if (r.find("homogeneous") != std::string::npos) reason_found = true;
    REQUIRE(reason_found);
    // Milnor data still reported per sample
    REQUIRE(out.report.samples.size() == 2);
    REQUIRE(out.report.samples[0].milnor.mu == 9);
}

TEST_CASE("verdict: numeric control fails the k-condition at an exact witness") {
    auto out = analyze_family(spec_of("x^3 + y^6 + t*x*y^4", "|t|<4", {"-3", "1"}));
    REQUIRE(out.verdict == VerdictKind::FailsKCondition);
    // the t = 1 sample carries certified quadratic branches
    const SampleDoc* s1 = nullptr;
    for (const auto& s : out.report.samples)
        if (s.t0 == "1") s1 = &s;
    REQUIRE(s1 != nullptr);
    REQUIRE(s1->k.computed);
    REQUIRE(s1->k.equality == "unequal");
    REQUIRE(s1->polar.branches.size() == 2);
    REQUIRE(s1->polar.branches[0].a.type == "ball");
    REQUIRE_FALSE(s1->polar.branches[0].a.minpoly.empty());
}

TEST_CASE("verdict: constant families are trivially analytically trivial") {
    auto out = analyze_family(spec_of("x^3 + y^7", "", {}));
    REQUIRE(out.verdict == VerdictKind::AnalyticallyTrivialGeneric);
    bool detail_found = false;
    for (const auto& d : out.report.verdict_details)
        if (d.find("constant in t") != std::string::npos) detail_found = true;
    REQUIRE(detail_found);
}

TEST_CASE("verdict: inputs with the heavier weight on y are swapped") {
    auto out = analyze_family(spec_of("x^3 + t*y^2", "0<|t|<1", {"1/2"}));
    REQUIRE(out.report.weights.swapped);
    REQUIRE(out.report.weights.w == std::vector<long long>{3, 2});
    REQUIRE(out.verdict == VerdictKind::AnalyticallyTrivialGeneric);
    REQUIRE(has_footnote_containing(out.report, "swapped"));
}

TEST_CASE("verdict: errors for bad inputs") {
    REQUIRE_THROWS_AS(analyze_family(spec_of("x^2 + x*y^3 + y^2", "", {"1"})),
                      InputError);
    REQUIRE_THROWS_AS(analyze_family(spec_of("0", "", {})), InputError);
    REQUIRE_THROWS_AS(analyze_family(spec_of("t^2", "", {})), InputError);
    REQUIRE_THROWS_AS(analyze_family(spec_of("y^2 + z^3", "", {})), InputError);
    // sample outside the declared domain
    REQUIRE_THROWS_AS(
        analyze_family(spec_of("x^3 + y^6 - 3*t^2*x*y^4", "0<|t|<1/2", {"1"})),
        InputError);
    REQUIRE_THROWS_AS(
        analyze_family(spec_of("x^3 + y^6 - 3*t^2*x*y^4", "0<|t|<1/2", {"0"})),
        InputError);
}

TEST_CASE("verdict: non-isolated sample is fatal for that sample only") {
    // (x^2+y^2)^2-style degeneration of the z5 family at t = 2
    auto out = analyze_family(spec_of("x^4+y^4+z^5+t*x^2*y^2", "|t|<3", {"2", "1"}));
    REQUIRE(out.report.samples.size() == 2);
    REQUIRE_FALSE(out.report.samples[0].error.empty());
    REQUIRE(out.report.samples[1].error.empty());
    REQUIRE(out.verdict == VerdictKind::NotAnalyticallyTrivialByTangentCriterion);
}

TEST_CASE("verdict: complex parameter samples run the exact Q(i) pipeline") {
    FamilySpec spec;
    spec.expr_text = "x^3 + y^6 - 3*t^2*x*y^4";
    spec.F = parse_poly(spec.expr_text);
    spec.domain_note = "0<|t|<1/2";
    spec.t_samples = {TSample{GaussRat(Rat(0), make_rat(1, 4))}};  // t = i/4
    auto out = analyze_family(spec);
    REQUIRE(out.verdict == VerdictKind::FailsKCondition);
    const auto& s = out.report.samples[0];
    REQUIRE(s.complex_t0);
    REQUIRE(s.t0 == "1/4*i");
    REQUIRE(s.isolated);
    REQUIRE(s.milnor.mu == 10);
    REQUIRE(s.k.equality == "unequal");
    // branches a = +-t are Gaussian-exact: zero-radius balls in the document
    REQUIRE(s.polar.branches.size() == 2);
    for (const auto& b : s.polar.branches) {
        REQUIRE(b.a.type == "ball");
        REQUIRE(b.a.radius == "0");
        REQUIRE(b.a.re == "0");
    }
    // k-values are exact Gaussian rationals: k(+-t) = -+t^2/(1 -+ 2t^3)
    // at t = i/4: k_1 = -(-1/16)/(1 - 2(-i/64)) = (1/16)/(1 + i/32)
    for (const auto& e : s.k.entries) {
        REQUIRE(e.k.type == "ball");
        REQUIRE(e.k.radius == "0");
    }
}

TEST_CASE("report document: JSON round trip and determinism") {
    auto spec = spec_of("x^3 + y^6 - 3*t^2*x*y^4", "0<|t|<1/2", {"1/4", "1/3"});
    auto out = analyze_family(spec);
    std::string j = report_to_json(out.report);
    ReportDocument parsed = report_from_json(j);
    REQUIRE(parsed == out.report);
    auto out2 = analyze_family(spec);
    REQUIRE(report_to_json(out2.report) == j);
    // text rendering carries the same numbers
    std::string text = report_to_text(out.report);
    REQUIRE(text.find("-2/31") != std::string::npos);
    REQUIRE(text.find("2/33") != std::string::npos);
    REQUIRE(text.find("FailsKCondition") != std::string::npos);
}

TEST_CASE("concurrent analyses agree with serial runs") {
    auto families = corpus();
    std::vector<std::string> serial(families.size());
    for (std::size_t i = 0; i < families.size(); ++i)
        serial[i] = report_to_json(analyze_family(families[i]).report);
    std::vector<std::string> parallel(families.size());
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < families.size(); ++i)
        workers.emplace_back(
            [&, i] { parallel[i] = report_to_json(analyze_family(families[i]).report); });
    for (auto& w : workers) w.join();
    REQUIRE(parallel == serial);
}

TEST_CASE("corpus: six families with pinned expressions and domains") {
    auto c = corpus();
    REQUIRE(c.size() == 6);
    REQUIRE(c[1].name == "henry-parusinski");
    REQUIRE(c[1].domain_note == "0<|t|<1/2");
    REQUIRE(c[0].domain_note == "0<|t|<1");
    REQUIRE(c[2].expr_text == "x^4+y^4+z^5+t*x^2*y^2");
    for (const auto& spec : c) REQUIRE_FALSE(spec.F.is_zero());
}
