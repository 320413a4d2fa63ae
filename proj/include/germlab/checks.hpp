#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "germlab/verdict.hpp"

namespace germlab {

/// Self-test result for one pinned expectation of the built-in corpus.
struct CriterionResult {
    int id = 0;
    std::string description;
    bool passed = false;
    std::string detail;  // first failing check, when any
};

namespace checks_detail {

class Checker {
public:
    void require(bool cond, const std::string& what) {
        ++total_;
        if (!cond && first_failure_.empty()) first_failure_ = what;
        if (!cond) ++failures_;
    }
    bool passed() const { return failures_ == 0; }
    std::string detail() const {
        if (passed()) return std::to_string(total_) + " checks";
        return first_failure_ + " (" + std::to_string(failures_) + "/" +
               std::to_string(total_) + " checks failed)";
    }

private:
    int total_ = 0;
    int failures_ = 0;
    std::string first_failure_;
};

inline const WeightSystem kW21{{VX, VY}, {2, 1}, 6};

inline void criterion_hp_family(Checker& c) {
    auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
    RootConfig cfg;
    auto d4 = branch_roots(F, kW21, make_rat(1, 4), cfg);
    c.require(d4.branches.size() == 2, "HP: two branches at t=1/4");
    c.require(d4.branches[0].a.is_exact_value() &&
                  d4.branches[0].a.exact == make_rat(1, 4),
              "HP: branch a=1/4");
    c.require(d4.branches[1].a.is_exact_value() &&
                  d4.branches[1].a.exact == make_rat(-1, 4),
              "HP: branch a=-1/4");
    auto k4 = k_values(F, kW21, d4, make_rat(1, 4), cfg);
    c.require(k4.entries.size() == 2 && k4.entries[0].k.is_exact() &&
                  k4.entries[1].k.is_exact(),
              "HP: exact k-values");
    c.require(k4.entries[0].k.exact == make_rat(-2, 31), "HP: k(1/4) = -2/31");
    c.require(k4.entries[1].k.exact == make_rat(2, 33), "HP: k(-1/4) = 2/33");
    c.require(!k4.all_equal(), "HP: k-condition fails");
    auto h4 = hp_coefficients(F, kW21, d4, make_rat(1, 4), cfg);
    c.require(h4.entries[0].c.exact == make_rat(31, 32) &&
                  h4.entries[1].c.exact == make_rat(33, 32),
              "HP: coefficients {31/32, 33/32} at t=1/4");
    auto d3 = branch_roots(F, kW21, make_rat(1, 3), cfg);
    auto h3 = hp_coefficients(F, kW21, d3, make_rat(1, 3), cfg);
    c.require(h3.entries[0].c.exact == make_rat(25, 27) &&
                  h3.entries[1].c.exact == make_rat(29, 27),
              "HP: coefficients {25/27, 29/27} at t=1/3");

    FamilySpec spec;
    spec.expr_text = "x^3 + y^6 - 3*t^2*x*y^4";
    spec.F = F;
    spec.domain_note = "0<|t|<1/2";
    spec.t_samples = {TSample{make_rat(1, 4)}, TSample{make_rat(1, 3)}};
    auto out = analyze_family(spec);
    c.require(out.verdict == VerdictKind::FailsKCondition, "HP: verdict FailsKCondition");
    auto cmp = compare_members(F, kW21, make_rat(1, 4), make_rat(1, 3), cfg);
    c.require(cmp.verdict == ComparisonVerdict::Distinguished,
              "HP: members at 1/4 and 1/3 DISTINGUISHED");
}

inline void criterion_binomial_control(Checker& c) {
    auto F = parse_poly("x^3 + (1+t)*y^7");
    WeightSystem ws{{VX, VY}, {7, 3}, 21};
    auto tf = tf_gens(F, ws);
    auto mem = graded_membership_qt(derive(F, VT), tf, ws);
    c.require(mem.member, "binomial: y^7 is a member of TF over Q(t)");
    for (std::size_t g : {0u, 1u, 2u})
        c.require(mem.multiplier_num[g].is_zero(), "binomial: single-term certificate");
    c.require(mem.multiplier_num[3] * parse_poly("7 + 7*t") ==
                  detail::mpoly_from_t(mem.multiplier_den[3]),
              "binomial: multiplier equals 1/(7(1+t))");
    c.require(mem.exceptional.rational_roots == std::vector<Rat>{Rat(-1)},
              "binomial: exceptional t = {-1}");

    FamilySpec spec;
    spec.expr_text = "x^3 + (1+t)*y^7";
    spec.F = F;
    spec.domain_note = "|t|<2";
    spec.t_samples = {TSample{Rat(0)}, TSample{Rat(1)}};
    auto out = analyze_family(spec);
    c.require(out.verdict == VerdictKind::AnalyticallyTrivialGeneric,
              "binomial: verdict AnalyticallyTrivialGeneric");
    for (const Rat& t0 : {Rat(0), Rat(1)}) {
        auto md = milnor(substitute_value(F, VT, t0), ws);
        c.require(md.mu == 12 && md.method_dimension == 12 && md.method_formula == 12,
                  "binomial: Milnor number 12 by both methods");
    }
}

inline void criterion_monomial_control(Checker& c) {
    auto F = parse_poly("x^3 + 3*t*x*y^4");
    RootConfig cfg;
    for (const char* ts : {"1/2", "1/4", "1/8", "-1/3", "9/16"}) {
        Rat t0 = *rat_from_string(ts);
        auto d = branch_roots(F, kW21, t0, cfg);
        auto k = k_values(F, kW21, d, t0, cfg);
        c.require(k.entries.size() == 2, "monomial: two branches");
        Rat expected = Rat(1) / (4 * t0);
        for (const auto& e : k.entries)
            c.require(e.k.is_exact() && e.k.exact == expected,
                      "monomial: k = 1/(4t) exactly on both branches");
        c.require(k.all_equal(), "monomial: k-condition holds");
        auto rp = reduced_path_check<Rat>(F, kW21, expected, t0, d);
        c.require(rp.status == ReducedPathResult<Rat>::Status::Success,
                  "monomial: reduced path applicable");
        c.require(rp.residual.is_zero(), "monomial: residual R = 0");
    }
    FamilySpec spec;
    spec.expr_text = "x^3 + 3*t*x*y^4";
    spec.F = F;
    spec.domain_note = "0<|t|<1";
    spec.t_samples = {TSample{make_rat(1, 2)}, TSample{make_rat(1, 4)}};
    auto out = analyze_family(spec);
    c.require(out.verdict == VerdictKind::AnalyticallyTrivialGeneric,
              "monomial: verdict AnalyticallyTrivialGeneric");
    for (const auto& rp : out.report.reduced_paths)
        c.require(rp.status == "success" && rp.residual == "0",
                  "monomial: reduced path succeeds at every sample");
}

inline void criterion_milnor_suite(Checker& c) {
    auto m1 = milnor(parse_poly("x^3 + y^6"), kW21);
    c.require(m1.mu == 10 && m1.orbit_codim == 11, "milnor: x^3+y^6 -> 10, codim 11");
    c.require(m1.method_dimension == m1.method_formula, "milnor: methods agree (1)");
    auto whitney = substitute_value(parse_poly("x*y*(x-y)*(x-t*y)"), VT, Rat(2));
    auto m2 = milnor(whitney, WeightSystem{{VX, VY}, {1, 1}, 4});
    c.require(m2.mu == 9, "milnor: Whitney quartic -> 9");
    c.require(m2.method_dimension == m2.method_formula, "milnor: methods agree (2)");
    auto m3 =
        milnor(parse_poly("x^4+y^4+z^5"), WeightSystem{{VX, VY, VZ}, {5, 5, 4}, 20});
    c.require(m3.mu == 36 && m3.orbit_codim == 38,
              "milnor: x^4+y^4+z^5 -> 36, codim 38");
    c.require(m3.method_dimension == m3.method_formula, "milnor: methods agree (3)");
}

inline void criterion_z5_example(Checker& c) {
    auto F = parse_poly("x^4+y^4+z^5+t*x^2*y^2");
    WeightSystem ws{{VX, VY, VZ}, {5, 5, 4}, 20};
    auto mem = graded_membership_qt(parse_poly("x^2*y^2"), tf_gens(F, ws), ws);
    c.require(!mem.member, "z5: x^2*y^2 not in TF for generic t");
    FamilySpec spec;
    spec.expr_text = "x^4+y^4+z^5+t*x^2*y^2";
    spec.F = F;
    spec.domain_note = "|t|<2";
    spec.t_samples = {TSample{Rat(0)}, TSample{Rat(1)}};
    auto out = analyze_family(spec);
    c.require(out.verdict == VerdictKind::NotAnalyticallyTrivialByTangentCriterion,
              "z5: verdict NotAnalyticallyTrivialByTangentCriterion");
    bool stated = false;
    for (const auto& f : out.report.footnotes)
        if (f.find("NOT EVALUATED") != std::string::npos) stated = true;
    c.require(stated, "z5: report states the strong bi-Lipschitz side is NOT EVALUATED");
}

inline void criterion_whitney(Checker& c) {
    auto F = parse_poly("x*y*(x-y)*(x-t*y)");
    auto det = detect_weights(F);
    c.require(det.kind == WeightDetection::Kind::Homogeneous,
              "whitney: detected Homogeneous");
    c.require(det.ws->w == std::vector<std::int64_t>{1, 1}, "whitney: weights (1,1)");
    FamilySpec spec;
    spec.expr_text = "x*y*(x-y)*(x-t*y)";
    spec.F = F;
    spec.domain_note = "0<|t|<1";
    spec.t_samples = {TSample{make_rat(1, 2)}, TSample{make_rat(1, 3)}};
    auto out = analyze_family(spec);
    c.require(out.verdict == VerdictKind::Inconclusive, "whitney: verdict Inconclusive");
    bool homogeneous_reason = false;
    for (const auto& r : out.report.inconclusive_reasons)
        if (r.find("homogeneous") != std::string::npos) homogeneous_reason = true;
    c.require(homogeneous_reason, "whitney: reason is homogeneity");
}

inline void criterion_properties(Checker& c) {
    RootConfig cfg;
    // weighted Euler identity on 200 constructed w-homogeneous polynomials
    {
        SplitMix64 rng{0x65756c6572ULL};
        int cases = 0;
        while (cases < 200) {
            std::int64_t w1 = 1 + std::int64_t(rng.next_below(4));
            std::int64_t w2 = 1 + std::int64_t(rng.next_below(4));
            WeightSystem ws{{VX, VY}, {w1, w2}, 0};
            std::int64_t d = (w1 + w2) * (1 + std::int64_t(rng.next_below(3)));
            auto basis = graded_basis(ws, d).monomials;
            if (basis.size() < 2) continue;
            MPoly<Rat> f;
            for (const Exp& m : basis) {
                std::int64_t coeff = std::int64_t(rng.next_below(7)) - 3;
                Exp mt = m;
                mt[VT] = std::uint32_t(rng.next_below(3));
                f += MPoly<Rat>::monomial(Rat(coeff), mt);
            }
            if (f.is_zero()) continue;
            auto det = detect_weights(f);
            if (!det.ws) continue;
            MPoly<Rat> euler;
            for (std::size_t i = 0; i < det.ws->vars.size(); ++i) {
                Var v = det.ws->vars[i];
                euler += (MPoly<Rat>::variable(v) * derive(f, v)).scaled(Rat(det.ws->w[i]));
            }
            c.require(euler == f.scaled(Rat(det.ws->d)), "property: Euler identity");
            ++cases;
        }
    }
    // Leibniz rule, 200 random pairs
    {
        SplitMix64 rng{0x6c6569626e697aULL};
        auto rand_poly = [&]() {
            MPoly<Rat> p;
            std::size_t n = 1 + rng.next_below(4);
            for (std::size_t i = 0; i < n; ++i)
                p.add_term(Exp{std::uint32_t(rng.next_below(4)),
                               std::uint32_t(rng.next_below(4)), 0,
                               std::uint32_t(rng.next_below(3))},
                           Rat(std::int64_t(rng.next_below(9)) - 4));
            return p;
        };
        for (int i = 0; i < 200; ++i) {
            auto p = rand_poly(), q = rand_poly();
            for (Var v : {VX, VY, VT})
                c.require(derive(p * q, v) == derive(p, v) * q + p * derive(q, v),
                          "property: Leibniz rule");
        }
    }
    // membership certificates resubstitute exactly on 200 constructed members
    {
        auto F = parse_poly("x^3 + y^6 - 3*t^2*x*y^4");
        auto tf = tf_gens(F, kW21);
        SplitMix64 rng{0x63657274ULL};
        for (int iter = 0; iter < 200; ++iter) {
            std::int64_t e = 6 + std::int64_t(rng.next_below(4));
            MPoly<Rat> target;
            for (std::size_t g = 0; g < tf.gens.size(); ++g) {
                std::int64_t delta = e - tf.wdeg[g];
                if (delta < 0 || rng.next_below(2) == 0) continue;
                auto basis = graded_basis(kW21, delta).monomials;
                if (basis.empty()) continue;
                Exp m = basis[rng.next_below(basis.size())];
                m[VT] += std::uint32_t(rng.next_below(3));
                target += MPoly<Rat>::monomial(Rat(std::int64_t(rng.next_below(7)) - 3),
                                               m) *
                          tf.gens[g];
            }
            bool ok = true;
            try {
                // graded_membership_qt verifies resubstitution internally and
                // throws InternalError on any mismatch
                ok = graded_membership_qt(target, tf, kW21).member;
            } catch (const InternalError&) {
                ok = false;
            }
            c.require(ok, "property: certificate resubstitution");
        }
    }
    // branch residual certification across the two-variable corpus
    {
        int residual_checks = 0;
        for (const auto& spec : corpus()) {
            auto det = detect_weights(spec.F);
            if (!det.ws || det.ws->nvars() != 2 ||
                det.kind != WeightDetection::Kind::WeightedHomogeneous)
                continue;
            WeightSystem ws = *det.ws;
            if (ws.w[0] < ws.w[1]) continue;
            SplitMix64 rng{0x7265736964ULL};
            for (int i = 0; i < 12; ++i) {
                Rat t0 = make_rat(1 + std::int64_t(rng.next_below(20)),
                                  3 + std::int64_t(rng.next_below(20)));
                if (rng.next_below(2)) t0 = -t0;
                auto d = branch_roots(spec.F, ws, t0, cfg);
                auto fx = substitute_value(polar_poly(spec.F), VT, t0);
                for (const auto& b : d.branches) {
                    for (const GaussRat& s : {GaussRat(Rat(1)), GaussRat(make_rat(1, 3)),
                                              GaussRat(Rat(0), Rat(1))}) {
                        CBall x = ball_scale(b.a.enclosure(), gauss_pow(s, d.w1));
                        CBall y{gauss_pow(s, d.w2)};
                        c.require(eval_mpoly_ball(fx, x, y).contains_zero(),
                                  "property: branch residual certification");
                        ++residual_checks;
                    }
                }
            }
        }
        c.require(residual_checks >= 200, "property: enough residual checks ran");
    }
    // k scale-invariance on 200 random (family, scale, t0) triples
    {
        SplitMix64 rng{0x7363616c65ULL};
        std::vector<MPoly<Rat>> fams = {parse_poly("x^3 + y^6 - 3*t^2*x*y^4"),
                                        parse_poly("x^3 + 3*t*x*y^4"),
                                        parse_poly("x^3 + y^6 + t*x*y^4")};
        for (int i = 0; i < 200; ++i) {
            const auto& F = fams[rng.next_below(fams.size())];
            Rat scale = Rat(std::int64_t(rng.next_below(9)) - 4);
            if (scale == 0) scale = Rat(5);
            Rat t0 = make_rat(1 + std::int64_t(rng.next_below(10)),
                              2 + std::int64_t(rng.next_below(10)));
            auto da = branch_roots(F, kW21, t0, cfg);
            auto db = branch_roots(F.scaled(scale), kW21, t0, cfg);
            auto ka = k_values(F, kW21, da, t0, cfg);
            auto kb = k_values(F.scaled(scale), kW21, db, t0, cfg);
            bool same = ka.entries.size() == kb.entries.size();
            for (std::size_t j = 0; same && j < ka.entries.size(); ++j) {
                const auto& u = ka.entries[j].k;
                const auto& v = kb.entries[j].k;
                if (u.kind != v.kind) same = false;
                else if (u.is_exact()) same = u.exact == v.exact;
                else if (u.kind == KValue<Rat>::Kind::Quad) same = u.quad == v.quad;
                else same = u.ball.c == v.ball.c;
            }
            c.require(same && ka.all_equal() == kb.all_equal(),
                      "property: k scale-invariance");
        }
    }
    // root count equals degree on 200 structured random polynomials
    {
        SplitMix64 rng{0x726f6f74636e74ULL};
        int cases = 0;
        while (cases < 200) {
            UniPoly<Rat> f = UniPoly<Rat>::one();
            std::size_t nf = 1 + rng.next_below(3);
            for (std::size_t i = 0; i < nf; ++i) {
                std::vector<Rat> cs(2 + rng.next_below(2));
                for (auto& cc : cs) cc = Rat(std::int64_t(rng.next_below(7)) - 3);
                cs.back() = Rat(1 + std::int64_t(rng.next_below(3)));
                UniPoly<Rat> factor(std::move(cs));
                int power = 1 + int(rng.next_below(2));
                for (int p = 0; p < power; ++p) f *= factor;
            }
            if (f.deg() < 1) continue;
            auto roots = isolate_roots(f, cfg);
            std::int64_t total = 0;
            for (const auto& r : roots) total += r.multiplicity;
            c.require(total == f.deg(), "property: root count equals degree");
            ++cases;
        }
    }
}

inline void criterion_numeric_control(Checker& c) {
    auto F = parse_poly("x^3 + y^6 + t*x*y^4");
    RootConfig cfg;
    auto d3 = branch_roots(F, kW21, Rat(-3), cfg);
    c.require(d3.branches.size() == 2 && d3.branches[0].a.is_exact_value() &&
                  d3.branches[0].a.exact == Rat(1) &&
                  d3.branches[1].a.exact == Rat(-1),
              "numeric: exact branches {1, -1} at t=-3");
    auto d1 = branch_roots(F, kW21, Rat(1), cfg);
    c.require(d1.branches.size() == 2, "numeric: two branches at t=1");
    for (const auto& b : d1.branches) {
        c.require(!b.a.is_exact_value() && b.a.ball.r <= rat_pow2(-40),
                  "numeric: certified ball branches with radius <= 2^-40");
        // the branches square to -1/3
        CBall sq = ball_mul(b.a.enclosure(), b.a.enclosure());
        c.require(ball_sub(sq, CBall(GaussRat(make_rat(-1, 3)))).contains_zero(),
                  "numeric: branch squares to -1/3");
    }
    auto k1 = k_values(F, kW21, d1, Rat(1), cfg);
    c.require(k1.equality == KReport<Rat>::Equality::Unequal,
              "numeric: k-inequality at t=1");
    CBall diff =
        ball_sub(k1.entries[0].k.enclosure(), k1.entries[1].k.enclosure());
    c.require(diff.excludes_zero(), "numeric: k difference ball excludes zero");
}

}  // namespace checks_detail

/// Runs every pinned acceptance expectation; `germlab corpus` fails (exit
/// nonzero) whenever one of these deviates.
inline std::vector<CriterionResult> run_acceptance_checks() {
    using namespace checks_detail;
    struct Entry {
        int id;
        std::string desc;
        std::function<void(Checker&)> fn;
    };
    std::vector<Entry> entries = {
        {1, "HP family: exact branches, k-values, coefficients, verdict, comparison",
         criterion_hp_family},
        {2, "positive control x^3+(1+t)y^7: certificate, exceptional t, Milnor 12",
         criterion_binomial_control},
        {3, "positive control x^3+3txy^4: k = 1/(4t), reduced path with R = 0",
         criterion_monomial_control},
        {4, "Milnor/codimension suite with both methods agreeing",
         criterion_milnor_suite},
        {5, "three-variable example: membership fails, strong side NOT EVALUATED",
         criterion_z5_example},
        {6, "Whitney family: Homogeneous (1,1), verdict Inconclusive",
         criterion_whitney},
        {7, "property suites (>= 200 cases each): Euler, Leibniz, certificates, "
            "residuals, scale-invariance, root counts",
         criterion_properties},
        {8, "numeric control: exact branches at t=-3, certified balls and certified "
            "k-inequality at t=1",
         criterion_numeric_control},
    };
    std::vector<CriterionResult> out;
    for (auto& e : entries) {
        Checker checker;
        std::string crash;
        try {
            e.fn(checker);
        } catch (const std::exception& ex) {
            crash = std::string("exception: ") + ex.what();
        }
        CriterionResult r;
        r.id = e.id;
        r.description = e.desc;
        r.passed = crash.empty() && checker.passed();
        r.detail = crash.empty() ? checker.detail() : crash;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace germlab
