#pragma once

// Implementation of analyze_family and the built-in corpus. Split from
// verdict.hpp only to keep the interface readable.

#include "germlab/parse.hpp"

namespace germlab {

namespace detail {

inline std::vector<Rat> deterministic_domain_samples(const DomainBounds& dom,
                                                     std::size_t count,
                                                     const std::vector<Rat>& avoid) {
    std::vector<Rat> out;
    if (!dom.parsed) return out;
    SplitMix64 rng{0x73616d706c6573ULL};  // fixed stream: same samples every run
    while (out.size() < count) {
        std::uint64_t k = 1 + rng.next_below(63);
        bool negative = rng.next_below(2) == 1;
        Rat cand = dom.bound * make_rat(std::int64_t(k), 64);
        if (negative) cand = -cand;
        bool taken = false;
        for (const auto& a : avoid)
            if (a == cand) taken = true;
        for (const auto& a : out)
            if (a == cand) taken = true;
        if (!taken) out.push_back(cand);
    }
    return out;
}

inline void fill_param_membership_doc(MembershipDoc& doc, const ParamMembership& mem,
                                      const IdealGens<Rat>& tf, const MPoly<Rat>& target) {
    doc.computed = true;
    doc.member = mem.member;
    doc.target = to_string(target);
    for (std::size_t g = 0; g < tf.gens.size(); ++g) {
        doc.generator_labels.push_back(tf.labels[g]);
        doc.generators.push_back(to_string(tf.gens[g]));
        doc.multiplier_num.push_back(to_string(mem.multiplier_num[g]));
        doc.multiplier_den.push_back(to_string(mem.multiplier_den[g], "t"));
    }
    for (const auto& r : mem.exceptional.rational_roots)
        doc.exceptional_rational.push_back(rat_to_string(r));
    for (const auto& f : mem.exceptional.residual_factors)
        doc.exceptional_conditions.push_back(to_string(f, "t"));
    if (!mem.member) {
        doc.residual_num = to_string(mem.residual_num);
        doc.residual_den = to_string(mem.residual_den, "t");
    }
}

}  // namespace detail

inline AnalysisOutcome analyze_family(const FamilySpec& spec) {
    AnalysisOutcome out;
    ReportDocument& doc = out.report;
    doc.command = "analyze";
    doc.input_expression = spec.expr_text.empty() ? to_string(spec.F) : spec.expr_text;
    doc.domain_note = spec.domain_note;

    const MPoly<Rat>& F0 = spec.F;
    if (F0.is_zero()) throw InputError("the zero polynomial is not a function-germ");
    auto spatial = F0.spatial_vars();
    if (spatial.empty())
        throw InputError("the germ must involve at least one of x, y, z");
    for (std::size_t i = 0; i < spatial.size(); ++i)
        if (spatial[i] != Var(int(i)))
            throw InputError("germ variables must be x, y, z in that order "
                             "(use x for one variable, x and y for two)");
    doc.original_canonical = to_string(F0);

    const bool t_dependent = F0.depends_on(VT);

    // weights
    WeightDetection det = detect_weights(F0);
    if (det.kind == WeightDetection::Kind::NotWeightedHomogeneous)
        throw InputError("the family is not weighted homogeneous; "
                         "the criteria implemented here do not apply");
    WeightSystem ws = *det.ws;
    bool homogeneous = det.kind == WeightDetection::Kind::Homogeneous;
    bool swapped = false;
    MPoly<Rat> F = F0;
    if (!homogeneous && ws.nvars() == 2 && ws.w[0] < ws.w[1]) {
        F = swap_xy(F0);
        std::swap(ws.w[0], ws.w[1]);
        swapped = true;
    }
    doc.canonical = to_string(F);
    for (Var v : ws.vars) doc.weights.vars.push_back(std::string(1, kVarNames[v]));
    doc.weights.w = std::vector<long long>(ws.w.begin(), ws.w.end());
    doc.weights.d = ws.d;
    doc.weights.homogeneous = homogeneous;
    doc.weights.ambiguous = det.ambiguous;
    doc.weights.swapped = swapped;
    if (swapped)
        doc.footnotes.push_back(
            "the k-criterion is applied under the convention w1 > w2 (polar taken in "
            "the variable of larger weight); the opposite ordering also appears in "
            "statements of this criterion elsewhere. The input had w1 < w2, so x and y "
            "were swapped; all reported data uses the swapped coordinates");
    if (det.ambiguous)
        doc.footnotes.push_back(
            "the grading is not unique for this polynomial; the lexicographically "
            "smallest primitive positive weight vector was chosen");

    const bool do_polar = !homogeneous && ws.nvars() == 2;
    DomainBounds dom = parse_domain(spec.domain_note);
    if (!spec.domain_note.empty() && !dom.parsed)
        doc.footnotes.push_back(
            "the domain note could not be parsed as a simple |t| bound; samples were "
            "not checked against it and no automatic samples were added");

    // assemble the sample list: user samples first, then deterministic extras
    std::vector<std::pair<TSample, bool>> samples;  // (value, user_sample)
    std::vector<Rat> rational_seen;
    for (const auto& s : spec.t_samples) {
        if (std::holds_alternative<Rat>(s)) {
            const Rat& r = std::get<Rat>(s);
            if (!sample_in_domain(dom, GaussRat(r)))
                throw InputError("sample t = " + rat_to_string(r) +
                                 " lies outside the declared domain " + spec.domain_note);
            rational_seen.push_back(r);
        } else if (!sample_in_domain(dom, std::get<GaussRat>(s))) {
            throw InputError("sample t = " + gauss_to_string(std::get<GaussRat>(s)) +
                             " lies outside the declared domain " + spec.domain_note);
        }
        samples.emplace_back(s, true);
    }
    if (do_polar && t_dependent && !homogeneous) {
        for (const Rat& extra :
             detail::deterministic_domain_samples(dom, 3, rational_seen))
            samples.emplace_back(TSample{extra}, false);
    }

    // per-sample analysis
    std::vector<SampleOutcome> outcomes;
    for (const auto& [sample, user] : samples) {
        SampleOutcome so = std::visit(
            [&](const auto& t0) {
                return detail::analyze_sample(F, ws, do_polar, t0, spec.cfg, user);
            },
            sample);
        doc.samples.push_back(so.doc);
        if (so.reduced) doc.reduced_paths.push_back(*so.reduced);
        outcomes.push_back(std::move(so));
    }

    // parametric membership of F_t in TF over Q(t)
    ParamMembership membership;
    bool membership_computed = false;
    IdealGens<Rat> tf;
    MPoly<Rat> target = derive(F, VT);
    if (t_dependent) {
        tf = tf_gens(F, ws);
        membership = graded_membership_qt(target, tf, ws);
        membership_computed = true;
        detail::fill_param_membership_doc(doc.membership_generic, membership, tf, target);

        // re-test membership at every rational exceptional value individually
        for (const Rat& r : membership.exceptional.rational_roots) {
            RetestDoc rt;
            rt.t0 = rat_to_string(r);
            rt.inside_domain = sample_in_domain(dom, GaussRat(r));
            try {
                MPoly<Rat> fr = substitute_value(F, VT, r);
                MPoly<Rat> tr = substitute_value(target, VT, r);
                rt.isolated = !fr.is_zero() && isolated_check(fr, ws);
                rt.member = graded_membership_at(tr, tf_gens(fr, ws), ws).member;
            } catch (const Error&) {
                rt.member = false;
                rt.isolated = false;
            }
            doc.membership_generic.retests.push_back(rt);
        }
        if (!membership.exceptional.residual_factors.empty())
            doc.footnotes.push_back(
                "non-rational exceptional parameter values are reported symbolically "
                "(as polynomial conditions) and are not re-tested individually");

        // generic member verdicts must reproduce at fresh in-domain samples
        if (membership.member) {
            std::vector<Rat> avoid = rational_seen;
            for (const Rat& r : membership.exceptional.rational_roots)
                avoid.push_back(r);
            for (const Rat& extra :
                 detail::deterministic_domain_samples(dom, 3, avoid)) {
                MPoly<Rat> fr = substitute_value(F, VT, extra);
                if (fr.is_zero()) continue;
                bool ok =
                    graded_membership_at(substitute_value(target, VT, extra),
                                         tf_gens(fr, ws), ws)
                        .member;
                if (!ok)
                    throw InternalError(
                        "generic membership failed to reproduce at t = " +
                        rat_to_string(extra));
                doc.membership_generic.revalidation_samples.push_back(
                    rat_to_string(extra));
            }
        }
    }

    // pairwise member comparisons at the user-supplied samples
    if (do_polar) {
        for (std::size_t i = 0; i < spec.t_samples.size(); ++i) {
            for (std::size_t j = i + 1; j < spec.t_samples.size(); ++j) {
                ComparisonDoc cd;
                auto text_of = [](const TSample& s) {
                    return std::holds_alternative<Rat>(s)
                               ? rat_to_string(std::get<Rat>(s))
                               : gauss_to_string(std::get<GaussRat>(s));
                };
                cd.t0_a = text_of(spec.t_samples[i]);
                cd.t0_b = text_of(spec.t_samples[j]);
                try {
                    ComparisonReport cr = std::visit(
                        [&](const auto& ta, const auto& tb) {
                            return compare_members(F, ws, ta, tb, spec.cfg);
                        },
                        spec.t_samples[i], spec.t_samples[j]);
                    cd.verdict = cr.verdict == ComparisonVerdict::Distinguished
                                     ? "DISTINGUISHED"
                                     : "NOT_DISTINGUISHED";
                    cd.detail = cr.detail;
                } catch (const Error& e) {
                    cd.verdict = "NOT_DISTINGUISHED";
                    cd.detail = std::string("comparison not performed: ") + e.what();
                }
                doc.comparisons.push_back(std::move(cd));
            }
        }
    }

    // verdict assembly
    bool any_valid = false, any_k_unequal = false, any_k_undecided = false;
    bool any_axis = false, any_policy = false, any_reduced_failed = false;
    std::string witness_text;
    for (const auto& so : outcomes) {
        if (so.valid) any_valid = true;
        if (so.k_unequal && witness_text.empty()) witness_text = so.k_witness_text;
        any_k_unequal = any_k_unequal || so.k_unequal;
        any_k_undecided = any_k_undecided || so.k_undecided;
        any_axis = any_axis || so.axis_excluded;
        any_policy = any_policy || so.used_ball_policy;
        any_reduced_failed = any_reduced_failed || so.reduced_failed;
    }

    doc.footnotes.push_back(
        "strong bi-Lipschitz triviality itself is NOT EVALUATED: this tool decides "
        "computable criteria only (a necessary k-condition and a sufficient "
        "ideal-membership condition); existence of Lipschitz vector fields is outside "
        "its scope");
    if (!spec.domain_note.empty())
        doc.footnotes.push_back(
            "the declared domain and its connectivity are taken as user assertions "
            "and are not verified");
    if (any_axis)
        doc.footnotes.push_back(
            "the polar set has a component along {y = 0}; such components are not "
            "representable in the branch parametrization, were excluded from the "
            "k-condition, and make k-based conclusions conditional");
    if (any_policy)
        doc.footnotes.push_back(
            "some k-value equalities were decided by the ball policy (difference "
            "contains zero and shrinks under doubled precision), not by exact "
            "arithmetic");
    if (any_k_undecided)
        doc.footnotes.push_back(
            "some k comparisons remained undecided at the working precision");
    bool k_held_everywhere = do_polar && any_valid && !any_k_unequal && !any_k_undecided;
    for (const auto& so : outcomes)
        if (so.valid && so.doc.k.computed && !so.k_all_equal) k_held_everywhere = false;
    if (k_held_everywhere && t_dependent)
        doc.footnotes.push_back(
            "the k-condition held at every sampled parameter value; sample equality "
            "is evidence only, and no claim is made for unsampled t");
    if (any_reduced_failed)
        doc.footnotes.push_back(
            "the reduced-polar pathway failed at some sample although the k-condition "
            "held there; the verdict rests on the ideal-membership criterion alone");
    if (ws.nvars() == 3)
        doc.footnotes.push_back(
            "n = 3: the k-condition machinery applies to two-variable germs only; "
            "furthermore the radical hypothesis required by the three-variable "
            "extension of the reduced pathway is UNCHECKED");

    if (!t_dependent) {
        out.verdict = VerdictKind::AnalyticallyTrivialGeneric;
        doc.verdict_details.push_back(
            "the family is constant in t; all members are identical");
    } else if (homogeneous) {
        out.verdict = VerdictKind::Inconclusive;
        doc.inconclusive_reasons.push_back(
            "homogeneous weights (w_1 = ... = w_n): the implemented criteria "
            "require weighted homogeneous but not homogeneous germs");
        if (membership_computed)
            doc.footnotes.push_back(
                "the ideal-membership sub-report is informational only; the verdict "
                "is withheld because the homogeneous case is outside the criteria's "
                "hypotheses");
    } else if (!any_valid) {
        out.verdict = VerdictKind::Inconclusive;
        doc.inconclusive_reasons.push_back(
            "no sampled member satisfied the isolated-singularity hypothesis");
    } else if (any_k_unequal) {
        if (membership_computed && membership.member)
            throw InternalError(
                "membership succeeded while the k-condition failed exactly; "
                "these criteria cannot disagree on a sound implementation");
        out.verdict = VerdictKind::FailsKCondition;
        doc.verdict_details.push_back(
            "the k-values along the polar branches differ at a sampled parameter "
            "value; the necessary condition for strong bi-Lipschitz triviality "
            "fails, and in particular the family is not analytically trivial");
        if (!witness_text.empty()) doc.verdict_details.push_back(witness_text);
    } else if (membership_computed && membership.member) {
        out.verdict = VerdictKind::AnalyticallyTrivialGeneric;
        doc.verdict_details.push_back(
            "F_t lies in the ideal TF = (x_i dF/dx_j) over Q(t): members at any two "
            "parameter values outside the exceptional set are analytically "
            "equivalent");
        for (const auto& r : doc.membership_generic.exceptional_rational)
            doc.verdict_details.push_back(
                "exceptional t = " + r +
                (sample_in_domain(dom, GaussRat(*rat_from_string(r)))
                     ? " (inside the declared domain; see re-test)"
                     : " (outside the declared domain)"));
    } else if (membership_computed && !membership.member) {
        out.verdict = VerdictKind::NotAnalyticallyTrivialByTangentCriterion;
        doc.verdict_details.push_back(
            "F_t is not in the tangent-space ideal TF for generic t: the velocity of "
            "the family leaves the orbit tangent space, so the family is not "
            "analytically trivial (the members are pairwise inequivalent near "
            "generic parameters)");
        doc.verdict_details.push_back(
            "residual evidence: " + doc.membership_generic.residual_num +
            (doc.membership_generic.residual_den == "1"
                 ? ""
                 : " over denominator " + doc.membership_generic.residual_den));
        if (any_k_undecided)
            doc.inconclusive_reasons.push_back(
                "undecided ball comparisons in the k-condition (reported, not "
                "verdict-driving)");
    } else {
        out.verdict = VerdictKind::Inconclusive;
        doc.inconclusive_reasons.push_back("no decisive criterion applied");
    }

    doc.verdict = verdict_name(out.verdict);
    return out;
}

inline std::vector<FamilySpec> corpus() {
    auto mk = [](std::string name, std::string expr, std::string domain,
                 std::initializer_list<const char*> ts) {
        FamilySpec spec;
        spec.name = std::move(name);
        spec.expr_text = expr;
        spec.F = parse_poly(expr);
        spec.domain_note = std::move(domain);
        for (const char* t : ts) spec.t_samples.push_back(TSample{*rat_from_string(t)});
        return spec;
    };
    std::vector<FamilySpec> out;
    out.push_back(mk("whitney-quartic", "x*y*(x-y)*(x-t*y)", "0<|t|<1", {"1/2", "1/3"}));
    out.push_back(
        mk("henry-parusinski", "x^3 + y^6 - 3*t^2*x*y^4", "0<|t|<1/2", {"1/4", "1/3"}));
    out.push_back(mk("example-z5", "x^4+y^4+z^5+t*x^2*y^2", "|t|<2", {"0", "1"}));
    out.push_back(mk("binomial-control", "x^3 + (1+t)*y^7", "|t|<2", {"0", "1"}));
    out.push_back(mk("monomial-control", "x^3 + 3*t*x*y^4", "0<|t|<1", {"1/2", "1/4"}));
    out.push_back(
        mk("numeric-control", "x^3 + y^6 + t*x*y^4", "|t|<4", {"-3", "1"}));
    return out;
}

}  // namespace germlab
