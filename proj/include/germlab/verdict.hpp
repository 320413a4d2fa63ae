#pragma once

#include <optional>
#include <variant>

#include "germlab/invariants.hpp"
#include "germlab/localalg.hpp"
#include "germlab/report.hpp"

namespace germlab {

using TSample = std::variant<Rat, GaussRat>;

struct FamilySpec {
    MPoly<Rat> F;
    std::string expr_text;
    std::string name;
    std::string domain_note;
    std::vector<TSample> t_samples;
    RootConfig cfg;
};

enum class VerdictKind {
    AnalyticallyTrivialGeneric,
    FailsKCondition,
    NotAnalyticallyTrivialByTangentCriterion,
    Inconclusive,
};

inline std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::AnalyticallyTrivialGeneric: return "AnalyticallyTrivialGeneric";
        case VerdictKind::FailsKCondition: return "FailsKCondition";
        case VerdictKind::NotAnalyticallyTrivialByTangentCriterion:
            return "NotAnalyticallyTrivialByTangentCriterion";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct AnalysisOutcome {
    VerdictKind verdict = VerdictKind::Inconclusive;
    ReportDocument report;
};

// --- reduced-polar pathway ------------------------------------------------------

/// Outcome of solving F_t - k y F_y = u F_x at a fixed parameter value, with
/// u ranging over the w-homogeneous forms of weighted degree w1 (and k over
/// the base field when not supplied). Solvability certifies that F_t lies in
/// TF at this t; failure with a reduced polar is reported, never hidden.
template <class K>
struct ReducedPathResult {
    enum class Status { Success, NotApplicable, Failed } status = Status::NotApplicable;
    std::string reason;
    std::optional<K> k_common;
    MPoly<K> cofactor_u;
    MPoly<K> residual;  // F_t - k y F_y at t0
    bool u_vanishes_at_origin = true;
};

template <class K>
ReducedPathResult<K> reduced_path_check(const MPoly<Rat>& F, const WeightSystem& ws,
                                        std::optional<K> k_exact, const K& t0,
                                        const PolarDecomposition<K>& decomp) {
    ReducedPathResult<K> out;
    if (!decomp.squarefree) {
        out.reason = "F_x is not squarefree in x; the reduced pathway does not apply";
        return out;
    }
    if (decomp.x_axis_order >= 2) {
        out.reason = "the polar has a multiple {y=0} component; F_x is not reduced";
        return out;
    }
    MPoly<K> ft = substitute_value(derive(F, VT), VT, t0);
    MPoly<K> fy = substitute_value(derive(F, VY), VT, t0);
    MPoly<K> fx = substitute_value(derive(F, VX), VT, t0);
    MPoly<K> yfy = MPoly<K>::variable(VY) * fy;

    auto rows = graded_basis(ws, ws.d).monomials;
    auto ubasis = graded_basis(ws, ws.w[0]).monomials;
    auto coeff_of = [](const MPoly<K>& p, const Exp& m) {
        auto it = p.terms().find(m);
        return it == p.terms().end() ? K(0) : it->second;
    };

    // columns: [k when unknown] then the u-coefficients
    bool solve_k = !k_exact.has_value();
    std::size_t ncols = ubasis.size() + (solve_k ? 1 : 0);
    Mat<K> a(rows.size(), std::vector<K>(ncols, K(0)));
    std::vector<K> b(rows.size(), K(0));
    MPoly<K> rhs = ft;
    if (!solve_k) rhs -= yfy.scaled(*k_exact);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        b[r] = coeff_of(rhs, rows[r]);
        std::size_t c = 0;
        if (solve_k) a[r][c++] = coeff_of(yfy, rows[r]);
        for (const Exp& m : ubasis)
            a[r][c++] = coeff_of(MPoly<K>::monomial(K(1), m) * fx, rows[r]);
    }
    LinearSolution<K> sol = solve_field(a, b);
    if (!sol.consistent) {
        out.status = ReducedPathResult<K>::Status::Failed;
        out.reason = "no cofactor u (with k in the base field) solves "
                     "F_t - k*y*F_y = u*F_x at this t";
        return out;
    }
    std::size_t c = 0;
    K k = solve_k ? sol.x[c++] : *k_exact;
    MPoly<K> u;
    for (const Exp& m : ubasis) u += MPoly<K>::monomial(sol.x[c++], m);
    out.status = ReducedPathResult<K>::Status::Success;
    out.k_common = k;
    out.cofactor_u = u;
    out.residual = ft - yfy.scaled(k);
    if (!(out.residual == u * fx))
        throw InternalError("reduced-path solution failed exact resubstitution");
    // u is a combination of weighted-degree-w1 monomials and w1 > 0
    out.u_vanishes_at_origin = u.terms().find(Exp{0, 0, 0, 0}) == u.terms().end();
    return out;
}

// --- domain notes ----------------------------------------------------------------

struct DomainBounds {
    bool parsed = false;
    bool exclude_zero = false;
    Rat bound{0};  // |t| < bound
};

/// Understands the simple forms "0<|t|<B" and "|t|<B" (whitespace ignored).
inline DomainBounds parse_domain(const std::string& note) {
    DomainBounds out;
    std::string s;
    for (char c : note)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return out;
    if (s.rfind("0<", 0) == 0) {
        out.exclude_zero = true;
        s = s.substr(2);
    }
    if (s.rfind("|t|<", 0) != 0) return out;
    auto b = rat_from_string(s.substr(4));
    if (!b || *b <= 0) return out;
    out.bound = *b;
    out.parsed = true;
    return out;
}

inline bool sample_in_domain(const DomainBounds& dom, const GaussRat& t0) {
    if (!dom.parsed) return true;  // unverifiable: accepted as a user assertion
    Rat n = t0.norm();
    if (n >= dom.bound * dom.bound) return false;
    if (dom.exclude_zero && n == 0) return false;
    return true;
}

// --- document helpers --------------------------------------------------------------

namespace detail {

inline ValueDoc value_doc_rat(const Rat& v) {
    ValueDoc out;
    out.type = "exact";
    out.value = rat_to_string(v);
    return out;
}

inline ValueDoc value_doc_ball(const CBall& b) {
    ValueDoc out;
    out.type = "ball";
    out.re = rat_to_string(b.c.re);
    out.im = rat_to_string(b.c.im);
    out.radius = rat_to_string(b.r);
    return out;
}

template <class K>
std::string quad_text(const QuadSpec<K>& q) {
    UniPoly<K> m(std::vector<K>{q.r, q.p, K(1)});
    return to_string(m, "a");
}

template <class K>
ValueDoc value_doc_coeff(const AlgebraicCoeff<K>& a) {
    if (a.is_exact_value()) {
        if constexpr (std::is_same_v<K, Rat>) {
            return value_doc_rat(a.exact);
        } else {
            if (a.exact.is_real()) return value_doc_rat(a.exact.re);
            return value_doc_ball(CBall(a.exact));  // exact complex: radius 0
        }
    }
    ValueDoc out = value_doc_ball(a.ball);
    if (a.quad) out.minpoly = quad_text(*a.quad);
    return out;
}

template <class K>
ValueDoc value_doc_kvalue(const KValue<K>& v) {
    using Kind = typename KValue<K>::Kind;
    if (v.kind == Kind::Exact) {
        if constexpr (std::is_same_v<K, Rat>) {
            return value_doc_rat(v.exact);
        } else {
            if (v.exact.is_real()) return value_doc_rat(v.exact.re);
            return value_doc_ball(CBall(v.exact));
        }
    }
    ValueDoc out = value_doc_ball(v.ball);
    if (v.kind == Kind::Quad) out.minpoly = quad_text(minimal_quadratic(*v.quad));
    return out;
}

template <class K>
std::string sample_text(const K& t0) {
    if constexpr (std::is_same_v<K, Rat>) {
        return rat_to_string(t0);
    } else {
        return gauss_to_string(t0);
    }
}

}  // namespace detail

// --- per-sample analysis --------------------------------------------------------

struct SampleOutcome {
    SampleDoc doc;
    bool valid = false;
    bool k_unequal = false;    // exact or certified inequality
    bool k_undecided = false;
    bool k_all_equal = false;
    bool axis_excluded = false;
    bool used_ball_policy = false;
    bool reduced_failed = false;
    std::string k_witness_text;
    std::optional<ReducedPathDoc> reduced;
};

namespace detail {

template <class K>
SampleOutcome analyze_sample(const MPoly<Rat>& F, const WeightSystem& ws, bool do_polar,
                             const K& t0, const RootConfig& cfg, bool user_sample) {
    SampleOutcome out;
    out.doc.t0 = sample_text(t0);
    out.doc.complex_t0 = !std::is_same_v<K, Rat>;
    out.doc.user_sample = user_sample;

    MPoly<K> f0 = substitute_value(F, VT, t0);
    if (f0.is_zero()) {
        out.doc.error = "the family member at this parameter value is zero";
        return out;
    }
    out.doc.isolated = isolated_check(f0, ws);
    if (out.doc.isolated) {
        MilnorData md = milnor(f0, ws);
        out.doc.milnor.computed = true;
        out.doc.milnor.mu = md.mu;
        out.doc.milnor.method_dimension = md.method_dimension;
        out.doc.milnor.method_formula = md.method_formula;
        out.doc.milnor.orbit_codim = md.orbit_codim;
    } else {
        out.doc.milnor.error = "non-isolated singularity";
        out.doc.error = "non-isolated singularity at this parameter value";
        return out;
    }
    out.valid = true;

    if (do_polar) {
        PolarDecomposition<K> decomp = branch_roots(F, ws, t0, cfg);
        out.doc.polar.computed = true;
        out.doc.polar.degenerate = decomp.degenerate;
        out.doc.polar.x_axis_order = decomp.x_axis_order;
        out.doc.polar.y_axis_in_branches = decomp.y_axis_in_branches;
        out.doc.polar.squarefree = decomp.squarefree;
        out.doc.polar.p = to_string(decomp.p, "a");
        for (const auto& b : decomp.branches)
            out.doc.polar.branches.push_back(
                BranchDoc{value_doc_coeff(b.a), b.multiplicity, b.clustered});
        out.axis_excluded = decomp.x_axis_order > 0;

        if (!decomp.degenerate) {
            KReport<K> kr = k_values(F, ws, decomp, t0, cfg);
            out.doc.k.computed = true;
            out.doc.k.excluded_axis = kr.excluded_axis;
            out.doc.k.used_ball_policy = kr.used_ball_policy;
            out.doc.k.notes = kr.notes;
            for (const auto& e : kr.entries) {
                KEntryDoc ke;
                ke.a = value_doc_coeff(e.a);
                if (!e.degenerate_fy && !e.undecidable_fy) ke.k = value_doc_kvalue(e.k);
                ke.degenerate_fy = e.degenerate_fy;
                out.doc.k.entries.push_back(std::move(ke));
            }
            switch (kr.equality) {
                case KReport<K>::Equality::AllEqual:
                    out.doc.k.equality = "all_equal";
                    out.k_all_equal = true;
                    break;
                case KReport<K>::Equality::Vacuous:
                    out.doc.k.equality = "vacuous";
                    out.k_all_equal = true;
                    break;
                case KReport<K>::Equality::Unequal:
                    out.doc.k.equality = "unequal";
                    out.k_unequal = true;
                    break;
                case KReport<K>::Equality::Undecided:
                    out.doc.k.equality = "undecided";
                    out.k_undecided = true;
                    break;
            }
            out.used_ball_policy = kr.used_ball_policy;
            if (kr.witness) {
                out.doc.k.witness_i = static_cast<long long>(kr.witness->first);
                out.doc.k.witness_j = static_cast<long long>(kr.witness->second);
                const auto& wi = kr.entries[kr.witness->first];
                const auto& wj = kr.entries[kr.witness->second];
                out.k_witness_text =
                    "t = " + out.doc.t0 + ": k(" + value_str(value_doc_coeff(wi.a)) +
                    ") = " + value_str(value_doc_kvalue(wi.k)) + "  differs from  k(" +
                    value_str(value_doc_coeff(wj.a)) + ") = " +
                    value_str(value_doc_kvalue(wj.k));
            }

            HPReport<K> hp = hp_coefficients(F, ws, decomp, t0, cfg);
            out.doc.hp.computed = true;
            for (const auto& e : hp.entries) {
                HPEntryDoc he;
                he.a = value_doc_coeff(e.a);
                he.c = value_doc_kvalue(e.c);
                he.certified_zero = e.certified_zero;
                he.possibly_zero = e.possibly_zero;
                out.doc.hp.entries.push_back(std::move(he));
            }
            for (const auto& r : hp.ratios)
                out.doc.hp.ratios.push_back(value_doc_kvalue(r));
            out.doc.hp.base_index =
                hp.base_index ? static_cast<long long>(*hp.base_index) : -1;
            out.doc.hp.zero_count = static_cast<long long>(hp.zero_count);
            out.doc.hp.possibly_zero_count =
                static_cast<long long>(hp.possibly_zero_count);

            // reduced pathway, with the exact common k when one exists
            ReducedPathDoc rp;
            rp.t0 = out.doc.t0;
            if (!out.k_all_equal) {
                rp.status = "not_applicable";
                rp.reason = out.k_unequal ? "the k-condition failed at this t"
                                          : "the k-condition is undecided at this t";
            } else {
                std::optional<K> k_exact;
                bool quad_common = false;
                for (const auto& e : kr.entries) {
                    if (e.k.is_exact()) {
                        k_exact = e.k.exact;
                        break;
                    }
                    if (e.k.kind == KValue<K>::Kind::Quad) quad_common = true;
                }
                if (!k_exact && quad_common) {
                    rp.status = "not_applicable";
                    rp.reason = "the common k is irrational; cofactor solving over "
                                "extension fields is not attempted";
                } else {
                    auto res = reduced_path_check(F, ws, k_exact, t0, decomp);
                    switch (res.status) {
                        case ReducedPathResult<K>::Status::Success: {
                            rp.status = "success";
                            rp.k_common = sample_text(*res.k_common);
                            rp.cofactor_u = to_string(res.cofactor_u);
                            rp.residual = to_string(res.residual);
                            rp.u_vanishes_at_origin = res.u_vanishes_at_origin;
                            break;
                        }
                        case ReducedPathResult<K>::Status::NotApplicable:
                            rp.status = "not_applicable";
                            rp.reason = res.reason;
                            break;
                        case ReducedPathResult<K>::Status::Failed:
                            rp.status = "failed";
                            rp.reason = res.reason;
                            out.reduced_failed = true;
                            break;
                    }
                }
            }
            out.reduced = rp;
        }
    }

    // informational: membership of the family velocity in TF of this member
    MPoly<K> target0 = substitute_value(derive(F, VT), VT, t0);
    IdealGens<K> tf0 = tf_gens(f0, ws);
    auto mem = graded_membership_at(target0, tf0, ws);
    out.doc.membership_at_t0.computed = true;
    out.doc.membership_at_t0.member = mem.member;
    out.doc.membership_at_t0.target = to_string(target0);
    return out;
}

}  // namespace detail

// --- the full pipeline -------------------------------------------------------------

AnalysisOutcome analyze_family(const FamilySpec& spec);

/// The built-in corpus of families exercised by `germlab corpus`.
std::vector<FamilySpec> corpus();

}  // namespace germlab

#include "germlab/verdict_impl.hpp"
