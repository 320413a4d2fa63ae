#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "germlab/algebraic.hpp"
#include "germlab/polar.hpp"

namespace germlab {

/// A computed invariant value: exact in the base field, exact in a quadratic
/// extension (expressed in the canonical basis of its minimal polynomial), or
/// a certified ball. Quad and Ball values carry a refinement handle that
/// recomputes the enclosure at any requested precision.
template <class K>
struct KValue {
    enum class Kind { Exact, Quad, Ball } kind = Kind::Exact;
    K exact{0};
    std::optional<QuadElem<K>> quad;
    CBall ball;
    std::function<CBall(unsigned)> refine;

    bool is_exact() const { return kind == Kind::Exact; }
    CBall enclosure() const { return kind == Kind::Exact ? CBall(to_gauss(exact)) : ball; }
    CBall enclosure_at(unsigned bits) const {
        if (kind == Kind::Exact) return CBall(to_gauss(exact));
        return refine ? refine(bits) : ball;
    }
};

template <class K>
KValue<K> kvalue_exact(K v) {
    KValue<K> out;
    out.kind = KValue<K>::Kind::Exact;
    out.exact = std::move(v);
    return out;
}

template <class K>
KValue<K> kvalue_quad(QuadElem<K> elem, unsigned bits) {
    if (elem.in_base_field()) return kvalue_exact(elem.c0);
    KValue<K> out;
    out.kind = KValue<K>::Kind::Quad;
    out.quad = elem;
    out.ball = quad_elem_ball(elem, bits);
    out.refine = [elem](unsigned b) { return quad_elem_ball(elem, b); };
    return out;
}

template <class K>
KValue<K> kvalue_ball(CBall ball, std::function<CBall(unsigned)> refine) {
    KValue<K> out;
    out.kind = KValue<K>::Kind::Ball;
    out.ball = std::move(ball);
    out.refine = std::move(refine);
    return out;
}

/// Outcome of an equality decision between two computed values.
enum class KCompare {
    EqualExact,        // proven equal by exact arithmetic
    EqualPolicy,       // balls: difference contains 0 and survives the
                       // doubled-precision shrink test
    UnequalExact,      // proven unequal by exact arithmetic
    UnequalCertified,  // difference ball excludes zero
    Undecided,
};

inline bool kcompare_equal(KCompare c) {
    return c == KCompare::EqualExact || c == KCompare::EqualPolicy;
}
inline bool kcompare_unequal(KCompare c) {
    return c == KCompare::UnequalExact || c == KCompare::UnequalCertified;
}

/// Equality policy. Exact and quadratic-extension values are decided exactly.
/// Ball values are declared equal only when the difference ball contains zero
/// AND recomputation at doubled precision shrinks its radius by at least
/// 2^20; they are declared unequal exactly when the difference excludes zero.
/// Anything else stays Undecided rather than becoming a mathematical claim.
template <class K>
KCompare compare_kvalues(const KValue<K>& u, const KValue<K>& v, unsigned bits) {
    using Kind = typename KValue<K>::Kind;
    if (u.kind == Kind::Exact && v.kind == Kind::Exact)
        return u.exact == v.exact ? KCompare::EqualExact : KCompare::UnequalExact;
    if (u.kind == Kind::Exact && v.kind == Kind::Quad) return KCompare::UnequalExact;
    if (u.kind == Kind::Quad && v.kind == Kind::Exact) return KCompare::UnequalExact;
    if (u.kind == Kind::Quad && v.kind == Kind::Quad) {
        if (u.quad->q == v.quad->q) {
            return (u.quad->c0 == v.quad->c0 && u.quad->c1 == v.quad->c1)
                       ? KCompare::EqualExact
                       : KCompare::UnequalExact;
        }
        // same number iff same monic minimal quadratic and same root of it
        QuadSpec<K> mu = minimal_quadratic(*u.quad), mv = minimal_quadratic(*v.quad);
        if (!(mu == mv)) return KCompare::UnequalExact;
        for (unsigned b = bits; b <= 8 * bits; b *= 2) {
            CBall diff = ball_sub(u.enclosure_at(b), v.enclosure_at(b));
            if (diff.excludes_zero()) return KCompare::UnequalCertified;
            // the two roots of mu are separation |sqrt(disc)| apart
            Rat sep = ball_modulus_lower(quad_delta_ball(mu, b));
            if (ball_modulus_upper(diff) < sep) return KCompare::EqualExact;
        }
        return KCompare::Undecided;
    }
    // at least one certified ball
    CBall du = u.enclosure_at(bits), dv = v.enclosure_at(bits);
    CBall diff = ball_sub(du, dv);
    if (diff.excludes_zero()) return KCompare::UnequalCertified;
    CBall du2 = u.enclosure_at(2 * bits), dv2 = v.enclosure_at(2 * bits);
    CBall diff2 = ball_sub(du2, dv2);
    if (diff2.excludes_zero()) return KCompare::UnequalCertified;
    if (diff.r > 0 && diff2.r * rat_pow2(20) <= diff.r && diff2.contains_zero())
        return KCompare::EqualPolicy;
    if (diff.r == 0 && diff2.r == 0 && diff2.contains_zero()) return KCompare::EqualExact;
    return KCompare::Undecided;
}

// --- evaluation of a rational expression along a branch -----------------------

namespace detail {

/// Evaluates numerator/denominator polynomials at a branch coefficient,
/// returning the quotient. The result is exact whenever the branch is exact
/// or the root of an explicit quadratic. Nullopt means the denominator
/// vanishes (exactly, or could not be bounded away from zero).
template <class K>
struct BranchEval {
    std::optional<KValue<K>> value;
    bool denominator_vanishes = false;  // exact vanishing detected
    bool undecidable = false;           // ball denominator kept containing 0
};

template <class K>
BranchEval<K> eval_ratio_at_branch(const UniPoly<K>& num, const UniPoly<K>& den,
                                   const PolarBranch<K>& branch, const RootConfig& cfg) {
    using Kind = typename AlgebraicCoeff<K>::Kind;
    BranchEval<K> out;
    const auto& a = branch.a;
    if (a.kind == Kind::Exact) {
        K dv = den.eval(a.exact);
        if (field_is_zero(dv)) {
            out.denominator_vanishes = true;
            return out;
        }
        out.value = kvalue_exact(num.eval(a.exact) / dv);
        return out;
    }
    if (a.quad) {
        QuadElem<K> elem =
            a.quad_sel > 0 ? quad_alpha(*a.quad) : quad_alpha_conj(*a.quad);
        QuadElem<K> dv = eval_quad(den, elem);
        if (dv.is_zero()) {
            out.denominator_vanishes = true;
            return out;
        }
        out.value = kvalue_quad(eval_quad(num, elem) / dv, cfg.precision_bits);
        return out;
    }
    // ball branch: refine until the denominator enclosure excludes zero
    AlgebraicCoeff<K> root = a;
    UniPoly<K> factor = branch.factor;
    for (unsigned b = cfg.precision_bits; b <= 8 * cfg.precision_bits; b *= 2) {
        refine_root(root, factor, b);
        CBall dv = eval_ball(den, root.ball);
        if (dv.excludes_zero()) {
            CBall nv = eval_ball(num, root.ball);
            auto refine = [num, den, factor, root](unsigned bits) {
                AlgebraicCoeff<K> r = root;
                refine_root(r, factor, bits);
                return ball_div(eval_ball(num, r.ball), eval_ball(den, r.ball));
            };
            out.value = kvalue_ball<K>(ball_div(nv, dv), refine);
            return out;
        }
    }
    out.undecidable = true;
    return out;
}

/// Plain polynomial evaluation at a branch coefficient.
template <class K>
KValue<K> eval_poly_at_branch(const UniPoly<K>& poly, const PolarBranch<K>& branch,
                              const RootConfig& cfg) {
    using Kind = typename AlgebraicCoeff<K>::Kind;
    const auto& a = branch.a;
    if (a.kind == Kind::Exact) return kvalue_exact(poly.eval(a.exact));
    if (a.quad) {
        QuadElem<K> elem =
            a.quad_sel > 0 ? quad_alpha(*a.quad) : quad_alpha_conj(*a.quad);
        return kvalue_quad(eval_quad(poly, elem), cfg.precision_bits);
    }
    AlgebraicCoeff<K> root = a;
    UniPoly<K> factor = branch.factor;
    refine_root(root, factor, cfg.precision_bits);
    auto refine = [poly, factor, root](unsigned bits) {
        AlgebraicCoeff<K> r = root;
        refine_root(r, factor, bits);
        return eval_ball(poly, r.ball);
    };
    return kvalue_ball<K>(eval_ball(poly, root.ball), refine);
}

}  // namespace detail

// --- k-values -----------------------------------------------------------------

template <class K>
struct KReport {
    K t0{0};
    struct Entry {
        AlgebraicCoeff<K> a;
        int multiplicity = 1;
        KValue<K> k;
        bool degenerate_fy = false;  // F_y(a, 1, t0) = 0: the quotient is undefined
        bool undecidable_fy = false; // ball denominator could not be separated from 0
    };
    std::vector<Entry> entries;
    enum class Equality { AllEqual, Vacuous, Unequal, Undecided } equality =
        Equality::Vacuous;
    bool used_ball_policy = false;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    bool excluded_axis = false;  // an {y=0} polar component was left out
    std::vector<std::string> notes;

    bool all_equal() const {
        return equality == Equality::AllEqual || equality == Equality::Vacuous;
    }
};

/// k_i = F_t(a_i, 1, t0) / F_y(a_i, 1, t0) for every non-axis polar branch,
/// with the equality of all k_i decided per the comparison policy.
template <class K>
KReport<K> k_values(const MPoly<Rat>& F, [[maybe_unused]] const WeightSystem& ws,
                    const PolarDecomposition<K>& decomp, const K& t0,
                    const RootConfig& cfg) {
    KReport<K> out;
    out.t0 = t0;
    out.excluded_axis = decomp.x_axis_order > 0;
    UniPoly<K> ft = detail::dehomogenize_x(substitute_value(derive(F, VT), VT, t0));
    UniPoly<K> fy = detail::dehomogenize_x(substitute_value(derive(F, VY), VT, t0));

    for (const auto& branch : decomp.branches) {
        typename KReport<K>::Entry entry;
        entry.a = branch.a;
        entry.multiplicity = branch.multiplicity;
        auto eval = detail::eval_ratio_at_branch(ft, fy, branch, cfg);
        entry.degenerate_fy = eval.denominator_vanishes;
        entry.undecidable_fy = eval.undecidable;
        if (eval.value) entry.k = *eval.value;
        out.entries.push_back(std::move(entry));
    }

    bool any_degenerate = false, any_undecided_pair = false, used_policy = false;
    for (const auto& e : out.entries)
        if (e.degenerate_fy || e.undecidable_fy) any_degenerate = true;

    if (out.entries.size() <= 1) {
        out.equality = KReport<K>::Equality::Vacuous;
        if (any_degenerate) out.equality = KReport<K>::Equality::Undecided;
        return out;
    }
    if (any_degenerate) {
        out.equality = KReport<K>::Equality::Undecided;
        out.notes.push_back("a branch has F_y = 0; the k quotient is undefined there");
        return out;
    }
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < out.entries.size(); ++j) {
            KCompare c =
                compare_kvalues(out.entries[i].k, out.entries[j].k, cfg.precision_bits);
            if (kcompare_unequal(c)) {
                out.equality = KReport<K>::Equality::Unequal;
                out.witness = std::make_pair(i, j);
                return out;
            }
            if (c == KCompare::EqualPolicy) used_policy = true;
            if (c == KCompare::Undecided) any_undecided_pair = true;
        }
    }
    if (any_undecided_pair) {
        out.equality = KReport<K>::Equality::Undecided;
        out.notes.push_back("some k comparisons stayed undecided at this precision");
    } else {
        out.equality = KReport<K>::Equality::AllEqual;
        out.used_ball_policy = used_policy;
    }
    return out;
}

// --- Henry-Parusinski leading coefficients -------------------------------------

/// Exact division of computed values where structure allows, ball division
/// otherwise.
template <class K>
KValue<K> divide_kvalues(const KValue<K>& num, const KValue<K>& den,
                         const RootConfig& cfg) {
    using Kind = typename KValue<K>::Kind;
    if (num.kind == Kind::Exact && den.kind == Kind::Exact)
        return kvalue_exact(num.exact / den.exact);
    if (num.kind == Kind::Quad && den.kind == Kind::Quad && num.quad->q == den.quad->q)
        return kvalue_quad(*num.quad / *den.quad, cfg.precision_bits);
    if (num.kind == Kind::Quad && den.kind == Kind::Exact)
        return kvalue_quad(*num.quad / quad_const(num.quad->q, den.exact),
                           cfg.precision_bits);
    if (num.kind == Kind::Exact && den.kind == Kind::Quad)
        return kvalue_quad(quad_const(den.quad->q, num.exact) / *den.quad,
                           cfg.precision_bits);
    auto nr = num, dr = den;
    auto refine = [nr, dr](unsigned bits) {
        return ball_div(nr.enclosure_at(bits), dr.enclosure_at(bits));
    };
    return kvalue_ball<K>(ball_div(num.enclosure_at(cfg.precision_bits),
                                den.enclosure_at(cfg.precision_bits)),
                       refine);
}

template <class K>
struct HPReport {
    K t0{0};
    struct Entry {
        AlgebraicCoeff<K> a;
        int multiplicity = 1;
        KValue<K> c;               // leading coefficient f(a, 1)
        bool certified_zero = false;
        bool possibly_zero = false;  // ball containing 0: zero-ness undecided
    };
    std::vector<Entry> entries;
    std::vector<KValue<K>> ratios;  // c_i / c_base over certified-nonzero entries
    std::optional<std::size_t> base_index;
    std::size_t zero_count = 0;
    std::size_t possibly_zero_count = 0;
};

/// Leading coefficients c_i = f_t0(a_i, 1) along the polar branches, plus the
/// scale-normalized ratio multiset used for member comparison. Certified-zero
/// branches are counted separately; the first certified-nonzero branch in
/// canonical order is the normalization base.
template <class K>
HPReport<K> hp_coefficients(const MPoly<Rat>& F, [[maybe_unused]] const WeightSystem& ws,
                            const PolarDecomposition<K>& decomp, const K& t0,
                            const RootConfig& cfg) {
    HPReport<K> out;
    out.t0 = t0;
    UniPoly<K> f = detail::dehomogenize_x(substitute_value(F, VT, t0));

    for (const auto& branch : decomp.branches) {
        typename HPReport<K>::Entry entry;
        entry.a = branch.a;
        entry.multiplicity = branch.multiplicity;
        entry.c = detail::eval_poly_at_branch(f, branch, cfg);
        if (entry.c.is_exact()) {
            entry.certified_zero = field_is_zero(entry.c.exact);
        } else if (entry.c.kind == KValue<K>::Kind::Quad) {
            entry.certified_zero = entry.c.quad->is_zero();
        } else if (entry.c.ball.contains_zero()) {
            entry.possibly_zero = true;
        }
        if (entry.certified_zero) ++out.zero_count;
        if (entry.possibly_zero) ++out.possibly_zero_count;
        out.entries.push_back(std::move(entry));
    }

    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        const auto& e = out.entries[i];
        if (e.certified_zero || e.possibly_zero) continue;
        out.base_index = i;
        break;
    }
    if (!out.base_index) return out;
    const auto& base = out.entries[*out.base_index];

    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        const auto& e = out.entries[i];
        if (e.certified_zero || e.possibly_zero) continue;
        out.ratios.push_back(divide_kvalues(e.c, base.c, cfg));
    }
    return out;
}

// --- member comparison ----------------------------------------------------------

enum class ComparisonVerdict { Distinguished, NotDistinguished };

struct ComparisonReport {
    ComparisonVerdict verdict = ComparisonVerdict::NotDistinguished;
    std::string detail;
};

namespace detail {

/// Perfect matching on the "possibly equal" bipartite graph via Kuhn's
/// algorithm. No perfect matching means the two value multisets certainly
/// differ, which is the only direction this comparison ever asserts.
inline bool has_perfect_matching(const std::vector<std::vector<bool>>& adj) {
    std::size_t n = adj.size();
    if (n == 0) return true;
    std::size_t m = adj[0].size();
    if (n != m) return false;
    std::vector<int> match(m, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> try_kuhn =
        [&](std::size_t u, std::vector<bool>& visited) {
            for (std::size_t v = 0; v < m; ++v) {
                if (!adj[u][v] || visited[v]) continue;
                visited[v] = true;
                if (match[v] < 0 || try_kuhn(std::size_t(match[v]), visited)) {
                    match[v] = int(u);
                    return true;
                }
            }
            return false;
        };
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<bool> visited(m, false);
        if (!try_kuhn(u, visited)) return false;
    }
    return true;
}

}  // namespace detail

/// Compares the normalized ratio multisets of two family members. Exact
/// multiset equality where values are exact; ball-overlap matching otherwise.
/// DISTINGUISHED is asserted only on certified differences; the comparison
/// never claims equivalence.
template <class K1, class K2>
ComparisonReport compare_hp_reports(const HPReport<K1>& a, const HPReport<K2>& b,
                                    const RootConfig& cfg) {
    ComparisonReport out;
    if (a.possibly_zero_count > 0 || b.possibly_zero_count > 0) {
        out.detail = "a leading coefficient enclosure contains zero; not comparable";
        return out;
    }
    if (a.zero_count != b.zero_count) {
        out.verdict = ComparisonVerdict::Distinguished;
        out.detail = "different numbers of vanishing leading coefficients";
        return out;
    }
    if (a.ratios.size() != b.ratios.size()) {
        out.verdict = ComparisonVerdict::Distinguished;
        out.detail = "different numbers of polar branches";
        return out;
    }
    std::size_t n = a.ratios.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // cross-field comparison happens through enclosures
            CBall diff = ball_sub(a.ratios[i].enclosure_at(cfg.precision_bits),
                                  b.ratios[j].enclosure_at(cfg.precision_bits));
            if (diff.excludes_zero()) continue;
            adj[i][j] = true;
        }
    if (!detail::has_perfect_matching(adj)) {
        out.verdict = ComparisonVerdict::Distinguished;
        out.detail = "ratio multisets certifiably differ";
    } else {
        out.detail = "ratio multisets are compatible at this precision";
    }
    return out;
}

/// Full member comparison at two parameter values of one family.
template <class K1, class K2>
ComparisonReport compare_members(const MPoly<Rat>& F, const WeightSystem& ws,
                                 const K1& t0_a, const K2& t0_b, const RootConfig& cfg) {
    auto da = branch_roots(F, ws, t0_a, cfg);
    auto db = branch_roots(F, ws, t0_b, cfg);
    auto ha = hp_coefficients(F, ws, da, t0_a, cfg);
    auto hb = hp_coefficients(F, ws, db, t0_b, cfg);
    return compare_hp_reports(ha, hb, cfg);
}

}  // namespace germlab
