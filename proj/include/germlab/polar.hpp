#pragma once

#include <vector>

#include "germlab/grading.hpp"
#include "germlab/roots.hpp"

namespace germlab {

/// The polar polynomial dF/dx of the family.
template <class K>
MPoly<K> polar_poly(const MPoly<K>& F) {
    if (!F.depends_on(VX))
        throw InputError("polar_poly: the polynomial does not depend on x");
    return derive(F, VX);
}

/// One branch of the polar curve {F_x = 0}: gamma(s) = (a s^w1, s^w2).
template <class K>
struct PolarBranch {
    AlgebraicCoeff<K> a;
    int multiplicity = 1;
    UniPoly<K> factor;  // squarefree factor of p(a) defining this root
    bool clustered = false;
};

template <class K>
struct PolarDecomposition {
    std::vector<PolarBranch<K>> branches;
    std::int64_t x_axis_order = 0;   // order of {y = 0} as component of {F_x = 0}
    bool y_axis_in_branches = false; // the a = 0 root covers {x = 0}
    bool squarefree = false;         // F_x squarefree in x over Q(t) (family level)
    bool degenerate = false;         // F_x vanished identically at this t0
    UniPoly<K> p;                    // dehomogenized polar p(a) = F_x(a, 1, t0)
    std::int64_t w1 = 0, w2 = 0;
};

namespace detail {

/// p(a) = q(a, 1) for a fixed-parameter polynomial in x, y.
template <class K>
UniPoly<K> dehomogenize_x(const MPoly<K>& q) {
    std::vector<K> cs;
    for (const auto& [e, c] : q.terms()) {
        if (cs.size() <= e[VX]) cs.resize(e[VX] + 1, K(0));
        cs[e[VX]] += c;
    }
    return UniPoly<K>(std::move(cs));
}

/// Family-level dehomogenization: coefficients become polynomials in t.
template <class K>
UniPoly<UniPoly<Rat>> dehomogenize_x_parametric(const MPoly<K>& q) {
    static_assert(std::is_same_v<K, Rat>, "parametric form requires rational input");
    std::vector<UniPoly<Rat>> cs;
    for (const auto& [e, c] : q.terms()) {
        if (cs.size() <= e[VX]) cs.resize(e[VX] + 1, UniPoly<Rat>());
        cs[e[VX]] += UniPoly<Rat>::monomial(c, e[VT]);
    }
    return UniPoly<UniPoly<Rat>>(std::move(cs));
}

}  // namespace detail

/// Computes the polar decomposition at a fixed parameter value t0. The family
/// F must be w-homogeneous with spatial variables x, y and w1 > w2 (callers
/// swap variable roles beforehand when needed; the branch parametrization is
/// only valid under that ordering).
///
/// Branches along {y = 0} are not representable as (a s^w1, s^w2); they are
/// reported through x_axis_order and excluded from the branch list.
///
/// The squarefree flag tests gcd(F_x, dF_x/dx) in x over Q(t). Since F_x is
/// w-homogeneous, the x-multiplicity structure equals the root-multiplicity
/// structure of the dehomogenized p(a), which is what is actually computed.
template <class K>
PolarDecomposition<K> branch_roots(const MPoly<Rat>& F, const WeightSystem& ws,
                                   const K& t0, const RootConfig& cfg) {
    if (ws.nvars() != 2 || ws.vars[0] != VX || ws.vars[1] != VY)
        throw InputError("branch_roots: expects a two-variable germ in x and y");
    if (ws.w[0] <= ws.w[1])
        throw InputError("branch_roots: requires w1 > w2 (swap variable roles first)");
    if (!whomog_degree(F, ws))
        throw InputError("branch_roots: polynomial is not w-homogeneous");

    PolarDecomposition<K> out;
    out.w1 = ws.w[0];
    out.w2 = ws.w[1];

    MPoly<Rat> fx_family = polar_poly(F);
    out.squarefree = squarefree_over_qt(detail::dehomogenize_x_parametric(fx_family));

    MPoly<K> fx = substitute_value(fx_family, VT, t0);
    if (fx.is_zero()) {
        out.degenerate = true;
        return out;
    }
    out.x_axis_order = fx.order_in(VY);
    out.p = detail::dehomogenize_x(fx);
    if (out.p.is_zero()) {
        out.degenerate = true;  // unreachable for w-homogeneous fx; kept for safety
        return out;
    }
    if (out.p.deg() < 1) return out;  // polar supported on {y = 0} only

    for (auto& root : isolate_roots(out.p, cfg)) {
        if (root.value.is_exact_value() && field_is_zero(root.value.exact))
            out.y_axis_in_branches = true;
        out.branches.push_back(PolarBranch<K>{std::move(root.value), root.multiplicity,
                                              std::move(root.factor), root.clustered});
    }
    return out;
}

/// Points gamma(s) = (a s^w1, s^w2) at the given exact samples, with ball
/// propagation when the branch coefficient is a ball.
template <class K>
std::vector<std::pair<CBall, CBall>> branch_curve(const PolarBranch<K>& branch,
                                                  std::int64_t w1, std::int64_t w2,
                                                  const std::vector<GaussRat>& samples) {
    std::vector<std::pair<CBall, CBall>> out;
    CBall a = branch.a.enclosure();
    for (const GaussRat& s : samples) {
        GaussRat sw1 = gauss_pow(s, w1), sw2 = gauss_pow(s, w2);
        out.emplace_back(ball_scale(a, sw1), CBall(sw2));
    }
    return out;
}

/// Ball evaluation of a fixed-parameter polynomial at a complex point pair.
template <class K>
CBall eval_mpoly_ball(const MPoly<K>& q, const CBall& x, const CBall& y) {
    CBall acc{GaussRat(0)};
    for (const auto& [e, c] : q.terms()) {
        CBall term{to_gauss(c)};
        if (e[VX]) term = ball_mul(term, ball_pow(x, e[VX]));
        if (e[VY]) term = ball_mul(term, ball_pow(y, e[VY]));
        acc = ball_add(acc, term);
    }
    return acc;
}

}  // namespace germlab
