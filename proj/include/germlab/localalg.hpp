#pragma once

#include <string>
#include <vector>

#include "germlab/grading.hpp"
#include "germlab/linalg.hpp"
#include "germlab/roots.hpp"

namespace germlab {

/// Generators of a graded ideal, each tagged with its weighted degree.
template <class K>
struct IdealGens {
    std::vector<MPoly<K>> gens;
    std::vector<std::int64_t> wdeg;
    std::vector<std::string> labels;
};

/// The tangent-space ideal TF, generated by x_i * dF/dx_j over the spatial
/// variables. The generator x_i dF/dx_j is w-homogeneous of weighted degree
/// d - w_j + w_i. Zero generators (vanishing partials) are dropped.
template <class K>
IdealGens<K> tf_gens(const MPoly<K>& F, const WeightSystem& ws) {
    auto d = whomog_degree(F, ws);
    if (!d) throw InputError("tf_gens: polynomial is not w-homogeneous for these weights");
    IdealGens<K> out;
    for (std::size_t j = 0; j < ws.vars.size(); ++j) {
        MPoly<K> partial = derive(F, ws.vars[j]);
        if (partial.is_zero()) continue;
        for (std::size_t i = 0; i < ws.vars.size(); ++i) {
            MPoly<K> gen = MPoly<K>::variable(ws.vars[i]) * partial;
            out.gens.push_back(std::move(gen));
            out.wdeg.push_back(*d - ws.w[j] + ws.w[i]);
            out.labels.push_back(std::string(1, kVarNames[ws.vars[i]]) + "*F_" +
                                 kVarNames[ws.vars[j]]);
        }
    }
    return out;
}

/// The Jacobian ideal (dF/dx_1, ..., dF/dx_n); generator degrees d - w_j.
template <class K>
IdealGens<K> jacobian_gens(const MPoly<K>& F, const WeightSystem& ws) {
    auto d = whomog_degree(F, ws);
    if (!d) throw InputError("jacobian_gens: polynomial is not w-homogeneous");
    IdealGens<K> out;
    for (std::size_t j = 0; j < ws.vars.size(); ++j) {
        MPoly<K> partial = derive(F, ws.vars[j]);
        if (partial.is_zero()) continue;
        out.gens.push_back(std::move(partial));
        out.wdeg.push_back(*d - ws.w[j]);
        out.labels.push_back(std::string("F_") + kVarNames[ws.vars[j]]);
    }
    return out;
}

namespace detail {

/// Column description: generator index and multiplier monomial.
struct MembershipColumn {
    std::size_t gen;
    Exp monomial;
};

template <class K>
std::vector<MembershipColumn> membership_columns(const IdealGens<K>& gens,
                                                 const WeightSystem& ws,
                                                 std::int64_t e) {
    std::vector<MembershipColumn> cols;
    for (std::size_t g = 0; g < gens.gens.size(); ++g) {
        std::int64_t delta = e - gens.wdeg[g];
        if (delta < 0) continue;
        for (const Exp& m : graded_basis(ws, delta).monomials)
            cols.push_back({g, m});
    }
    return cols;
}

inline UniPoly<Rat> poly_lcm_qt(const UniPoly<Rat>& a, const UniPoly<Rat>& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly<Rat>();
    return monic(exact_div_field(a * b, gcd_field(a, b)));
}

inline MPoly<Rat> mpoly_from_t(const UniPoly<Rat>& p) {
    MPoly<Rat> out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        out.add_term(Exp{0, 0, 0, std::uint32_t(i)}, p.coeff(i));
    return out;
}

}  // namespace detail

/// Algebraic conditions on t where a parametric certificate degenerates:
/// rational roots exactly, plus any residual polynomial factors (squarefree,
/// monic, free of rational roots) reported symbolically.
struct ExceptionalT {
    std::vector<Rat> rational_roots;
    std::vector<UniPoly<Rat>> residual_factors;

    bool empty() const { return rational_roots.empty() && residual_factors.empty(); }
};

inline ExceptionalT exceptional_from_denominator(const UniPoly<Rat>& den) {
    ExceptionalT out;
    if (den.deg() <= 0) return out;
    UniPoly<Rat> sf = exact_div_field(den, gcd_field(den, den.derivative()));
    sf = monic(sf);
    auto roots = detail::rational_roots(sf);
    std::sort(roots.begin(), roots.end());
    out.rational_roots = std::move(roots);
    if (sf.deg() >= 1) out.residual_factors.push_back(sf);
    return out;
}

/// Outcome of the graded membership test over the fraction field Q(t):
/// a verdict valid for all but finitely many t, with the exceptional values
/// reported as exact conditions and the certificate resubstituted exactly.
struct ParamMembership {
    bool member = false;
    std::int64_t target_degree = 0;
    std::vector<MPoly<Rat>> multiplier_num;   // parallel to the generators
    std::vector<UniPoly<Rat>> multiplier_den; // monic denominators in t
    ExceptionalT exceptional;
    MPoly<Rat> residual_num;    // target - combination, denominators cleared:
    UniPoly<Rat> residual_den;  // residual = residual_num / residual_den
};

/// Decides membership of a w-homogeneous target in the graded ideal over
/// polynomials with coefficients in Q(t), degree by degree. Fraction-free
/// (Bareiss) elimination keeps the matrix entries polynomial in t; the
/// returned verdict is exact for all t outside the reported conditions.
///
/// For w-homogeneous target and generators, membership in the graded
/// polynomial ring coincides with membership in the local analytic ring at
/// the origin: any local combination splits into graded pieces, and the
/// degree-matching piece is a polynomial combination. That equivalence is
/// relied on as a theorem here, so deciding the single degree-e slice
/// settles the local question.
inline ParamMembership graded_membership_qt(const MPoly<Rat>& target,
                                            const IdealGens<Rat>& gens,
                                            const WeightSystem& ws) {
    ParamMembership out;
    out.residual_den = UniPoly<Rat>::one();
    out.multiplier_num.assign(gens.gens.size(), MPoly<Rat>());
    out.multiplier_den.assign(gens.gens.size(), UniPoly<Rat>::one());
    if (target.is_zero()) {
        out.member = true;
        return out;
    }
    auto e = whomog_degree(target, ws);
    if (!e) throw InputError("membership target is not w-homogeneous for these weights");
    for (std::size_t g = 0; g < gens.gens.size(); ++g)
        if (!whomog_degree(gens.gens[g], ws))
            throw InputError("ideal generator is not w-homogeneous (inconsistent weights)");
    out.target_degree = *e;

    auto rows = graded_basis(ws, *e).monomials;
    auto cols = detail::membership_columns(gens, ws, *e);
    Mat<UniPoly<Rat>> a(rows.size(), std::vector<UniPoly<Rat>>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        MPoly<Rat> col = MPoly<Rat>::monomial(Rat(1), cols[c].monomial) *
                         gens.gens[cols[c].gen];
        for (std::size_t r = 0; r < rows.size(); ++r)
            a[r][c] = t_coefficients(col, rows[r]);
    }
    std::vector<UniPoly<Rat>> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = t_coefficients(target, rows[r]);

    ParamSolution sol = solve_bareiss_qt(a, b);
    out.member = sol.consistent;

    // assemble per-generator multipliers over a common denominator each
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const RatFunc& coeff = sol.x[c];
        if (coeff.is_zero()) continue;
        std::size_t g = cols[c].gen;
        UniPoly<Rat> new_den = detail::poly_lcm_qt(out.multiplier_den[g], coeff.den);
        MPoly<Rat> scaled_old =
            out.multiplier_num[g] *
            detail::mpoly_from_t(exact_div_field(new_den, out.multiplier_den[g]));
        MPoly<Rat> addend = MPoly<Rat>::monomial(Rat(1), cols[c].monomial) *
                            detail::mpoly_from_t(coeff.num) *
                            detail::mpoly_from_t(exact_div_field(new_den, coeff.den));
        out.multiplier_num[g] = scaled_old + addend;
        out.multiplier_den[g] = new_den;
    }

    // exact resubstitution over the common denominator D
    UniPoly<Rat> D = UniPoly<Rat>::one();
    for (const auto& den : out.multiplier_den) D = detail::poly_lcm_qt(D, den);
    MPoly<Rat> combination;
    for (std::size_t g = 0; g < gens.gens.size(); ++g) {
        if (out.multiplier_num[g].is_zero()) continue;
        combination += out.multiplier_num[g] * gens.gens[g] *
                       detail::mpoly_from_t(exact_div_field(D, out.multiplier_den[g]));
    }
    MPoly<Rat> difference = target * detail::mpoly_from_t(D) - combination;
    if (out.member) {
        if (!difference.is_zero())
            throw InternalError("membership certificate failed exact resubstitution");
        out.exceptional = exceptional_from_denominator(D);
    } else {
        out.residual_num = std::move(difference);
        out.residual_den = D;
    }
    return out;
}

/// Membership at a fixed parameter value (no t in target or generators).
template <class K>
struct PointMembership {
    bool member = false;
    std::vector<MPoly<K>> multipliers;
    MPoly<K> residual;
};

template <class K>
PointMembership<K> graded_membership_at(const MPoly<K>& target, const IdealGens<K>& gens,
                                        const WeightSystem& ws) {
    PointMembership<K> out;
    out.multipliers.assign(gens.gens.size(), MPoly<K>());
    if (target.is_zero()) {
        out.member = true;
        return out;
    }
    auto e = whomog_degree(target, ws);
    if (!e) throw InputError("membership target is not w-homogeneous for these weights");

    auto rows = graded_basis(ws, *e).monomials;
    auto cols = detail::membership_columns(gens, ws, *e);
    Mat<K> a(rows.size(), std::vector<K>(cols.size(), K(0)));
    std::vector<K> b(rows.size(), K(0));
    auto coeff_of = [](const MPoly<K>& p, const Exp& m) {
        auto it = p.terms().find(m);
        return it == p.terms().end() ? K(0) : it->second;
    };
    for (std::size_t c = 0; c < cols.size(); ++c) {
        MPoly<K> col =
            MPoly<K>::monomial(K(1), cols[c].monomial) * gens.gens[cols[c].gen];
        for (std::size_t r = 0; r < rows.size(); ++r) a[r][c] = coeff_of(col, rows[r]);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = coeff_of(target, rows[r]);

    LinearSolution<K> sol = solve_field(a, b);
    out.member = sol.consistent;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (field_is_zero(sol.x[c])) continue;
        out.multipliers[cols[c].gen] +=
            MPoly<K>::monomial(sol.x[c], cols[c].monomial);
    }
    MPoly<K> combination;
    for (std::size_t g = 0; g < gens.gens.size(); ++g)
        combination += out.multipliers[g] * gens.gens[g];
    MPoly<K> difference = target - combination;
    if (out.member && !difference.is_zero())
        throw InternalError("point membership certificate failed resubstitution");
    out.residual = std::move(difference);
    return out;
}

// --- graded quotient dimensions, Milnor number, isolation --------------------

namespace detail {

/// Rank of the degree-e slice of the ideal spanned by the given generators.
template <class K>
std::size_t graded_ideal_rank(const IdealGens<K>& gens, const WeightSystem& ws,
                              std::int64_t e, const std::vector<Exp>& basis) {
    auto cols = membership_columns(gens, ws, e);
    if (cols.empty() || basis.empty()) return 0;
    Mat<K> a(cols.size(), std::vector<K>(basis.size(), K(0)));
    auto coeff_of = [](const MPoly<K>& p, const Exp& m) {
        auto it = p.terms().find(m);
        return it == p.terms().end() ? K(0) : it->second;
    };
    for (std::size_t c = 0; c < cols.size(); ++c) {
        MPoly<K> col =
            MPoly<K>::monomial(K(1), cols[c].monomial) * gens.gens[cols[c].gen];
        for (std::size_t r = 0; r < basis.size(); ++r) a[c][r] = coeff_of(col, basis[r]);
    }
    return rank_field(a);
}

/// dim of (O / ideal) in weighted degree e.
template <class K>
std::int64_t graded_quotient_dim(const IdealGens<K>& gens, const WeightSystem& ws,
                                 std::int64_t e) {
    auto basis = graded_basis(ws, e).monomials;
    return std::int64_t(basis.size()) -
           std::int64_t(graded_ideal_rank(gens, ws, e, basis));
}

}  // namespace detail

/// Top weighted degree of the Milnor algebra of a w-homogeneous germ with an
/// isolated singularity: sum of (d - 2 w_i).
inline std::int64_t milnor_top_degree(const WeightSystem& ws) {
    std::int64_t top = 0;
    for (auto w : ws.w) top += ws.d - 2 * w;
    return top;
}

/// Isolated-singularity test at the origin for a fixed-parameter germ.
/// For n = 2 this reduces to a univariate gcd of the dehomogenized partials
/// plus the axis checks; for n = 3 the graded quotient of the Jacobian ideal
/// must vanish on a full window of degrees past the Milnor-algebra top.
template <class K>
bool isolated_check(const MPoly<K>& f, const WeightSystem& ws) {
    if (f.is_zero()) return false;
    if (f.depends_on(VT))
        throw InputError("isolated_check expects a fixed parameter value (no t)");
    const int n = ws.nvars();
    if (n == 1) return !derive(f, ws.vars[0]).is_zero();
    if (n == 2) {
        Var vx = ws.vars[0], vy = ws.vars[1];
        MPoly<K> fx = derive(f, vx), fy = derive(f, vy);
        if (fx.is_zero() || fy.is_zero()) return false;
        // common branch along {y = 0}
        if (fx.order_in(vy) >= 1 && fy.order_in(vy) >= 1) return false;
        // dehomogenize x -> a, y -> 1; a common root is a common branch
        auto dehom = [&](const MPoly<K>& p) {
            std::vector<K> cs;
            for (const auto& [e, c] : p.terms()) {
                if (cs.size() <= e[vx]) cs.resize(e[vx] + 1, K(0));
                cs[e[vx]] += c;
            }
            return UniPoly<K>(std::move(cs));
        };
        UniPoly<K> p = dehom(fx), q = dehom(fy);
        return gcd_field(p, q).deg() == 0;
    }
    // n = 3: quotient dimensions must vanish on (top, top + max_w]
    IdealGens<K> jac = jacobian_gens(f, ws);
    std::int64_t top = milnor_top_degree(ws);
    std::int64_t maxw = *std::max_element(ws.w.begin(), ws.w.end());
    for (std::int64_t e = std::max<std::int64_t>(top + 1, 0); e <= top + maxw; ++e)
        if (detail::graded_quotient_dim(jac, ws, e) != 0) return false;
    return true;
}

/// Milnor number and orbit codimension, computed two independent ways:
/// summed graded quotient dimensions of the Jacobian ideal, and the
/// weighted-homogeneous product formula; the two must agree.
struct MilnorData {
    std::int64_t mu = 0;
    std::int64_t method_dimension = 0;
    std::int64_t method_formula = 0;
    std::int64_t orbit_codim = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> graded_dims;
};

template <class K>
MilnorData milnor(const MPoly<K>& f, const WeightSystem& ws) {
    if (!whomog_degree(f, ws))
        throw InputError("milnor: polynomial is not w-homogeneous for these weights");
    if (!isolated_check(f, ws))
        throw InputError("milnor: the singularity at the origin is not isolated");
    MilnorData out;

    Rat formula(1);
    for (auto w : ws.w) formula *= make_rat(ws.d - w, w);
    if (!is_integer(formula) || formula < 0)
        throw InternalError("weighted-homogeneous Milnor formula is not a whole number");
    out.method_formula = rat_num(formula).convert_to<std::int64_t>();

    IdealGens<K> jac = jacobian_gens(f, ws);
    std::int64_t top = milnor_top_degree(ws);
    std::int64_t maxw = *std::max_element(ws.w.begin(), ws.w.end());
    std::int64_t total = 0;
    for (std::int64_t e = 0; e <= top; ++e) {
        std::int64_t dim = detail::graded_quotient_dim(jac, ws, e);
        if (dim > 0) {
            out.graded_dims.emplace_back(e, dim);
            total += dim;
        }
    }
    for (std::int64_t e = std::max<std::int64_t>(top + 1, 0); e <= top + maxw; ++e)
        if (detail::graded_quotient_dim(jac, ws, e) != 0)
            throw InternalError("Milnor algebra does not vanish past its top degree");
    out.method_dimension = total;

    if (out.method_dimension != out.method_formula)
        throw InternalError("Milnor number methods disagree: dimension " +
                            std::to_string(out.method_dimension) + " vs formula " +
                            std::to_string(out.method_formula));
    out.mu = out.method_dimension;
    out.orbit_codim = ws.nvars() - 1 + out.mu;
    return out;
}

}  // namespace germlab
