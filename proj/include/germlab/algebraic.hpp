#pragma once

#include <optional>

#include "germlab/ball.hpp"
#include "germlab/unipoly.hpp"

namespace germlab {

/// Monic irreducible quadratic alpha^2 + p*alpha + r over the base field K.
/// The canonical root is the one that sorts first in descending (re, im)
/// order; the other root is -p - alpha.
template <class K>
struct QuadSpec {
    K p{0};
    K r{0};
    friend bool operator==(const QuadSpec&, const QuadSpec&) = default;

    K disc() const { return p * p - K(4) * r; }
};

/// Certified enclosure of sqrt(disc) used to separate the two roots.
template <class K>
CBall quad_delta_ball(const QuadSpec<K>& q, unsigned bits) {
    return ball_sqrt_point(to_gauss(q.disc()), bits);
}

/// Enclosure of the canonical root. Canonicity: among (-p + delta)/2 and
/// (-p - delta)/2 with delta the principal sqrt, the canonical root is the
/// one that is larger in (re, im) lexicographic order. Since the principal
/// square root has re > 0, or re = 0 and im >= 0, the "+" branch is always
/// the canonical one.
template <class K>
CBall quad_alpha_ball(const QuadSpec<K>& q, unsigned bits) {
    CBall delta = quad_delta_ball(q, bits);
    GaussRat mp = -to_gauss(q.p);
    CBall root = ball_add(CBall(mp), delta);
    return {root.c * GaussRat(make_rat(1, 2)), root.r / 2};
}

/// The conjugate (non-canonical) root enclosure.
template <class K>
CBall quad_beta_ball(const QuadSpec<K>& q, unsigned bits) {
    CBall delta = quad_delta_ball(q, bits);
    GaussRat mp = -to_gauss(q.p);
    CBall root = ball_sub(CBall(mp), delta);
    return {root.c * GaussRat(make_rat(1, 2)), root.r / 2};
}

/// Element c0 + c1*alpha of the quadratic extension K[alpha]/(alpha^2+p*alpha+r),
/// expressed in the canonical basis {1, alpha}. Exact field arithmetic.
template <class K>
struct QuadElem {
    QuadSpec<K> q;
    K c0{0};
    K c1{0};

    bool is_zero() const { return field_is_zero(c0) && field_is_zero(c1); }
    bool in_base_field() const { return field_is_zero(c1); }
    friend bool operator==(const QuadElem&, const QuadElem&) = default;

    QuadElem operator-() const { return {q, -c0, -c1}; }
    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
        return {a.q, a.c0 + b.c0, a.c1 + b.c1};
    }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
        return {a.q, a.c0 - b.c0, a.c1 - b.c1};
    }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        // alpha^2 = -p*alpha - r
        K lin = a.c0 * b.c1 + a.c1 * b.c0 - a.c1 * b.c1 * a.q.p;
        K con = a.c0 * b.c0 - a.c1 * b.c1 * a.q.r;
        return {a.q, con, lin};
    }

    /// Galois conjugate: alpha -> -p - alpha.
    QuadElem conj() const { return {q, c0 - c1 * q.p, -c1}; }

    /// Field norm N(v) = v * conj(v), an element of K; zero only for v = 0
    /// when the quadratic is irreducible.
    K norm() const { return c0 * c0 - c0 * c1 * q.p + c1 * c1 * q.r; }

    QuadElem inverse() const {
        K n = norm();
        if (field_is_zero(n))
            throw InternalError("inverse of zero (or reducible quadratic) in K[alpha]");
        QuadElem cj = conj();
        K ninv = K(1) / n;
        return {q, cj.c0 * ninv, cj.c1 * ninv};
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) {
        return a * b.inverse();
    }
};

template <class K>
QuadElem<K> quad_const(const QuadSpec<K>& q, K value) {
    return {q, std::move(value), K(0)};
}

/// The canonical root alpha itself.
template <class K>
QuadElem<K> quad_alpha(const QuadSpec<K>& q) {
    return {q, K(0), K(1)};
}

/// The conjugate root -p - alpha.
template <class K>
QuadElem<K> quad_alpha_conj(const QuadSpec<K>& q) {
    return {q, -q.p, K(-1)};
}

/// Polynomial evaluation inside the extension field.
template <class K>
QuadElem<K> eval_quad(const UniPoly<K>& poly, const QuadElem<K>& x) {
    QuadElem<K> acc = quad_const(x.q, K(0));
    for (std::size_t i = poly.coeffs().size(); i-- > 0;) {
        acc = acc * x + quad_const(x.q, poly.coeff(i));
    }
    return acc;
}

/// Certified enclosure of a quadratic-extension element.
template <class K>
CBall quad_elem_ball(const QuadElem<K>& v, unsigned bits) {
    CBall alpha = quad_alpha_ball(v.q, bits);
    return ball_add(CBall(to_gauss(v.c0)), ball_scale(alpha, to_gauss(v.c1)));
}

/// Monic minimal quadratic of v = c0 + c1*alpha over K, for c1 != 0:
/// z^2 + (p*c1 - 2*c0) z + (c0^2 - p*c0*c1 + r*c1^2).
template <class K>
QuadSpec<K> minimal_quadratic(const QuadElem<K>& v) {
    if (field_is_zero(v.c1))
        throw InternalError("minimal_quadratic of a base-field element");
    return {v.q.p * v.c1 - K(2) * v.c0,
            v.c0 * v.c0 - v.q.p * v.c0 * v.c1 + v.q.r * v.c1 * v.c1};
}

}  // namespace germlab
