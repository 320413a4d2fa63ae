#pragma once

#include <string>

#include "germlab/gauss.hpp"

namespace germlab {

/// Complex ball: a Gaussian-rational center plus an exact rational radius
/// bounding the distance to the true value. Every operation here is performed
/// in exact rational arithmetic, so enclosures are rigorous by construction;
/// the only approximation ever introduced is explicit center rounding, whose
/// error is added to the radius exactly.
struct CBall {
    GaussRat c;
    Rat r{0};

    CBall() = default;
    CBall(GaussRat center) : c(std::move(center)) {}
    CBall(GaussRat center, Rat radius) : c(std::move(center)), r(std::move(radius)) {
        if (r < 0) throw InternalError("negative ball radius");
    }

    bool is_exact() const { return r == 0; }
    bool contains_zero() const { return c.norm() <= r * r; }
    /// True when every point of the ball is nonzero.
    bool excludes_zero() const { return modulus_lower(c) > r; }

    friend bool operator==(const CBall&, const CBall&) = default;
};

inline CBall ball_add(const CBall& a, const CBall& b) { return {a.c + b.c, a.r + b.r}; }
inline CBall ball_sub(const CBall& a, const CBall& b) { return {a.c - b.c, a.r + b.r}; }
inline CBall ball_neg(const CBall& a) { return {-a.c, a.r}; }

inline CBall ball_mul(const CBall& a, const CBall& b) {
    Rat radius = modulus_upper(a.c) * b.r + modulus_upper(b.c) * a.r + a.r * b.r;
    return {a.c * b.c, radius};
}

inline CBall ball_scale(const CBall& a, const GaussRat& s) {
    return {a.c * s, modulus_upper(s) * a.r};
}

/// a / b; requires b bounded away from zero.
inline CBall ball_div(const CBall& a, const CBall& b) {
    Rat lb = modulus_lower(b.c) - b.r;
    if (lb <= 0) throw InternalError("ball division by an enclosure of zero");
    // |a/b - ac/bc| = |bc*da - ac*db| / |bc*(bc+db)| <= (|bc|ra + |ac|rb) / (|bc|_lb * lb)
    Rat denom_lb = modulus_lower(b.c);
    Rat radius = (modulus_upper(b.c) * a.r + modulus_upper(a.c) * b.r) / (denom_lb * lb);
    return {a.c / b.c, radius};
}

inline CBall ball_pow(const CBall& base, std::int64_t e) {
    if (e < 0) throw InternalError("ball_pow with negative exponent");
    CBall result{GaussRat(1)};
    CBall b = base;
    std::uint64_t n = static_cast<std::uint64_t>(e);
    while (n) {
        if (n & 1) result = ball_mul(result, b);
        b = ball_mul(b, b);
        n >>= 1;
    }
    return result;
}

/// Rounds the center to dyadics at the given precision, folding the exact
/// rounding error into the radius. Controls coefficient growth in long chains.
inline CBall ball_round(const CBall& a, unsigned bits) {
    auto [re, ere] = round_dyadic(a.c.re, bits);
    auto [im, eim] = round_dyadic(a.c.im, bits);
    return {GaussRat(re, im), a.r + ere + eim};
}

inline Rat ball_modulus_upper(const CBall& a) { return modulus_upper(a.c) + a.r; }
inline Rat ball_modulus_lower(const CBall& a) {
    Rat lb = modulus_lower(a.c) - a.r;
    return lb > 0 ? lb : Rat(0);
}

/// Enclosure of sqrt(z) for an exact Gaussian rational z, radius <= ~2^-bits.
/// The principal root (re >= 0, ties broken toward im >= 0) is returned.
inline CBall ball_sqrt_point(const GaussRat& z, unsigned bits) {
    if (auto w = gauss_sqrt_exact(z)) {
        GaussRat v = *w;
        if (v.re < 0 || (v.re == 0 && v.im < 0)) v = -v;
        return CBall(v);
    }
    if (z.im == 0) {
        if (z.re >= 0) {
            auto [c, r] = sqrt_enclosure(z.re, bits);
            return {GaussRat(c), r};
        }
        auto [c, r] = sqrt_enclosure(-z.re, bits);
        return {GaussRat(Rat(0), c), r};
    }
    // sqrt(z) = u + iv with u = sqrt((|z|+re)/2), v = sign(im)*sqrt((|z|-re)/2).
    // |z| is enclosed first; the outer sqrt bounds use the interval ends.
    auto [mc, mr] = sqrt_enclosure(z.norm(), bits + 4);
    Rat mod_lo = mc - mr, mod_hi = mc + mr;
    auto enclose_sqrt_range = [&](Rat lo, Rat hi) {
        if (lo < 0) lo = 0;
        Rat slo = sqrt_lower(lo), shi = sqrt_upper(hi);
        // tighten to the requested precision
        auto [clo, rlo] = sqrt_enclosure(lo, bits + 4);
        auto [chi, rhi] = sqrt_enclosure(hi, bits + 4);
        slo = clo - rlo > slo ? clo - rlo : slo;
        shi = chi + rhi < shi ? chi + rhi : shi;
        return std::pair<Rat, Rat>{(slo + shi) / 2, (shi - slo) / 2};
    };
    auto [uc, ur] = enclose_sqrt_range((mod_lo + z.re) / 2, (mod_hi + z.re) / 2);
    auto [vc, vr] = enclose_sqrt_range((mod_lo - z.re) / 2, (mod_hi - z.re) / 2);
    if (z.im < 0) vc = -vc;
    return {GaussRat(uc, vc), ur + vr};
}

inline std::string ball_to_string(const CBall& a) {
    return "[" + gauss_to_string(a.c) + " +/- " + rat_to_string(a.r) + "]";
}

}  // namespace germlab
