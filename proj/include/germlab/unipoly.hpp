#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "germlab/ball.hpp"
#include "germlab/mpoly.hpp"

namespace germlab {

/// Dense univariate polynomial over an exact coefficient ring C.
/// C is Rat or GaussRat (fields), or UniPoly<Rat> for polynomials in a
/// second variable (elements of (Q[t])[a]).
template <class C>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(C constant) {
        coeffs_.push_back(std::move(constant));
        trim();
    }
    explicit UniPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return UniPoly(C(1)); }
    static UniPoly variable() { return UniPoly(std::vector<C>{C(0), C(1)}); }
    static UniPoly monomial(C c, std::size_t e) {
        std::vector<C> v(e + 1, C(0));
        v[e] = std::move(c);
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    std::int64_t deg() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
    const C& lc() const {
        if (coeffs_.empty()) throw InternalError("leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    C coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : C(0); }
    const std::vector<C>& coeffs() const { return coeffs_; }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    UniPoly operator-() const {
        UniPoly out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<C> out(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return UniPoly(std::move(out));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    UniPoly scaled(const C& s) const {
        if (field_is_zero(s)) return UniPoly();
        UniPoly out = *this;
        for (auto& c : out.coeffs_) c = c * s;
        out.trim();
        return out;
    }

    UniPoly derivative() const {
        if (coeffs_.size() <= 1) return UniPoly();
        std::vector<C> out(coeffs_.size() - 1, C(0));
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * C(int(i));
        return UniPoly(std::move(out));
    }

    /// Evaluation by Horner within the coefficient ring.
    C eval(const C& x) const {
        C acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && field_is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    std::vector<C> coeffs_;
};

template <class C>
bool field_is_zero(const UniPoly<C>& p) {
    return p.is_zero();
}

// --- field coefficient operations -----------------------------------------

/// Quotient and remainder over a coefficient field.
template <class C>
std::pair<UniPoly<C>, UniPoly<C>> divmod_field(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) throw InternalError("polynomial division by zero");
    std::vector<C> rem(a.coeffs());
    std::int64_t db = b.deg();
    if (a.deg() < db) return {UniPoly<C>(), a};
    std::vector<C> quo(a.deg() - db + 1, C(0));
    C inv_lc = C(1) / b.lc();
    for (std::int64_t i = a.deg(); i >= db; --i) {
        C c = rem[i] * inv_lc;
        if (field_is_zero(c)) continue;
        quo[i - db] = c;
        for (std::int64_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeff(j);
    }
    return {UniPoly<C>(std::move(quo)), UniPoly<C>(std::move(rem))};
}

template <class C>
UniPoly<C> monic(const UniPoly<C>& p) {
    if (p.is_zero()) return p;
    return p.scaled(C(1) / p.lc());
}

/// Monic gcd over a coefficient field; gcd(p, 0) = monic(p).
template <class C>
UniPoly<C> gcd_field(UniPoly<C> a, UniPoly<C> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod_field(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Exact division over a field; throws if the division leaves a remainder.
template <class C>
UniPoly<C> exact_div_field(const UniPoly<C>& a, const UniPoly<C>& b) {
    auto [q, r] = divmod_field(a, b);
    if (!r.is_zero()) throw InternalError("inexact polynomial division");
    return q;
}

/// Yun's squarefree decomposition over a field of characteristic zero.
/// Returns pairs (factor, multiplicity) with monic squarefree factors of
/// degree >= 1; the product of factor^multiplicity equals monic(f).
template <class C>
std::vector<std::pair<UniPoly<C>, int>> squarefree_decomposition(const UniPoly<C>& f) {
    std::vector<std::pair<UniPoly<C>, int>> out;
    if (f.deg() <= 0) return out;
    UniPoly<C> fm = monic(f);
    UniPoly<C> fp = fm.derivative();
    UniPoly<C> a0 = gcd_field(fm, fp);
    UniPoly<C> b = exact_div_field(fm, a0);
    UniPoly<C> c = exact_div_field(fp, a0);
    UniPoly<C> d = c - b.derivative();
    int i = 1;
    while (b.deg() > 0) {
        UniPoly<C> ai = gcd_field(b, d);
        if (ai.deg() > 0) out.emplace_back(ai, i);
        b = exact_div_field(b, ai);
        c = exact_div_field(d, ai);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// --- ring (non-field) coefficient operations -------------------------------

inline Rat exact_div_coeff(const Rat& a, const Rat& b) { return a / b; }
inline GaussRat exact_div_coeff(const GaussRat& a, const GaussRat& b) { return a / b; }
inline UniPoly<Rat> exact_div_coeff(const UniPoly<Rat>& a, const UniPoly<Rat>& b) {
    return exact_div_field(a, b);
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
/// The full power is always applied (padded when the degree drops early), as
/// the subresultant divisions require.
template <class C>
UniPoly<C> pseudo_rem(UniPoly<C> a, const UniPoly<C>& b) {
    if (b.is_zero()) throw InternalError("pseudo-division by zero");
    std::int64_t db = b.deg();
    if (a.deg() < db) return a;
    std::int64_t remaining = a.deg() - db + 1;
    while (!a.is_zero() && a.deg() >= db) {
        UniPoly<C> shifted = UniPoly<C>::monomial(a.lc(), std::size_t(a.deg() - db)) * b;
        a = a.scaled(b.lc()) - shifted;
        --remaining;
    }
    for (; remaining > 0; --remaining) a = a.scaled(b.lc());
    return a;
}

/// Content (gcd of coefficients) of a polynomial over Q[t]; monic convention.
inline UniPoly<Rat> content_qt(const UniPoly<UniPoly<Rat>>& p) {
    UniPoly<Rat> c;
    for (const auto& coeff : p.coeffs()) c = gcd_field(c, coeff);
    return c;  // monic by gcd_field; zero polynomial for p = 0
}

inline UniPoly<UniPoly<Rat>> primitive_part_qt(const UniPoly<UniPoly<Rat>>& p) {
    if (p.is_zero()) return p;
    UniPoly<Rat> c = content_qt(p);
    std::vector<UniPoly<Rat>> out;
    out.reserve(p.coeffs().size());
    for (const auto& coeff : p.coeffs()) out.push_back(exact_div_field(coeff, c));
    return UniPoly<UniPoly<Rat>>(std::move(out));
}

/// Subresultant-PRS gcd in (Q[t])[a]: primitive result, deterministic sign.
/// Keeps intermediate coefficients polynomial (no fractions) per the standard
/// Brown algorithm; contents are split off first.
inline UniPoly<UniPoly<Rat>> gcd_qt(UniPoly<UniPoly<Rat>> a, UniPoly<UniPoly<Rat>> b) {
    using P = UniPoly<UniPoly<Rat>>;
    using Ct = UniPoly<Rat>;
    if (a.is_zero()) return primitive_part_qt(b);
    if (b.is_zero()) return primitive_part_qt(a);
    Ct ca = content_qt(a), cb = content_qt(b);
    Ct d = gcd_field(ca, cb);
    a = primitive_part_qt(a);
    b = primitive_part_qt(b);
    if (a.deg() < b.deg()) std::swap(a, b);
    Ct g = Ct::one(), h = Ct::one();
    while (true) {
        std::int64_t delta = a.deg() - b.deg();
        P r = pseudo_rem(a, b);
        if (r.is_zero()) break;
        if (r.deg() == 0) {
            // gcd lives entirely in the content
            return P(d);
        }
        a = b;
        Ct divisor = g;
        for (std::int64_t k = 0; k < delta; ++k) divisor = divisor * h;
        std::vector<Ct> scaled;
        scaled.reserve(r.coeffs().size());
        for (const auto& c : r.coeffs()) scaled.push_back(exact_div_field(c, divisor));
        b = P(std::move(scaled));
        g = a.lc();
        if (delta > 0) {
            Ct gp = g;
            for (std::int64_t k = 1; k < delta; ++k) gp = gp * g;
            Ct hp = Ct::one();
            for (std::int64_t k = 1; k < delta; ++k) hp = hp * h;
            h = exact_div_field(gp, hp);
        }
    }
    P result = primitive_part_qt(b);
    std::vector<Ct> lifted;
    lifted.reserve(result.coeffs().size());
    for (const auto& c : result.coeffs()) lifted.push_back(c * d);
    return P(std::move(lifted));
}

/// Squarefree over the fraction field Q(t): gcd with the derivative is
/// constant in the main variable.
inline bool squarefree_over_qt(const UniPoly<UniPoly<Rat>>& p) {
    if (p.deg() <= 0) return true;
    return gcd_qt(p, p.derivative()).deg() == 0;
}

// forward declaration; RatFunc is defined below
struct RatFunc;

/// Monic gcd over the fraction field Q(t): the primitive gcd with its leading
/// coefficient divided out. gcd(p, 0) = monic(p).
UniPoly<RatFunc> gcd_uni_qt(const UniPoly<UniPoly<Rat>>& p,
                            const UniPoly<UniPoly<Rat>>& q);

// --- rational functions in t ------------------------------------------------

/// Element of Q(t), normalized: monic denominator, reduced fraction.
struct RatFunc {
    UniPoly<Rat> num;
    UniPoly<Rat> den{UniPoly<Rat>::one()};

    RatFunc() : num() {}
    RatFunc(int n) : num(n == 0 ? UniPoly<Rat>() : UniPoly<Rat>(Rat(n))) {}
    explicit RatFunc(UniPoly<Rat> n) : num(std::move(n)) {}
    RatFunc(UniPoly<Rat> n, UniPoly<Rat> d) : num(std::move(n)), den(std::move(d)) {
        normalize();
    }

    bool is_zero() const { return num.is_zero(); }
    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    void normalize() {
        if (den.is_zero()) throw InternalError("rational function with zero denominator");
        if (num.is_zero()) {
            den = UniPoly<Rat>::one();
            return;
        }
        UniPoly<Rat> g = gcd_field(num, den);
        num = exact_div_field(num, g);
        den = exact_div_field(den, g);
        Rat l = den.lc();
        num = num.scaled(Rat(1) / l);
        den = den.scaled(Rat(1) / l);
    }

    RatFunc operator-() const {
        RatFunc out = *this;
        out.num = -out.num;
        return out;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw InternalError("rational function division by zero");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    /// Evaluation at a rational point; nullopt when the denominator vanishes.
    std::optional<Rat> eval(const Rat& t0) const {
        Rat d = den.eval(t0);
        if (d == 0) return std::nullopt;
        return num.eval(t0) / d;
    }
};

inline bool field_is_zero(const RatFunc& v) { return v.is_zero(); }

inline UniPoly<RatFunc> gcd_uni_qt(const UniPoly<UniPoly<Rat>>& p,
                                   const UniPoly<UniPoly<Rat>>& q) {
    UniPoly<UniPoly<Rat>> g = gcd_qt(p, q);
    if (g.is_zero()) return UniPoly<RatFunc>();
    std::vector<RatFunc> coeffs;
    coeffs.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) coeffs.emplace_back(c, g.lc());
    return UniPoly<RatFunc>(std::move(coeffs));
}

// --- printing ----------------------------------------------------------------

template <class C>
std::string to_string(const UniPoly<C>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::int64_t i = p.deg(); i >= 0; --i) {
        C c = p.coeff(std::size_t(i));
        if (field_is_zero(c)) continue;
        std::string cs = field_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string body;
        if (i == 0) {
            body = neg ? cs.substr(1) : cs;
        } else {
            std::string var_part = var + (i > 1 ? "^" + std::to_string(i) : "");
            if (cs == "1" || cs == "-1") {
                body = var_part;
            } else {
                std::string mag = neg ? cs.substr(1) : cs;
                bool parens = mag.find('+') != std::string::npos ||
                              mag.find('-') != std::string::npos;
                body = (parens ? "(" + mag + ")" : mag) + "*" + var_part;
            }
        }
        if (out.empty()) {
            out = neg ? "-" + body : body;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

inline std::string field_str(const UniPoly<Rat>& p) { return to_string(p, "t"); }
inline std::string field_str(const RatFunc& f) {
    if (f.den == UniPoly<Rat>::one()) return to_string(f.num, "t");
    return "(" + to_string(f.num, "t") + ")/(" + to_string(f.den, "t") + ")";
}

// --- evaluation with ball arithmetic ----------------------------------------

template <class K>
CBall eval_ball(const UniPoly<K>& p, const CBall& x) {
    CBall acc{GaussRat(0)};
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = ball_mul(acc, x);
        acc = ball_add(acc, CBall(to_gauss(p.coeff(i))));
    }
    return acc;
}

// --- conversions between MPoly slices and UniPoly ----------------------------

/// Coefficient of x^i y^j z^k as a polynomial in t.
template <class K>
UniPoly<K> t_coefficients(const MPoly<K>& p, const Exp& spatial) {
    std::vector<K> out;
    for (const auto& [e, c] : p.terms()) {
        if (e[0] != spatial[0] || e[1] != spatial[1] || e[2] != spatial[2]) continue;
        if (out.size() <= e[3]) out.resize(e[3] + 1, K(0));
        out[e[3]] = c;
    }
    return UniPoly<K>(std::move(out));
}

}  // namespace germlab
