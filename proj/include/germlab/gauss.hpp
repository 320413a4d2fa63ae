#pragma once

#include <optional>
#include <string>

#include "germlab/rat.hpp"

namespace germlab {

/// Gaussian rational: element of Q(i). The coefficient field used whenever a
/// parameter sample or intermediate value is complex but still exact.
struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(int n) : re(n) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend bool operator==(const GaussRat&, const GaussRat&) = default;

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }

    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }  // |z|^2

    GaussRat inverse() const {
        Rat n = norm();
        if (n == 0) throw InputError("division by zero Gaussian rational");
        return {re / n, -im / n};
    }
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
};

inline GaussRat gauss_pow(const GaussRat& base, std::int64_t e) {
    if (e < 0) return gauss_pow(base, -e).inverse();
    GaussRat result(1), b = base;
    std::uint64_t n = static_cast<std::uint64_t>(e);
    while (n) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

/// "re", "im*i", or "re+im*i" with exact rational parts.
inline std::string gauss_to_string(const GaussRat& z) {
    if (z.im == 0) return rat_to_string(z.re);
    std::string imag = rat_to_string(rat_abs(z.im)) + "*i";
    if (z.im < 0) imag = "-" + imag;
    if (z.re == 0) return imag;
    return rat_to_string(z.re) + (z.im < 0 ? imag : "+" + imag);
}

/// Parses "re", "im*i", "i", "-i", or "re+im*i" / "re-im*i".
inline std::optional<GaussRat> gauss_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto parse_imag = [](std::string s) -> std::optional<Rat> {
        bool neg = false;
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
            neg = s[0] == '-';
            s = s.substr(1);
        }
        if (s == "i") return Rat(neg ? -1 : 1);
        if (s.size() > 2 && s.substr(s.size() - 2) == "*i") {
            auto r = rat_from_string(s.substr(0, s.size() - 2));
            if (!r) return std::nullopt;
            return neg ? Rat(-*r) : *r;
        }
        return std::nullopt;
    };
    // pure real or pure imaginary
    if (auto r = rat_from_string(text)) return GaussRat(*r);
    if (auto i = parse_imag(text)) return GaussRat(Rat(0), *i);
    // re+im*i: split at the last top-level +/- that is not the leading sign
    for (std::size_t pos = text.size(); pos-- > 1;) {
        if (text[pos] != '+' && text[pos] != '-') continue;
        if (text[pos - 1] == '/' ) continue;  // inside a rational like "1/-2" (malformed anyway)
        auto re = rat_from_string(text.substr(0, pos));
        auto im = parse_imag(text.substr(pos));
        if (re && im) return GaussRat(*re, *im);
    }
    return std::nullopt;
}

/// Rational upper bound of |z|.
inline Rat modulus_upper(const GaussRat& z) { return sqrt_upper(z.norm()); }

/// Rational lower bound of |z|.
inline Rat modulus_lower(const GaussRat& z) { return sqrt_lower(z.norm()); }

/// Exact Gaussian-rational square root, when one exists.
inline std::optional<GaussRat> gauss_sqrt_exact(const GaussRat& z) {
    if (z.is_zero()) return GaussRat(0);
    // w^2 = z  =>  w.re^2 = (re + |z|)/2, w.im^2 = (|z| - re)/2, 2*re*im = z.im
    auto mod = sqrt_exact(z.norm());
    if (!mod) return std::nullopt;
    auto c2 = (*mod + z.re) / 2;
    auto c = sqrt_exact(c2);
    if (!c) return std::nullopt;
    if (*c == 0) {
        auto d = sqrt_exact((*mod - z.re) / 2);
        if (!d) return std::nullopt;
        return GaussRat(Rat(0), *d);
    }
    Rat d = z.im / (2 * *c);
    GaussRat w(*c, d);
    if (w * w == z) return w;
    return std::nullopt;
}

}  // namespace germlab
