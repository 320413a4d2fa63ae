#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "germlab/common.hpp"

namespace germlab {

// Expression templates stay off so that arithmetic yields concrete values;
// template deduction all over this library relies on that.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

/// Exact rational; stored in lowest terms with positive denominator.
/// The backend maintains both invariants through every arithmetic operation.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Safe construction from a possibly negative or unreduced pair.
/// (The boost two-argument constructor rejects negative denominators.)
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    Rat r(num);
    r /= Rat(den);
    return r;
}

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }
inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// "p/q" with the "/q" omitted for integers.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Parses "p", "-p", or "p/q". Returns nullopt on malformed text.
inline std::optional<Rat> rat_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rat(Int(text));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Int d(den);
        if (d == 0) return std::nullopt;
        return make_rat(Int(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rat rat_pow(const Rat& base, std::int64_t e) {
    if (e < 0) {
        if (base == 0) throw InputError("zero to a negative power");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat result(1), b = base;
    std::uint64_t n = static_cast<std::uint64_t>(e);
    while (n) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

inline Int int_pow2(std::int64_t e) {
    if (e < 0) throw InternalError("int_pow2 with negative exponent");
    return Int(1) << static_cast<unsigned>(e);
}

/// 2^e for any integer e.
inline Rat rat_pow2(std::int64_t e) {
    return e >= 0 ? Rat(int_pow2(e)) : make_rat(1, int_pow2(-e));
}

/// Largest s with s*s <= n (n >= 0).
inline Int floor_sqrt(const Int& n) {
    if (n < 0) throw InternalError("floor_sqrt of negative integer");
    return sqrt(n);  // cpp_int sqrt is the integer floor square root
}

/// Smallest s with s*s >= n (n >= 0).
inline Int ceil_sqrt(const Int& n) {
    Int s = floor_sqrt(n);
    return s * s == n ? s : s + 1;
}

/// Rational upper bound of sqrt(q), q >= 0: ceil_sqrt(num*den)/den >= sqrt(q).
inline Rat sqrt_upper(const Rat& q) {
    if (q < 0) throw InternalError("sqrt_upper of negative rational");
    return make_rat(ceil_sqrt(numerator(q) * denominator(q)), denominator(q));
}

/// Rational lower bound of sqrt(q), q >= 0.
inline Rat sqrt_lower(const Rat& q) {
    if (q < 0) throw InternalError("sqrt_lower of negative rational");
    return make_rat(floor_sqrt(numerator(q) * denominator(q)), denominator(q));
}

/// Exact square root when q is a perfect rational square.
inline std::optional<Rat> sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int sn = floor_sqrt(numerator(q)), sd = floor_sqrt(denominator(q));
    if (sn * sn == numerator(q) && sd * sd == denominator(q)) return make_rat(sn, sd);
    return std::nullopt;
}

/// Two-sided dyadic enclosure of sqrt(q) with radius <= 2^-(bits).
/// Returns (center, radius), center - radius <= sqrt(q) <= center + radius.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& q, unsigned bits) {
    if (q < 0) throw InternalError("sqrt_enclosure of negative rational");
    if (auto exact = sqrt_exact(q)) return {*exact, Rat(0)};
    // sqrt(q) = sqrt(num*den) / den; bound the integer sqrt scaled by 4^k.
    Int scale = Int(1) << (2 * (bits + 1));
    Int m = numerator(q) * denominator(q) * scale;
    Int lo = floor_sqrt(m), hi = lo + 1;
    Int den = denominator(q) * (Int(1) << (bits + 1));
    Rat rlo = make_rat(lo, den), rhi = make_rat(hi, den);
    return {(rlo + rhi) / 2, (rhi - rlo) / 2};
}

/// Nearest dyadic number k/2^bits together with the exact rounding error.
inline std::pair<Rat, Rat> round_dyadic(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int num2 = numerator(x) * scale * 2;
    Int den = denominator(x);
    // round-half-up of (x*scale): floor((2*num*scale + den) / (2*den))
    Int q = (num2 + den) / (2 * den);
    if (num2 + den < 0 && (num2 + den) % (2 * den) != 0) q -= 1;  // floor for negatives
    Rat rounded = make_rat(q, scale);
    return {rounded, rat_abs(x - rounded)};
}

/// Smallest dyadic k/2^bits that is >= x. For rounding radii upward: keeps
/// an error bound rigorous while keeping its printed form short.
inline Rat ceil_dyadic(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int num = numerator(x) * scale, den = denominator(x);
    Int q = num / den;
    if (q * den < num) q += 1;
    return make_rat(q, scale);
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace germlab
