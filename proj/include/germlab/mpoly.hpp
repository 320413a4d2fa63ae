#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "germlab/gauss.hpp"

namespace germlab {

/// The fixed variable universe. Every exponent vector has one slot per
/// variable; polynomials in fewer variables simply leave slots at zero.
enum Var : int { VX = 0, VY = 1, VZ = 2, VT = 3 };
inline constexpr int kNumVars = 4;
inline constexpr std::array<char, 4> kVarNames = {'x', 'y', 'z', 't'};

using Exp = std::array<std::uint32_t, 4>;  // exponents of x, y, z, t

inline std::int64_t total_degree(const Exp& e) {
    return std::int64_t(e[0]) + e[1] + e[2] + e[3];
}

/// Graded lexicographic order over (x, y, z, t); ties in total degree break
/// by lexicographic comparison. Used only for canonical printing.
inline bool grlex_less(const Exp& a, const Exp& b) {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

// --- coefficient field helpers -------------------------------------------

inline bool field_is_zero(const Rat& v) { return v == 0; }
inline bool field_is_zero(const GaussRat& v) { return v.is_zero(); }
inline std::string field_str(const Rat& v) { return rat_to_string(v); }
inline std::string field_str(const GaussRat& v) { return gauss_to_string(v); }
inline Rat field_pow(const Rat& v, std::int64_t e) { return rat_pow(v, e); }
inline GaussRat field_pow(const GaussRat& v, std::int64_t e) { return gauss_pow(v, e); }
inline GaussRat to_gauss(const Rat& v) { return GaussRat(v); }
inline GaussRat to_gauss(const GaussRat& v) { return v; }

/// Sparse multivariate polynomial in x, y, z, t over an exact coefficient
/// field K (rationals or Gaussian rationals). The term map is canonical: no
/// zero coefficients are stored, so equal polynomials compare equal.
template <class K>
class MPoly {
public:
    using Terms = std::map<Exp, K>;

    MPoly() = default;
    explicit MPoly(K constant) {
        if (!field_is_zero(constant)) terms_.emplace(Exp{0, 0, 0, 0}, std::move(constant));
    }

    static MPoly monomial(K coeff, const Exp& e) {
        MPoly p;
        if (!field_is_zero(coeff)) p.terms_.emplace(e, std::move(coeff));
        return p;
    }
    static MPoly variable(Var v) {
        Exp e{0, 0, 0, 0};
        e[v] = 1;
        return monomial(K(1), e);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const MPoly&, const MPoly&) = default;

    bool depends_on(Var v) const {
        for (const auto& [e, c] : terms_)
            if (e[v] > 0) return true;
        return false;
    }

    /// Degree in a single variable; -1 for the zero polynomial.
    std::int64_t degree_in(Var v) const {
        std::int64_t d = -1;
        for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, e[v]);
        return d;
    }

    /// Smallest exponent of v across all terms (the v-adic order); 0 for zero poly.
    std::int64_t order_in(Var v) const {
        if (terms_.empty()) return 0;
        std::int64_t m = INT64_MAX;
        for (const auto& [e, c] : terms_) m = std::min<std::int64_t>(m, e[v]);
        return m;
    }

    /// Variables that actually occur.
    std::vector<Var> vars() const {
        std::vector<Var> out;
        for (int v = 0; v < kNumVars; ++v)
            if (depends_on(Var(v))) out.push_back(Var(v));
        return out;
    }

    /// Spatial variables (x, y, z) that occur; t never counts.
    std::vector<Var> spatial_vars() const {
        std::vector<Var> out;
        for (int v = 0; v < 3; ++v)
            if (depends_on(Var(v))) out.push_back(Var(v));
        return out;
    }

    void add_term(const Exp& e, const K& c) {
        if (field_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (field_is_zero(it->second)) terms_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }
    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e;
                for (int v = 0; v < kNumVars; ++v) {
                    std::uint64_t sum = std::uint64_t(ea[v]) + eb[v];
                    if (sum > 1u << 30) throw InputError("exponent overflow in product");
                    e[v] = std::uint32_t(sum);
                }
                out.add_term(e, ca * cb);
            }
        return out;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const K& s) const {
        MPoly out;
        if (field_is_zero(s)) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    MPoly pow(std::int64_t n) const {
        if (n < 0) throw InputError("negative polynomial power");
        MPoly result{K(1)};
        MPoly b = *this;
        std::uint64_t k = static_cast<std::uint64_t>(n);
        while (k) {
            if (k & 1) result *= b;
            b *= b;
            k >>= 1;
        }
        return result;
    }

    template <class K2, class Fn>
    MPoly<K2> map_coeffs(Fn&& f) const {
        MPoly<K2> out;
        for (const auto& [e, c] : terms_) out.add_term(e, f(c));
        return out;
    }

private:
    Terms terms_;
};

template <class K>
MPoly<K> derive(const MPoly<K>& p, Var v) {
    MPoly<K> out;
    for (const auto& [e, c] : p.terms()) {
        if (e[v] == 0) continue;
        Exp d = e;
        d[v] -= 1;
        out.add_term(d, c * K(static_cast<int>(e[v])));
    }
    return out;
}

/// Exact composition: each bound variable is replaced by its polynomial and
/// the result fully expanded. Unbound variables pass through.
template <class K>
MPoly<K> substitute(const MPoly<K>& p, const std::map<Var, MPoly<K>>& bindings) {
    // Power tables keep repeated exponents cheap.
    std::map<Var, std::vector<MPoly<K>>> powers;
    for (const auto& [v, q] : bindings) powers[v] = {MPoly<K>{K(1)}};
    auto power_of = [&](Var v, std::uint32_t e) -> const MPoly<K>& {
        auto& tab = powers[v];
        while (tab.size() <= e) tab.push_back(tab.back() * bindings.at(v));
        return tab[e];
    };
    MPoly<K> out;
    for (const auto& [e, c] : p.terms()) {
        Exp rest = e;
        MPoly<K> term;
        for (const auto& [v, q] : bindings) rest[v] = 0;
        term = MPoly<K>::monomial(c, rest);
        for (const auto& [v, q] : bindings)
            if (e[v] > 0) term *= power_of(v, e[v]);
        out += term;
    }
    return out;
}

/// Specializes one variable to a field value (typically t -> t0), possibly
/// widening the coefficient field.
template <class K2, class K>
MPoly<K2> substitute_value(const MPoly<K>& p, Var v, const K2& value) {
    MPoly<K2> out;
    for (const auto& [e, c] : p.terms()) {
        Exp rest = e;
        rest[v] = 0;
        out.add_term(rest, K2(c) * field_pow(value, e[v]));
    }
    return out;
}

/// Evaluates at a full point (vector indexed by Var; unused slots ignored).
template <class K>
K evaluate(const MPoly<K>& p, const std::array<K, 4>& point) {
    K acc{0};
    for (const auto& [e, c] : p.terms()) {
        K term = c;
        for (int v = 0; v < kNumVars; ++v)
            if (e[v]) term *= field_pow(point[v], e[v]);
        acc += term;
    }
    return acc;
}

/// Renames x <-> y. Used when the detected weights put the heavier weight on y.
template <class K>
MPoly<K> swap_xy(const MPoly<K>& p) {
    MPoly<K> out;
    for (const auto& [e, c] : p.terms()) out.add_term(Exp{e[1], e[0], e[2], e[3]}, c);
    return out;
}

namespace detail {

template <class K>
std::string monomial_str(const Exp& e, const K& coeff) {
    std::string cs = field_str(coeff);
    bool coeff_is_one = cs == "1", coeff_is_minus_one = cs == "-1";
    bool has_vars = total_degree(e) > 0;
    std::string out;
    if (!has_vars) return cs;
    if (coeff_is_one) {
        out = "";
    } else if (coeff_is_minus_one) {
        out = "-";
    } else {
        bool needs_parens = cs.find('+') != std::string::npos ||
                            cs.find('-', 1) != std::string::npos;
        out = (needs_parens ? "(" + cs + ")" : cs) + "*";
    }
    bool first = true;
    for (int v = 0; v < kNumVars; ++v) {
        if (e[v] == 0) continue;
        if (!first) out += "*";
        first = false;
        out += kVarNames[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out;
}

}  // namespace detail

/// Canonical text form: terms in descending graded-lex order, re-parseable
/// by the expression grammar when the coefficients are rational.
template <class K>
std::string to_string(const MPoly<K>& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exp, K>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string m = detail::monomial_str(terms[i].first, terms[i].second);
        if (i == 0) {
            out = m;
        } else if (!m.empty() && m[0] == '-') {
            out += " - " + m.substr(1);
        } else {
            out += " + " + m;
        }
    }
    return out;
}

}  // namespace germlab
