#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "germlab/linalg.hpp"
#include "germlab/mpoly.hpp"

namespace germlab {

/// Positive integer weights, one per spatial variable, with the weighted
/// degree. Primitive: gcd(w_1, ..., w_n, d) = 1. The parameter t is never
/// weighted.
struct WeightSystem {
    std::vector<Var> vars;           // spatial variables, canonical order
    std::vector<std::int64_t> w;     // weights, parallel to vars
    std::int64_t d = 0;

    int nvars() const { return static_cast<int>(vars.size()); }
    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

/// Weighted degree of an exponent vector.
inline std::int64_t wdegree(const Exp& m, const WeightSystem& ws) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < ws.vars.size(); ++i)
        acc += ws.w[i] * std::int64_t(m[ws.vars[i]]);
    return acc;
}

/// Plain-vector overload with the explicit length check.
inline std::int64_t wdegree(const std::vector<std::int64_t>& m, const WeightSystem& ws) {
    if (m.size() != ws.w.size())
        throw InputError("exponent vector length does not match the weight system");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) acc += ws.w[i] * m[i];
    return acc;
}

/// Weighted degree when p is w-homogeneous (ignoring t); nullopt otherwise
/// or for the zero polynomial.
template <class K>
std::optional<std::int64_t> whomog_degree(const MPoly<K>& p, const WeightSystem& ws) {
    if (p.is_zero()) return std::nullopt;
    std::optional<std::int64_t> deg;
    for (const auto& [e, c] : p.terms()) {
        std::int64_t w = wdegree(e, ws);
        if (!deg) {
            deg = w;
        } else if (*deg != w) {
            return std::nullopt;
        }
    }
    return deg;
}

struct WeightDetection {
    enum class Kind { WeightedHomogeneous, Homogeneous, NotWeightedHomogeneous };
    Kind kind = Kind::NotWeightedHomogeneous;
    std::optional<WeightSystem> ws;  // present except for NotWeightedHomogeneous
    bool ambiguous = false;          // solution space had dimension > 1
};

namespace detail {

inline std::optional<WeightSystem> normalize_weights(std::vector<Var> vars,
                                                     std::vector<Rat> ray,
                                                     const Exp& sample) {
    // flip to positive if uniformly negative
    bool all_neg = true, all_pos = true;
    for (const auto& r : ray) {
        if (r <= 0) all_pos = false;
        if (r >= 0) all_neg = false;
    }
    if (all_neg)
        for (auto& r : ray) r = -r;
    else if (!all_pos)
        return std::nullopt;
    // clear denominators, divide by content
    Int lcm = 1;
    for (const auto& r : ray) lcm = lcm / gcd(lcm, denominator(r)) * denominator(r);
    std::vector<Int> wi;
    for (const auto& r : ray) wi.push_back(numerator(r) * (lcm / denominator(r)));
    Int g = 0;
    for (const auto& v : wi) g = gcd(g, v);
    WeightSystem ws;
    ws.vars = std::move(vars);
    for (const auto& v : wi) {
        Int reduced = v / g;
        if (reduced <= 0 || reduced > Int(1) << 40) return std::nullopt;
        ws.w.push_back(reduced.convert_to<std::int64_t>());
    }
    std::int64_t d = 0;
    for (std::size_t i = 0; i < ws.vars.size(); ++i)
        d += ws.w[i] * std::int64_t(sample[ws.vars[i]]);
    ws.d = d;
    return ws;
}

}  // namespace detail

/// Detects the weight system making every monomial of f (t treated as a
/// coefficient parameter) share one weighted degree. The solution ray is
/// unique for generic inputs; when the solution space has dimension > 1 the
/// lexicographically smallest primitive positive solution is returned with
/// the ambiguity flag set (bounded search, components <= 512).
template <class K>
WeightDetection detect_weights(const MPoly<K>& f) {
    if (f.is_zero()) throw InputError("cannot detect weights of the zero polynomial");
    std::vector<Var> vars = f.spatial_vars();
    if (vars.empty()) throw InputError("polynomial has no spatial variable (x, y, z)");
    const int n = static_cast<int>(vars.size());

    std::set<std::vector<std::int64_t>> spatial;
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::int64_t> m;
        for (Var v : vars) m.push_back(e[v]);
        spatial.insert(std::move(m));
    }
    std::vector<std::vector<std::int64_t>> ms(spatial.begin(), spatial.end());

    Mat<Rat> diff;
    for (std::size_t j = 1; j < ms.size(); ++j) {
        std::vector<Rat> row;
        for (int i = 0; i < n; ++i) row.push_back(Rat(ms[j][i] - ms[0][i]));
        diff.push_back(std::move(row));
    }

    auto finish = [&](std::vector<Rat> ray, bool ambiguous) {
        WeightDetection out;
        Exp sample{0, 0, 0, 0};
        for (int i = 0; i < n; ++i) sample[vars[i]] = std::uint32_t(ms[0][i]);
        auto ws = detail::normalize_weights(vars, std::move(ray), sample);
        if (!ws) return out;  // NotWeightedHomogeneous
        bool homogeneous = std::all_of(ws->w.begin(), ws->w.end(),
                                       [&](std::int64_t v) { return v == ws->w[0]; });
        out.kind = homogeneous ? WeightDetection::Kind::Homogeneous
                               : WeightDetection::Kind::WeightedHomogeneous;
        out.ws = std::move(ws);
        out.ambiguous = ambiguous;
        return out;
    };

    if (diff.empty()) {
        // single monomial: every weight vector works
        return finish(std::vector<Rat>(n, Rat(1)), true);
    }

    auto basis = nullspace_field(diff);
    if (basis.empty()) return WeightDetection{};  // only the zero solution
    if (basis.size() == 1) return finish(std::move(basis[0]), false);

    // Ambiguous case (possible only for degenerate inputs): search the
    // lexicographically smallest positive integer solution directly.
    constexpr std::int64_t kCap = 512;
    auto satisfies = [&](const std::vector<std::int64_t>& w) {
        for (const auto& row : diff) {
            Rat acc(0);
            for (int i = 0; i < n; ++i) acc += row[i] * Rat(w[i]);
            if (acc != 0) return false;
        }
        return true;
    };
    std::vector<std::int64_t> w(n, 1);
    auto advance = [&]() {
        for (int i = n - 1; i >= 0; --i) {
            if (w[i] < kCap) {
                ++w[i];
                for (int j = i + 1; j < n; ++j) w[j] = 1;
                return true;
            }
        }
        return false;
    };
    // lexicographic enumeration: (1,1,..) then last coordinate fastest —
    // matches lexicographic order on the full vector
    do {
        if (satisfies(w)) {
            std::vector<Rat> ray;
            for (auto v : w) ray.push_back(Rat(v));
            return finish(std::move(ray), true);
        }
    } while (advance());
    return WeightDetection{};
}

/// Monomial basis of the space of w-homogeneous polynomials of weighted
/// degree e, sorted descending in the canonical (lex) order.
struct GradedBasis {
    WeightSystem ws;
    std::int64_t e = 0;
    std::vector<Exp> monomials;
};

inline GradedBasis graded_basis(const WeightSystem& ws, std::int64_t e) {
    GradedBasis out;
    out.ws = ws;
    out.e = e;
    if (e < 0) return out;
    std::vector<Exp> acc;
    Exp current{0, 0, 0, 0};
    auto rec = [&](auto&& self, std::size_t i, std::int64_t remaining) -> void {
        if (i == ws.vars.size()) {
            if (remaining == 0) acc.push_back(current);
            return;
        }
        std::int64_t max_e = remaining / ws.w[i];
        for (std::int64_t k = 0; k <= max_e; ++k) {
            current[ws.vars[i]] = std::uint32_t(k);
            self(self, i + 1, remaining - k * ws.w[i]);
        }
        current[ws.vars[i]] = 0;
    };
    rec(rec, 0, e);
    std::sort(acc.begin(), acc.end(), [](const Exp& a, const Exp& b) { return b < a; });
    out.monomials = std::move(acc);
    return out;
}

}  // namespace germlab
