#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <vector>

#include "germlab/algebraic.hpp"

namespace germlab {

struct RootConfig {
    unsigned precision_bits = 128;
    Rat epsilon = rat_pow2(-40);  // cluster-collapse threshold for ball roots
};

/// A branch coefficient: exact rational (or exact Gaussian rational, carried
/// as a zero-radius ball in reports), or a certified ball. Roots of explicit
/// quadratics additionally carry their minimal polynomial, which downstream
/// invariant computations use for exact arithmetic.
template <class K>
struct AlgebraicCoeff {
    enum class Kind { Exact, Ball };
    Kind kind = Kind::Exact;
    K exact{0};
    CBall ball;
    std::optional<QuadSpec<K>> quad;
    int quad_sel = +1;  // +1 canonical root, -1 conjugate root

    bool is_exact_value() const { return kind == Kind::Exact; }
    CBall enclosure() const {
        return kind == Kind::Exact ? CBall(to_gauss(exact)) : ball;
    }
    friend bool operator==(const AlgebraicCoeff&, const AlgebraicCoeff&) = default;
};

template <class K>
struct IsolatedRoot {
    AlgebraicCoeff<K> value;
    int multiplicity = 1;
    UniPoly<K> factor;  // monic squarefree factor this root annihilates
    bool clustered = false;
};

namespace detail {

inline std::vector<Int> small_divisors(Int n) {
    // all positive divisors; callers cap |n| beforehand
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Deflates all rational roots out of a squarefree monic f (in place).
inline std::vector<Rat> rational_roots(UniPoly<Rat>& f) {
    std::vector<Rat> out;
    if (f.deg() < 1) return out;
    while (f.deg() >= 1 && f.coeff(0) == 0) {
        out.push_back(Rat(0));
        std::vector<Rat> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = UniPoly<Rat>(std::move(shifted));
    }
    if (f.deg() < 1) return out;
    // integerize: candidates are (divisor of c0)/(divisor of cn)
    Int lcm = 1;
    for (const auto& c : f.coeffs()) lcm = lcm / gcd(lcm, denominator(c)) * denominator(c);
    std::vector<Int> ic;
    for (const auto& c : f.coeffs()) ic.push_back(numerator(c) * (lcm / denominator(c)));
    Int content = 0;
    for (const auto& v : ic) content = gcd(content, v);
    for (auto& v : ic) v /= content;
    constexpr std::int64_t kDivisorCap = 1000000000000LL;  // 10^12
    Int c0 = ic.front(), cn = ic.back();
    if (abs(c0) > kDivisorCap || abs(cn) > kDivisorCap) return out;
    auto ps = small_divisors(c0), qs = small_divisors(cn);
    for (const Int& q : qs) {
        for (const Int& p : ps) {
            for (int sign : {1, -1}) {
                Rat cand = make_rat(sign * p, q);
                if (f.deg() >= 1 && f.eval(cand) == 0) {
                    out.push_back(cand);
                    // synthetic division by (a - cand)
                    std::vector<Rat> quo(std::size_t(f.deg()), Rat(0));
                    Rat carry = 0;
                    for (std::int64_t i = f.deg(); i >= 1; --i) {
                        carry = f.coeff(std::size_t(i)) + carry * cand;
                        quo[std::size_t(i - 1)] = carry;
                    }
                    f = UniPoly<Rat>(std::move(quo));
                }
            }
        }
    }
    return out;
}

template <class K>
std::vector<std::complex<double>> to_complex_doubles(const UniPoly<K>& f) {
    std::vector<std::complex<double>> out;
    for (const auto& c : f.coeffs()) {
        GaussRat g = to_gauss(c);
        out.emplace_back(rat_to_double(g.re), rat_to_double(g.im));
    }
    return out;
}

inline std::complex<double> horner(const std::vector<std::complex<double>>& c,
                                   std::complex<double> z) {
    std::complex<double> acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

/// Aberth-Ehrlich simultaneous iteration in double precision. Deterministic:
/// fixed initial points on a circle scaled by the Cauchy bound, fixed
/// iteration budget and tolerance.
inline std::vector<std::complex<double>> aberth(
    const std::vector<std::complex<double>>& coeffs) {
    const std::size_t n = coeffs.size() - 1;  // degree, monic expected
    std::vector<std::complex<double>> deriv(n);
    for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = coeffs[i] * double(i);
    double radius = 0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(coeffs[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(n);
    const double pi = 3.14159265358979323846;
    for (std::size_t k = 0; k < n; ++k) {
        double theta = 2.0 * pi * double(k) / double(n) + 0.4;
        z[k] = std::polar(radius * 0.8, theta);
    }
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> fz = horner(coeffs, z[k]);
            std::complex<double> fpz = horner(deriv, z[k]);
            std::complex<double> w = fpz == 0.0 ? fz : fz / fpz;
            std::complex<double> sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            std::complex<double> denom = 1.0 - w * sum;
            std::complex<double> corr = denom == 0.0 ? w : w / denom;
            z[k] -= corr;
            worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[k])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

inline GaussRat dyadic_from_double(std::complex<double> z, unsigned bits) {
    auto cvt = [bits](double v) {
        if (!std::isfinite(v)) v = 0.0;
        Rat r(v);
        return round_dyadic(r, bits).first;
    };
    return GaussRat(cvt(z.real()), cvt(z.imag()));
}

template <class K>
GaussRat eval_exact(const UniPoly<K>& f, const GaussRat& z) {
    GaussRat acc(0);
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * z + to_gauss(f.coeff(i));
    return acc;
}

/// Certified inclusion radius: every point z has a root of f within
/// n * |f(z)/f'(z)|. Exact rational bound; nullopt when f'(z) = 0.
template <class K>
std::optional<Rat> inclusion_radius(const UniPoly<K>& f, const UniPoly<K>& fp,
                                    const GaussRat& z) {
    GaussRat fz = eval_exact(f, z), fpz = eval_exact(fp, z);
    if (fpz.is_zero()) return std::nullopt;
    Rat lb = modulus_lower(fpz);
    if (lb == 0) return std::nullopt;
    return Rat(std::int64_t(f.deg())) * modulus_upper(fz) / lb;
}

}  // namespace detail

/// Isolates the roots of a nonzero univariate polynomial over K (= Rat or
/// GaussRat). Multiplicities come from the squarefree decomposition, never
/// from numeric clustering; rational roots and roots of quadratic factors are
/// exact; everything else is certified by exact residual bounds.
template <class K>
std::vector<IsolatedRoot<K>> isolate_roots(const UniPoly<K>& input, const RootConfig& cfg) {
    if (input.is_zero()) throw InternalError("isolate_roots on the zero polynomial");
    std::vector<IsolatedRoot<K>> out;
    if (input.deg() == 0) return out;

    auto decomposition = squarefree_decomposition(input);
    for (auto& [factor, mult] : decomposition) {
        UniPoly<K> f = factor;
        if constexpr (std::is_same_v<K, Rat>) {
            for (const Rat& root : detail::rational_roots(f)) {
                IsolatedRoot<K> r;
                r.value.kind = AlgebraicCoeff<K>::Kind::Exact;
                r.value.exact = root;
                r.multiplicity = mult;
                r.factor = factor;
                out.push_back(std::move(r));
            }
        }
        if (f.deg() <= 0) continue;
        if (f.deg() == 1) {
            IsolatedRoot<K> r;
            r.value.kind = AlgebraicCoeff<K>::Kind::Exact;
            r.value.exact = -f.coeff(0) / f.coeff(1);
            r.multiplicity = mult;
            r.factor = factor;
            out.push_back(std::move(r));
            continue;
        }
        if (f.deg() == 2) {
            K a = f.coeff(2);
            QuadSpec<K> q{f.coeff(1) / a, f.coeff(0) / a};
            if (auto delta = [&]() -> std::optional<K> {
                    if constexpr (std::is_same_v<K, Rat>) {
                        return sqrt_exact(q.disc());
                    } else {
                        return gauss_sqrt_exact(q.disc());
                    }
                }()) {
                for (int sign : {+1, -1}) {
                    IsolatedRoot<K> r;
                    r.value.kind = AlgebraicCoeff<K>::Kind::Exact;
                    r.value.exact = (-q.p + K(sign) * *delta) / K(2);
                    r.multiplicity = mult;
                    r.factor = factor;
                    out.push_back(std::move(r));
                }
                continue;
            }
            for (int sel : {+1, -1}) {
                IsolatedRoot<K> r;
                r.value.kind = AlgebraicCoeff<K>::Kind::Ball;
                r.value.quad = q;
                r.value.quad_sel = sel;
                r.value.ball = sel > 0 ? quad_alpha_ball(q, cfg.precision_bits)
                                       : quad_beta_ball(q, cfg.precision_bits);
                r.multiplicity = mult;
                r.factor = factor;
                out.push_back(std::move(r));
            }
            continue;
        }

        // numeric path for degree >= 3 squarefree factors
        UniPoly<K> fp = f.derivative();
        auto approx = detail::aberth(detail::to_complex_doubles(f));
        // conj_of[k] >= 0 marks k as the mirror image of another candidate;
        // mirrors are never refined, only copied. For real coefficients this
        // makes the root multiset conjugation-closed exactly.
        std::vector<int> conj_of(approx.size(), -1);
        if constexpr (std::is_same_v<K, Rat>) {
            for (auto& z : approx)
                if (std::abs(z.imag()) < 1e-9 * (1.0 + std::abs(z))) z.imag(0.0);
            for (std::size_t k = 0; k < approx.size(); ++k) {
                if (approx[k].imag() <= 0) continue;
                std::size_t best = approx.size();
                double best_dist = 1e300;
                for (std::size_t j = 0; j < approx.size(); ++j) {
                    if (conj_of[j] >= 0 || approx[j].imag() >= 0) continue;
                    double dist = std::abs(approx[j] - std::conj(approx[k]));
                    if (dist < best_dist) {
                        best_dist = dist;
                        best = j;
                    }
                }
                if (best < approx.size()) conj_of[best] = int(k);
            }
        }

        const std::size_t count = approx.size();
        std::vector<GaussRat> centers(count);
        std::vector<Rat> radii(count, Rat(1));
        unsigned target = cfg.precision_bits + 8;
        bool certified = false;
        bool first_pass = true;
        for (unsigned bits = 64; bits <= 4 * target && !certified; bits *= 2) {
            unsigned work = bits + 32;
            for (std::size_t k = 0; k < count; ++k) {
                if (conj_of[k] >= 0) continue;
                GaussRat z = first_pass ? detail::dyadic_from_double(approx[k], 60)
                                        : centers[k];
                for (int step = 0; step < 80; ++step) {
                    GaussRat fz = detail::eval_exact(f, z);
                    if (fz.is_zero()) break;
                    GaussRat fpz = detail::eval_exact(fp, z);
                    if (fpz.is_zero()) break;
                    GaussRat next = z - fz / fpz;
                    z = GaussRat(round_dyadic(next.re, work).first,
                                 round_dyadic(next.im, work).first);
                    auto rad = detail::inclusion_radius(f, fp, z);
                    if (rad && *rad <= rat_pow2(-std::int64_t(bits))) break;
                }
                centers[k] = z;
                GaussRat fz = detail::eval_exact(f, z);
                if (fz.is_zero()) {
                    radii[k] = 0;
                } else {
                    auto rad = detail::inclusion_radius(f, fp, z);
                    radii[k] = rad ? ceil_dyadic(*rad, bits + 16) : Rat(1);
                }
            }
            for (std::size_t k = 0; k < count; ++k) {
                if (conj_of[k] < 0) continue;
                centers[k] = centers[std::size_t(conj_of[k])].conj();
                radii[k] = radii[std::size_t(conj_of[k])];
            }
            first_pass = false;
            certified = true;
            for (std::size_t k = 0; k < count && certified; ++k) {
                if (radii[k] > cfg.epsilon) certified = false;
                for (std::size_t j = k + 1; j < count && certified; ++j)
                    if (modulus_lower(centers[k] - centers[j]) <= radii[k] + radii[j])
                        certified = false;
            }
        }

        if (certified) {
            for (std::size_t k = 0; k < count; ++k) {
                IsolatedRoot<K> r;
                bool stored_exact = false;
                if (radii[k] == 0) {
                    if constexpr (std::is_same_v<K, Rat>) {
                        if (centers[k].im == 0) {
                            r.value.kind = AlgebraicCoeff<K>::Kind::Exact;
                            r.value.exact = centers[k].re;
                            stored_exact = true;
                        }
                    } else {
                        r.value.kind = AlgebraicCoeff<K>::Kind::Exact;
                        r.value.exact = centers[k];
                        stored_exact = true;
                    }
                }
                if (!stored_exact) {
                    r.value.kind = AlgebraicCoeff<K>::Kind::Ball;
                    r.value.ball = CBall(centers[k], radii[k]);
                }
                r.multiplicity = mult;
                r.factor = factor;
                out.push_back(std::move(r));
            }
        } else {
            // cluster collapse: group overlapping enclosures and keep one
            // representative per group with the summed multiplicity
            std::vector<bool> used(count, false);
            for (std::size_t k = 0; k < count; ++k) {
                if (used[k]) continue;
                GaussRat center = centers[k];
                Rat radius = radii[k];
                int group = 1;
                for (std::size_t j = k + 1; j < count; ++j) {
                    if (used[j]) continue;
                    if (modulus_lower(centers[k] - centers[j]) <= radii[k] + radii[j] ||
                        modulus_upper(centers[k] - centers[j]) <= cfg.epsilon) {
                        used[j] = true;
                        ++group;
                        radius = radius + modulus_upper(centers[k] - centers[j]) + radii[j];
                    }
                }
                IsolatedRoot<K> r;
                r.value.kind = AlgebraicCoeff<K>::Kind::Ball;
                r.value.ball = CBall(center, radius);
                r.multiplicity = mult * group;
                r.factor = factor;
                r.clustered = group > 1;
                out.push_back(std::move(r));
            }
        }
    }

    // canonical order: descending by (re, im) of the value or ball center
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        GaussRat ka = a.value.enclosure().c, kb = b.value.enclosure().c;
        if (ka.re != kb.re) return ka.re > kb.re;
        if (ka.im != kb.im) return ka.im > kb.im;
        return a.multiplicity > b.multiplicity;
    });

    std::int64_t total = 0;
    for (const auto& r : out) total += r.multiplicity;
    if (total != input.deg())
        throw InternalError("root multiplicities do not sum to the degree");
    return out;
}

/// Recomputes the enclosure of a root at higher precision. Exact roots are
/// untouched; quadratic roots recompute their closed-form enclosure; numeric
/// roots take further Newton steps from the current center.
template <class K>
void refine_root(AlgebraicCoeff<K>& coeff, const UniPoly<K>& factor, unsigned bits) {
    if (coeff.kind == AlgebraicCoeff<K>::Kind::Exact) return;
    if (coeff.quad) {
        coeff.ball = coeff.quad_sel > 0 ? quad_alpha_ball(*coeff.quad, bits)
                                        : quad_beta_ball(*coeff.quad, bits);
        return;
    }
    UniPoly<K> fp = factor.derivative();
    GaussRat z = coeff.ball.c;
    unsigned work = bits + 32;
    for (int step = 0; step < 80; ++step) {
        GaussRat fz = detail::eval_exact(factor, z);
        if (fz.is_zero()) break;
        GaussRat fpz = detail::eval_exact(fp, z);
        if (fpz.is_zero()) return;  // keep the old enclosure
        GaussRat next = z - fz / fpz;
        z = GaussRat(round_dyadic(next.re, work).first, round_dyadic(next.im, work).first);
        auto rad = detail::inclusion_radius(factor, fp, z);
        if (rad && *rad <= rat_pow2(-std::int64_t(bits))) break;
    }
    auto rad = detail::eval_exact(factor, z).is_zero()
                   ? std::optional<Rat>(Rat(0))
                   : detail::inclusion_radius(factor, fp, z);
    if (!rad) return;
    Rat rounded = *rad == 0 ? Rat(0) : ceil_dyadic(*rad, bits + 16);
    // accept only refinements that stay inside (an overlap of) the old ball
    if (rounded <= coeff.ball.r &&
        modulus_upper(z - coeff.ball.c) <= coeff.ball.r + rounded) {
        coeff.ball = CBall(z, rounded);
    }
}

}  // namespace germlab
