#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "germlab/common.hpp"

namespace germlab {

// Plain-data report document. Every numeric field is carried as an exact
// string ("p/q" rationals, ball centers and radii as rational pairs), so the
// JSON form round-trips bit-exactly and the text output renders the same
// document. Schema changes here are deliberate, versioned diffs.

struct ValueDoc {
    std::string type;     // "exact" | "ball"
    std::string value;    // exact rational as p/q (empty for balls)
    std::string re;       // ball center, real part
    std::string im;       // ball center, imaginary part
    std::string radius;   // ball radius
    std::string minpoly;  // monic minimal quadratic when known, else empty
    friend bool operator==(const ValueDoc&, const ValueDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ValueDoc, type, value, re, im, radius,
                                                minpoly)

struct BranchDoc {
    ValueDoc a;
    int multiplicity = 1;
    bool clustered = false;
    friend bool operator==(const BranchDoc&, const BranchDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BranchDoc, a, multiplicity, clustered)

struct PolarDoc {
    bool computed = false;
    bool degenerate = false;
    long long x_axis_order = 0;
    bool y_axis_in_branches = false;
    bool squarefree = false;
    std::string p;  // dehomogenized polar polynomial in a
    std::vector<BranchDoc> branches;
    friend bool operator==(const PolarDoc&, const PolarDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PolarDoc, computed, degenerate,
                                                x_axis_order, y_axis_in_branches,
                                                squarefree, p, branches)

struct KEntryDoc {
    ValueDoc a;
    ValueDoc k;
    bool degenerate_fy = false;
    friend bool operator==(const KEntryDoc&, const KEntryDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(KEntryDoc, a, k, degenerate_fy)

struct KReportDoc {
    bool computed = false;
    std::string equality;  // "all_equal" | "vacuous" | "unequal" | "undecided"
    bool used_ball_policy = false;
    bool excluded_axis = false;
    long long witness_i = -1;
    long long witness_j = -1;
    std::vector<KEntryDoc> entries;
    std::vector<std::string> notes;
    friend bool operator==(const KReportDoc&, const KReportDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(KReportDoc, computed, equality,
                                                used_ball_policy, excluded_axis,
                                                witness_i, witness_j, entries, notes)

struct HPEntryDoc {
    ValueDoc a;
    ValueDoc c;
    bool certified_zero = false;
    bool possibly_zero = false;
    friend bool operator==(const HPEntryDoc&, const HPEntryDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(HPEntryDoc, a, c, certified_zero,
                                                possibly_zero)

struct HPReportDoc {
    bool computed = false;
    std::vector<HPEntryDoc> entries;
    std::vector<ValueDoc> ratios;
    long long base_index = -1;
    long long zero_count = 0;
    long long possibly_zero_count = 0;
    friend bool operator==(const HPReportDoc&, const HPReportDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(HPReportDoc, computed, entries, ratios,
                                                base_index, zero_count,
                                                possibly_zero_count)

struct MilnorDoc {
    bool computed = false;
    long long mu = 0;
    long long method_dimension = 0;
    long long method_formula = 0;
    long long orbit_codim = 0;
    std::string error;
    friend bool operator==(const MilnorDoc&, const MilnorDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MilnorDoc, computed, mu,
                                                method_dimension, method_formula,
                                                orbit_codim, error)

struct RetestDoc {
    std::string t0;
    bool inside_domain = false;
    bool member = false;
    bool isolated = false;
    friend bool operator==(const RetestDoc&, const RetestDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RetestDoc, t0, inside_domain, member,
                                                isolated)

struct MembershipDoc {
    bool computed = false;
    bool member = false;
    std::string target;
    std::vector<std::string> generator_labels;
    std::vector<std::string> generators;
    std::vector<std::string> multiplier_num;  // parallel to generators
    std::vector<std::string> multiplier_den;
    std::vector<std::string> exceptional_rational;
    std::vector<std::string> exceptional_conditions;  // polynomials in t set to 0
    std::string residual_num;
    std::string residual_den;
    std::vector<RetestDoc> retests;
    std::vector<std::string> revalidation_samples;  // extra t where member re-verified
    friend bool operator==(const MembershipDoc&, const MembershipDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MembershipDoc, computed, member, target,
                                                generator_labels, generators,
                                                multiplier_num, multiplier_den,
                                                exceptional_rational,
                                                exceptional_conditions, residual_num,
                                                residual_den, retests,
                                                revalidation_samples)

struct ReducedPathDoc {
    std::string t0;
    std::string status;  // "success" | "not_applicable" | "failed"
    std::string reason;
    std::string k_common;
    std::string cofactor_u;
    std::string residual;
    bool u_vanishes_at_origin = true;
    friend bool operator==(const ReducedPathDoc&, const ReducedPathDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ReducedPathDoc, t0, status, reason,
                                                k_common, cofactor_u, residual,
                                                u_vanishes_at_origin)

struct SampleDoc {
    std::string t0;
    bool complex_t0 = false;
    bool user_sample = true;
    std::string error;  // nonempty: this sample failed (reason inside)
    bool isolated = false;
    PolarDoc polar;
    KReportDoc k;
    HPReportDoc hp;
    MilnorDoc milnor;
    MembershipDoc membership_at_t0;
    friend bool operator==(const SampleDoc&, const SampleDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SampleDoc, t0, complex_t0, user_sample,
                                                error, isolated, polar, k, hp, milnor,
                                                membership_at_t0)

struct WeightsDoc {
    std::vector<std::string> vars;
    std::vector<long long> w;
    long long d = 0;
    bool homogeneous = false;
    bool ambiguous = false;
    bool swapped = false;
    friend bool operator==(const WeightsDoc&, const WeightsDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(WeightsDoc, vars, w, d, homogeneous,
                                                ambiguous, swapped)

struct ComparisonDoc {
    std::string t0_a;
    std::string t0_b;
    std::string verdict;  // "DISTINGUISHED" | "NOT_DISTINGUISHED"
    std::string detail;
    friend bool operator==(const ComparisonDoc&, const ComparisonDoc&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ComparisonDoc, t0_a, t0_b, verdict,
                                                detail)

struct ReportDocument {
    std::string tool = "germlab";
    std::string version = kVersion;
    std::string command;
    std::string input_expression;
    std::string canonical;           // analyzed polynomial (post-swap coordinates)
    std::string original_canonical;  // as parsed, pre-swap
    std::string domain_note;
    WeightsDoc weights;
    std::vector<SampleDoc> samples;
    MembershipDoc membership_generic;
    std::vector<ReducedPathDoc> reduced_paths;
    std::vector<ComparisonDoc> comparisons;
    std::string verdict;
    std::vector<std::string> verdict_details;
    std::vector<std::string> inconclusive_reasons;
    std::vector<std::string> footnotes;
    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ReportDocument, tool, version, command,
                                                input_expression, canonical,
                                                original_canonical, domain_note, weights,
                                                samples, membership_generic,
                                                reduced_paths, comparisons, verdict,
                                                verdict_details, inconclusive_reasons,
                                                footnotes)

inline std::string report_to_json(const ReportDocument& doc) {
    nlohmann::json j = doc;
    return j.dump(2);
}

inline ReportDocument report_from_json(const std::string& text) {
    return nlohmann::json::parse(text).get<ReportDocument>();
}

// --- text rendering -------------------------------------------------------------

namespace detail {

inline std::string value_str(const ValueDoc& v) {
    if (v.type == "exact") return v.value;
    std::string s = "[" + v.re;
    if (v.im != "0") s += (v.im[0] == '-' ? " - " + v.im.substr(1) : " + " + v.im) + "*i";
    s += " +/- " + v.radius + "]";
    if (!v.minpoly.empty()) s += " (root of " + v.minpoly + ")";
    return s;
}

}  // namespace detail

/// Human-readable rendering of the same document; numbers are identical to
/// the JSON form by construction.
inline std::string report_to_text(const ReportDocument& doc) {
    std::string out;
    auto line = [&](const std::string& s) { out += s + "\n"; };
    line(doc.tool + " " + doc.version + " — " + doc.command);
    line("input: " + doc.input_expression);
    if (!doc.original_canonical.empty() && doc.original_canonical != doc.canonical)
        line("parsed: " + doc.original_canonical);
    line("analyzed: " + doc.canonical);
    if (!doc.domain_note.empty()) line("domain: " + doc.domain_note);
    if (!doc.weights.vars.empty()) {
        std::string w = "weights: (";
        for (std::size_t i = 0; i < doc.weights.w.size(); ++i)
            w += (i ? ", " : "") + std::to_string(doc.weights.w[i]);
        w += "), degree " + std::to_string(doc.weights.d);
        if (doc.weights.homogeneous) w += " [homogeneous]";
        if (doc.weights.ambiguous) w += " [ambiguous grading]";
        if (doc.weights.swapped) w += " [x and y swapped]";
        line(w);
    }
    for (const auto& s : doc.samples) {
        line("");
        line("sample t = " + s.t0 + (s.user_sample ? "" : " (auto)"));
        if (!s.error.empty()) {
            line("  error: " + s.error);
            continue;
        }
        line(std::string("  isolated singularity: ") + (s.isolated ? "yes" : "no"));
        if (s.milnor.computed) {
            line("  milnor number: " + std::to_string(s.milnor.mu) + " (dimension " +
                 std::to_string(s.milnor.method_dimension) + ", formula " +
                 std::to_string(s.milnor.method_formula) + "), orbit codim " +
                 std::to_string(s.milnor.orbit_codim));
        } else if (!s.milnor.error.empty()) {
            line("  milnor number: not computed (" + s.milnor.error + ")");
        }
        if (s.polar.computed) {
            if (s.polar.degenerate) {
                line("  polar: degenerate (F_x vanishes identically at this t)");
            } else {
                line("  polar p(a) = " + s.polar.p +
                     (s.polar.squarefree ? "  [squarefree]" : "  [not squarefree]"));
                if (s.polar.x_axis_order > 0)
                    line("  polar axis component {y=0} of order " +
                         std::to_string(s.polar.x_axis_order) + " (excluded)");
                for (const auto& b : s.polar.branches)
                    line("    branch a = " + detail::value_str(b.a) + "  (mult " +
                         std::to_string(b.multiplicity) +
                         (b.clustered ? ", clustered)" : ")"));
            }
        }
        if (s.k.computed) {
            for (const auto& e : s.k.entries)
                line("    k(" + detail::value_str(e.a) + ") = " +
                     (e.degenerate_fy ? "undefined (F_y = 0)" : detail::value_str(e.k)));
            line("  k-condition: " + s.k.equality +
                 (s.k.used_ball_policy ? " (ball policy used)" : ""));
            if (s.k.witness_i >= 0)
                line("  k-witness: branches " + std::to_string(s.k.witness_i) + " and " +
                     std::to_string(s.k.witness_j));
            for (const auto& n : s.k.notes) line("  note: " + n);
        }
        if (s.hp.computed) {
            for (const auto& e : s.hp.entries)
                line("    c(" + detail::value_str(e.a) + ") = " + detail::value_str(e.c));
            std::string ratios = "  normalized ratios: {";
            for (std::size_t i = 0; i < s.hp.ratios.size(); ++i)
                ratios += (i ? ", " : "") + detail::value_str(s.hp.ratios[i]);
            line(ratios + "}");
            if (s.hp.zero_count > 0)
                line("  vanishing leading coefficients: " +
                     std::to_string(s.hp.zero_count));
        }
        if (s.membership_at_t0.computed)
            line(std::string("  F_t in TF at this t: ") +
                 (s.membership_at_t0.member ? "member" : "not a member"));
    }
    if (doc.membership_generic.computed) {
        line("");
        line(std::string("membership of F_t in TF over Q(t): ") +
             (doc.membership_generic.member ? "MEMBER (generic t)"
                                            : "NOT a member (generic t)"));
        const auto& m = doc.membership_generic;
        for (std::size_t g = 0; g < m.generators.size(); ++g) {
            if (g < m.multiplier_num.size() && m.multiplier_num[g] != "0" &&
                !m.multiplier_num[g].empty()) {
                std::string mult = m.multiplier_num[g];
                if (m.multiplier_den[g] != "1")
                    mult = "(" + mult + ") / (" + m.multiplier_den[g] + ")";
                line("  multiplier of " + m.generator_labels[g] + " = " + m.generators[g] +
                     ":  " + mult);
            }
        }
        for (const auto& r : m.exceptional_rational) line("  exceptional t = " + r);
        for (const auto& c : m.exceptional_conditions)
            line("  exceptional t: roots of " + c + " = 0");
        if (!m.member && !m.residual_num.empty()) {
            std::string res = m.residual_num;
            if (m.residual_den != "1" && !m.residual_den.empty())
                res = "(" + res + ") / (" + m.residual_den + ")";
            line("  residual: " + res);
        }
        for (const auto& rt : m.retests)
            line("  re-test at exceptional t = " + rt.t0 + ": " +
                 (rt.member ? "member" : "not a member") + ", isolated: " +
                 (rt.isolated ? "yes" : "no") +
                 (rt.inside_domain ? "" : " (outside declared domain)"));
        for (const auto& rv : m.revalidation_samples)
            line("  membership re-verified at t = " + rv);
    }
    for (const auto& rp : doc.reduced_paths) {
        line("");
        line("reduced-polar path at t = " + rp.t0 + ": " + rp.status);
        if (!rp.reason.empty()) line("  " + rp.reason);
        if (rp.status == "success") {
            line("  common k = " + rp.k_common);
            line("  cofactor u = " + rp.cofactor_u + "  (u(0,0) = 0: " +
                 (rp.u_vanishes_at_origin ? "yes" : "no") + ")");
            line("  residual F_t - k*y*F_y = " + rp.residual);
        }
    }
    for (const auto& c : doc.comparisons) {
        line("");
        line("compare members t = " + c.t0_a + " vs t = " + c.t0_b + ": " + c.verdict);
        if (!c.detail.empty()) line("  " + c.detail);
    }
    if (!doc.verdict.empty()) {
        line("");
        line("verdict: " + doc.verdict);
        for (const auto& d : doc.verdict_details) line("  " + d);
        for (const auto& r : doc.inconclusive_reasons) line("  reason: " + r);
    }
    if (!doc.footnotes.empty()) {
        line("");
        line("notes:");
        for (const auto& f : doc.footnotes) line("  - " + f);
    }
    return out;
}

}  // namespace germlab
