#pragma once

// Verifiers for the digit and block decompositions of gbent and g-hyperbent
// functions. Each verifier recomputes both sides of every claim and reports
// per-clause outcomes; nothing is assumed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "gbf.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "props.hpp"
#include "spectral.hpp"

namespace gbentlab {

struct Clause {
    std::string claim;
    bool verdict = false;
    bool required = false;  ///< false for informational clauses
    nlohmann::json witness;
};

struct DecompositionReport {
    std::string theorem;
    bool hypotheses_met = false;
    std::vector<Clause> clauses;
    std::optional<std::vector<int>> sign_pattern;

    /// No required clause failed.
    bool ok() const {
        for (const auto& c : clauses)
            if (c.required && !c.verdict) return false;
        return true;
    }
};

enum class SplitMode { Check, Iff };

namespace decomp_detail {

inline nlohmann::json witness_json(const PropertyReport& r) {
    if (!r.witness) return nullptr;
    nlohmann::json w{{"u", r.witness->u}};
    if (r.witness->i) w["i"] = *r.witness->i;
    return w;
}

/// Generalized bentness appropriate to the domain: g-hyperbent on fields, gbent otherwise.
inline PropertyReport flat_property(const GBF& f, const Exec& exec) {
    return f.domain() == Domain::Field ? is_ghyperbent(f, {}, exec) : is_gbent(f, exec);
}

inline void add(DecompositionReport& rep, std::string claim, bool verdict, bool required,
                nlohmann::json witness = nullptr) {
    rep.clauses.push_back({std::move(claim), verdict, required, std::move(witness)});
}

inline std::string mask_label(std::uint32_t mask, unsigned bits) {
    std::string s = "(";
    for (unsigned i = 0; i < bits; ++i) s += std::string(i ? "," : "") + (((mask >> i) & 1) ? "1" : "0");
    return s + ")";
}

/// eps_u with b(u) = eps_u a(u); throws SignUndefined at a zero of a.
inline std::vector<int> extract_signs(const Spectrum& a, const Spectrum& b) {
    std::vector<int> eps(a.size(), 0);
    for (std::uint32_t u = 0; u < a.size(); ++u) {
        if (a[u].is_zero()) throw SignUndefined("H_h vanishes at u=" + std::to_string(u));
        if (b[u] == a[u]) eps[u] = 1;
        else if (b[u] == -a[u]) eps[u] = -1;
    }
    return eps;
}

}  // namespace decomp_detail

/// Digit components g_c against bent / hyperbent (even n) or semibent (odd n).
inline DecompositionReport verify_component_theorem(const GBF& f, const Exec& exec = {}) {
    using namespace decomp_detail;
    require(f.k() >= 2, "component theorem needs k >= 2");
    const bool field = f.domain() == Domain::Field;
    const bool even = f.n() % 2 == 0;
    const std::uint32_t comps = std::uint32_t{1} << (f.k() - 1);
    DecompositionReport rep;
    PropertyReport whole = even ? flat_property(f, exec) : is_gbent(f, exec);
    rep.theorem = even ? (field ? "components-hyperbent" : "components-bent") : "components-semibent";
    rep.hypotheses_met = whole.verdict;
    add(rep, std::string("f is ") + (even && field ? "g-hyperbent" : "gbent"), whole.verdict, false,
        witness_json(whole));

    std::vector<PropertyReport> parts(comps);
    parallel_for(comps, exec, [&](std::size_t c) {
        GBF g = component_gc_mask(f, static_cast<std::uint32_t>(c));
        parts[c] = !even ? is_semibent(g) : field ? is_hyperbent(g) : is_bent(g);
    });
    bool all = true;
    for (std::uint32_t c = 0; c < comps; ++c) {
        all = all && parts[c].verdict;
        add(rep, "g_" + mask_label(c, f.k() - 1) + " is " + parts[c].property, parts[c].verdict,
            whole.verdict, witness_json(parts[c]));
    }
    if (even)
        add(rep, std::string("f ") + (field ? "g-hyperbent" : "gbent") + " iff every g_c is " +
                     parts[0].property,
            whole.verdict == all, field);
    return rep;
}

/// f = g + 2h with g Boolean; (i) f gbent, (ii) h and h + 2^(k-2) g gbent
/// with H_{h + 2^(k-2) g} = +-H_h pointwise.
inline DecompositionReport verify_split_k_km1(const GBF& f, SplitMode mode = SplitMode::Check,
                                              const Exec& exec = {}) {
    using namespace decomp_detail;
    require(f.k() >= 2, "split needs k >= 2");
    const bool even = f.n() % 2 == 0;
    if (mode == SplitMode::Iff)
        require(even || f.k() >= 3, "equivalence mode needs n even or k >= 3");
    const unsigned k = f.k();
    auto [g, h] = split_low_high(f, 1);
    std::vector<std::uint32_t> t2(f.size());
    const std::uint32_t top = std::uint32_t{1} << (k - 2), m1 = (std::uint32_t{1} << (k - 1)) - 1;
    for (std::size_t x = 0; x < f.size(); ++x) t2[x] = (h.table()[x] + top * g.table()[x]) & m1;
    GBF h2 = h.rebuild(k - 1, std::move(t2));

    DecompositionReport rep;
    rep.theorem = mode == SplitMode::Iff ? "split-iff" : "split";
    rep.hypotheses_met = true;

    const Spectrum Hf = gwht_direct(f, exec);
    const Spectrum Hh = gwht_fast_components(h, exec);
    const Spectrum Hh2 = gwht_fast_components(h2, exec);
    const bool i_holds = !props_detail::first_non_flat(Hf).has_value();
    const bool h_flat = !props_detail::first_non_flat(Hh).has_value();
    const bool h2_flat = !props_detail::first_non_flat(Hh2).has_value();

    std::optional<std::vector<int>> eps;
    nlohmann::json sign_witness = nullptr;
    try {
        auto e = extract_signs(Hh, Hh2);
        std::optional<std::uint32_t> bad;
        for (std::uint32_t u = 0; u < e.size() && !bad; ++u)
            if (e[u] == 0) bad = u;
        if (bad) sign_witness = {{"u", *bad}, {"reason", "not +-H_h"}};
        else eps = std::move(e);
    } catch (const SignUndefined& ex) {
        sign_witness = {{"reason", ex.what()}};
    }
    const bool ii_holds = h_flat && h2_flat && eps.has_value();

    add(rep, "(i) f is gbent", i_holds, false);
    add(rep, "(ii) h is gbent", h_flat, false);
    add(rep, "(ii) h + 2^(k-2) g is gbent", h2_flat, false);
    add(rep, "(ii) H_{h+2^(k-2)g}(u) = +-H_h(u) for all u", eps.has_value(), false, sign_witness);
    add(rep, "(ii) implies (i)", !ii_holds || i_holds, true);
    const bool converse_required = mode == SplitMode::Iff ? (even || k >= 3) : even;
    add(rep, "(i) implies (ii)", !i_holds || ii_holds, converse_required);

    // 2 H_f = (1 + zeta) H_h + (1 - zeta) H_{h2}, lifted to level k.
    const CycloInt one = CycloInt::integer(k, 1), z = zeta_pow(k, 1);
    const CycloInt a = one + z, b = one - z;
    bool reassembled = true, sign_form = eps.has_value();
    nlohmann::json reassembly_witness = nullptr;
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        const CycloInt lh = Hh[u].lift(k), lh2 = Hh2[u].lift(k);
        if (a * lh + b * lh2 != Hf[u] * 2) {
            reassembled = false;
            reassembly_witness = {{"u", u}};
            break;
        }
        if (eps && (a + b * (*eps)[u]) * lh != Hf[u] * 2) sign_form = false;
    }
    add(rep, "2 H_f = (1+zeta) H_h + (1-zeta) H_{h+2^(k-2)g}", reassembled, true, reassembly_witness);
    if (eps) add(rep, "2 H_f = (1+zeta + eps_u (1-zeta)) H_h", sign_form, true);

    std::vector<std::uint32_t> back(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) back[x] = g.table()[x] + 2 * h.table()[x];
    add(rep, "f = g + 2h pointwise", std::equal(back.begin(), back.end(), f.table().begin()), true);
    rep.sign_pattern = std::move(eps);
    return rep;
}

/// f = g + 2^t h: h and h + 2^(k-2t) g inherit generalized bentness.
inline DecompositionReport verify_t_split(const GBF& f, unsigned t, const Exec& exec = {}) {
    using namespace decomp_detail;
    require(t >= 1 && f.k() >= 2 * t, "block split needs k >= 2t >= 2");
    DecompositionReport rep;
    rep.theorem = "t-split";
    const bool field = f.domain() == Domain::Field;
    const std::string prop = field ? "g-hyperbent" : "gbent";
    PropertyReport whole = flat_property(f, exec);
    const bool structural = f.n() % 2 == 0 || f.k() >= 3;
    rep.hypotheses_met = whole.verdict && structural;
    add(rep, "f is " + prop, whole.verdict, false, witness_json(whole));
    add(rep, "n even or k >= 3", structural, false);

    auto [g, h] = split_low_high(f, t);
    const unsigned kh = f.k() - t;
    const std::uint32_t mh = (std::uint32_t{1} << kh) - 1, shift = std::uint32_t{1} << (f.k() - 2 * t);
    std::vector<std::uint32_t> t2(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) t2[x] = (h.table()[x] + shift * g.table()[x]) & mh;
    GBF h2 = h.rebuild(kh, std::move(t2));
    PropertyReport rh = flat_property(h, exec), rh2 = flat_property(h2, exec);
    add(rep, "h is " + prop + " at level 2^(k-t)", rh.verdict, rep.hypotheses_met, witness_json(rh));
    add(rep, "h + 2^(k-2t) g is " + prop + " at level 2^(k-t)", rh2.verdict, rep.hypotheses_met,
        witness_json(rh2));
    return rep;
}

/// g_c = a_s + 2 a_{s+1} + ... + 2^(k-s) (c_1 a_1 ^ ... ^ c_{s-1} a_{s-1} ^ a_k), level k-s+1.
inline GBF recursive_component(const GBF& f, unsigned s, std::span<const std::uint8_t> c) {
    require(s >= 1 && s <= f.k(), "recursion depth s must satisfy 1 <= s <= k");
    require(c.size() == s - 1, "selector must have length s-1 = " + std::to_string(s - 1));
    const unsigned k = f.k(), level = k - s + 1;
    std::vector<std::uint32_t> t(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        const std::uint32_t v = f.table()[x];
        std::uint32_t top = (v >> (k - 1)) & 1;
        for (unsigned i = 0; i + 1 < s; ++i) {
            require(c[i] <= 1, "selector entries must be bits");
            if (c[i]) top ^= (v >> i) & 1;
        }
        std::uint32_t low = 0;
        for (unsigned j = s; j < k; ++j) low |= ((v >> (j - 1)) & 1) << (j - s);
        t[x] = low | (top << (level - 1));
    }
    return f.rebuild(level, std::move(t));
}

inline DecompositionReport verify_recursive_gc(const GBF& f, unsigned s, std::span<const std::uint8_t> c,
                                               const Exec& exec = {}) {
    using namespace decomp_detail;
    const unsigned k = f.k();
    GBF gc = recursive_component(f, s, c);
    const bool even = f.n() % 2 == 0;
    DecompositionReport rep;
    rep.theorem = "recursive";
    PropertyReport whole = is_gbent(f, exec);
    rep.hypotheses_met = whole.verdict;
    add(rep, "f is gbent", whole.verdict, false, witness_json(whole));

    std::string label = "(";
    for (std::size_t i = 0; i < c.size(); ++i) label += std::string(i ? "," : "") + (c[i] ? "1" : "0");
    label += ")";
    if (s == 1) add(rep, "g_() equals f", gc == f, true);

    if (!even && s == k) {
        PropertyReport r = is_semibent(gc);
        add(rep, "g_" + label + " is semibent", r.verdict, whole.verdict, witness_json(r));
    } else {
        PropertyReport r = is_gbent(gc, exec);
        add(rep, "g_" + label + " is gbent at level 2^(k-s+1)", r.verdict, whole.verdict && (even || s < k),
            witness_json(r));
    }

    if (!c.empty()) {
        // Siblings (c', 0) and (c', 1) at depth s; their parent is c' at depth s-1.
        std::vector<std::uint8_t> c0(c.begin(), c.end()), c1 = c0;
        c0.back() = 0;
        c1.back() = 1;
        const GBF g0 = recursive_component(f, s, c0), g1 = recursive_component(f, s, c1);
        const Spectrum H0 = gwht_fast_components(g0, exec), H1 = gwht_fast_components(g1, exec);
        bool signs = true;
        nlohmann::json w = nullptr;
        for (std::uint32_t u = 0; u < H0.size() && signs; ++u)
            if (H0[u].is_zero() || (H1[u] != H0[u] && H1[u] != -H0[u])) {
                signs = false;
                w = {{"u", u}};
            }
        add(rep, "H_{g_(c',1)}(u) = +-H_{g_(c',0)}(u) for all u", signs, whole.verdict && (even || s < k), w);

        std::vector<std::uint8_t> parent_c(c.begin(), c.end() - 1);
        const GBF parent = recursive_component(f, s - 1, parent_c);
        const bool parent_flat = is_gbent(parent, exec).verdict;
        const bool kids_flat = !props_detail::first_non_flat(H0) && !props_detail::first_non_flat(H1);
        add(rep, "siblings gbent with +- relation implies parent gbent",
            !(kids_flat && signs) || parent_flat, true);
    }
    return rep;
}

/// Z_{2^t}-linear components g_c of f = b_1 + 2^t b_2 + ... + 2^((l-1)t) b_l,
/// plus recombination of their spectra into the spectrum of f.
inline DecompositionReport verify_base2t_theorem(const GBF& f, unsigned t, const Exec& exec = {}) {
    using namespace decomp_detail;
    require(t >= 1 && f.k() % t == 0, "block width t must divide k");
    const unsigned l = f.k() / t;
    const unsigned bits = t * (l - 1);
    if (bits > 20)
        throw BudgetError("base-2^t theorem would need 2^" + std::to_string(bits) + " components (limit 2^20)");
    const std::size_t count = std::size_t{1} << bits;
    const bool field = f.domain() == Domain::Field;
    const std::string prop = field ? "g-hyperbent" : "gbent";

    DecompositionReport rep;
    rep.theorem = "base2t";
    PropertyReport whole = flat_property(f, exec);
    const bool structural = f.n() % 2 == 0 || t >= 2;
    rep.hypotheses_met = whole.verdict && structural;
    add(rep, "f is " + prop, whole.verdict, false, witness_json(whole));
    add(rep, "n even or t >= 2", structural, false);

    std::vector<GBF> comps;
    comps.reserve(count);
    for (std::size_t c = 0; c < count; ++c) comps.push_back(component_base2t(f, t, base2t_coeffs(c, t, l)));
    std::vector<PropertyReport> verdicts(count);
    parallel_for(count, exec, [&](std::size_t c) {
        verdicts[c] = field ? is_ghyperbent(comps[c]) : is_gbent(comps[c]);
    });
    for (std::size_t c = 0; c < count; ++c) {
        std::string label = "(";
        auto cc = base2t_coeffs(c, t, l);
        for (std::size_t j = 0; j < cc.size(); ++j) label += (j ? "," : "") + std::to_string(cc[j]);
        add(rep, "g_" + label + ") is " + prop + " at level 2^t", verdicts[c].verdict, rep.hypotheses_met,
            witness_json(verdicts[c]));
    }

    std::vector<std::uint32_t> exps = field ? f.field()->coprime_exponents() : std::vector<std::uint32_t>{1};
    bool exact = true;
    nlohmann::json w = nullptr;
    for (std::uint32_t i : exps) {
        std::vector<Spectrum> sp;
        sp.reserve(count);
        for (const auto& g : comps) sp.push_back(field ? ewht(g, i) : gwht(g));
        Spectrum rebuilt = combine_base2t_spectra(sp, t, f.k());
        Spectrum ref = field ? ewht(f, i, TransformPath::Direct) : gwht_direct(f);
        if (!(rebuilt == ref)) {
            exact = false;
            w = {{"i", i}};
            break;
        }
    }
    add(rep, field ? "component spectra recombine to H_{f,i} for every decimation i"
                   : "component spectra recombine to H_f",
        exact, true, w);
    return rep;
}

}  // namespace gbentlab
