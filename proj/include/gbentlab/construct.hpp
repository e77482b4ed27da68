#pragma once

// Builders for two g-hyperbent families on F_{2^(2m)}: the generalized
// partial-spread function g(y'/y) and functions constant on the cosets of
// F_{2^m}^* indexed by the unit circle U.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gbf.hpp"

namespace gbentlab {

/// g_table[t] = g(t) for t an element of the standalone F_{2^m} (default modulus).
struct PsApSpec {
    unsigned half_n = 1;
    unsigned k = 1;
    std::vector<std::uint32_t> g_table;
};

/// u_values[j] is the value on the coset of the j-th element of U (ascending).
struct CosetUSpec {
    unsigned n = 2;
    unsigned k = 3;
    std::uint32_t f0 = 0;
    std::vector<std::uint32_t> u_values;
};

/// sum_t zeta^g(t) at level k.
inline CycloInt zeta_sum(unsigned k, std::span<const std::uint32_t> values) {
    CycloInt s(k);
    for (auto v : values) s += zeta_pow(k, v);
    return s;
}

/// Coordinates x -> (Tr(b1 x), Tr(b2 x)) over F_{2^m}, with b1, b2 a self-dual
/// basis: Tr(b1^2) = Tr(b2^2) = 1 and Tr(b1 b2) = 0 (relative traces).
struct PsApFrame {
    Subfield sub;
    Elem beta1 = 0, beta2 = 0;

    std::pair<std::uint32_t, std::uint32_t> coords(const FieldCtx& F, Elem x) const {
        const unsigned m = sub.small->n();
        return {static_cast<std::uint32_t>(sub.index[F.rel_trace(m, F.mul(beta1, x))]),
                static_cast<std::uint32_t>(sub.index[F.rel_trace(m, F.mul(beta2, x))])};
    }
};

/// Smallest self-dual pair (b1, b2) in lexicographic order.
inline PsApFrame ps_ap_frame(const FieldCtx& F) {
    require(F.n() % 2 == 0, "partial-spread construction needs even n");
    const unsigned m = F.n() / 2;
    PsApFrame fr{F.subfield(m), 0, 0};
    auto T = [&](Elem a) { return F.rel_trace(m, a); };
    for (Elem b1 = 1; b1 <= F.mask(); ++b1) {
        if (T(F.sqr(b1)) != 1) continue;
        for (Elem b2 = 1; b2 <= F.mask(); ++b2) {
            if (T(F.sqr(b2)) != 1 || T(F.mul(b1, b2)) != 0) continue;
            fr.beta1 = b1;
            fr.beta2 = b2;
            return fr;
        }
    }
    throw InvariantError("no self-dual basis of F_{2^n} over F_{2^m} found");
}

inline void validate_ps_ap(const PsApSpec& s) {
    require(s.half_n >= 1 && 2 * s.half_n <= field_detail::kMaxDegree, "half_n must be in [1, 12]");
    require(s.k >= 1 && s.k <= kMaxLevel, "k must be in [1, 12]");
    const std::size_t len = std::size_t{1} << s.half_n;
    require(s.g_table.size() == len, "g_table must have 2^m = " + std::to_string(len) + " entries, got " +
                                         std::to_string(s.g_table.size()));
    for (auto v : s.g_table)
        require(v < (std::uint32_t{1} << s.k), "g_table value " + std::to_string(v) + " is not below 2^k");
    require(s.g_table[0] == 0, "g(0) must be 0");
    require(zeta_sum(s.k, s.g_table).is_zero(), "sum over t of zeta^g(t) must vanish");
}

/// f(x) = g(y'/y), y'/y := 0 when y = 0.
inline GBF construct_ps_ap(const PsApSpec& spec, std::shared_ptr<const FieldCtx> ctx) {
    validate_ps_ap(spec);
    require(ctx != nullptr, "field context required");
    require(ctx->n() == 2 * spec.half_n, "field degree must be 2m = " + std::to_string(2 * spec.half_n));
    const PsApFrame fr = ps_ap_frame(*ctx);
    const FieldCtx& S = *fr.sub.small;
    std::vector<std::uint32_t> t(ctx->size());
    for (Elem x = 0; x <= ctx->mask(); ++x) {
        auto [yp, y] = fr.coords(*ctx, x);
        std::uint32_t ratio = y == 0 ? 0 : S.mul(yp, S.inv(y));
        t[x] = spec.g_table[ratio];
    }
    return GBF(std::move(ctx), spec.k, std::move(t));
}

inline GBF construct_ps_ap(const PsApSpec& spec) {
    return construct_ps_ap(spec, FieldCtx::make(2 * spec.half_n));
}

/// t -> g(1/t), 1/0 := 0.
inline PsApSpec invert_ps_ap(const PsApSpec& spec) {
    auto S = FieldCtx::make(spec.half_n);
    PsApSpec out = spec;
    for (Elem t = 0; t < spec.g_table.size(); ++t) out.g_table[t] = spec.g_table[t ? S->inv(t) : 0];
    return out;
}

/// g(0) = 0, one t0 with g(t0) = 2^(k-1), all other points in pairs (v, v + 2^(k-1)).
inline std::vector<std::uint32_t> sample_ps_ap_g(unsigned m, unsigned k, std::uint64_t seed) {
    require(m >= 1 && 2 * m <= field_detail::kMaxDegree, "m must be in [1, 12]");
    require(k >= 1 && k <= kMaxLevel, "k must be in [1, 12]");
    std::mt19937_64 rng(seed);
    const std::uint32_t q = std::uint32_t{1} << k, half = q / 2;
    const std::size_t len = std::size_t{1} << m;
    std::vector<std::uint32_t> pts(len - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<std::uint32_t>(i + 1);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<std::uint32_t> g(len, 0);
    g[pts[0]] = half;
    std::uniform_int_distribution<std::uint32_t> val(0, q - 1);
    for (std::size_t i = 1; i < pts.size(); i += 2) {
        std::uint32_t v = val(rng);
        g[pts[i]] = v;
        g[pts[i + 1]] = (v + half) & (q - 1);
    }
    return g;
}

/// Uniform tables with g(0) = 0, redrawn until the zeta sum vanishes.
inline std::vector<std::uint32_t> sample_ps_ap_g_rejection(unsigned m, unsigned k, std::uint64_t seed,
                                                           std::uint64_t max_attempts = 1u << 20) {
    require(m >= 1 && 2 * m <= field_detail::kMaxDegree, "m must be in [1, 12]");
    require(k >= 1 && k <= kMaxLevel, "k must be in [1, 12]");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> val(0, (std::uint32_t{1} << k) - 1);
    std::vector<std::uint32_t> g(std::size_t{1} << m, 0);
    for (std::uint64_t a = 0; a < max_attempts; ++a) {
        for (std::size_t t = 1; t < g.size(); ++t) g[t] = val(rng);
        if (zeta_sum(k, g).is_zero()) return g;
    }
    throw BudgetError("rejection sampling found no admissible g within " + std::to_string(max_attempts) +
                      " attempts");
}

struct CosetUCriterion {
    bool holds = false;
    CycloInt sum;
    CycloInt target;
};

inline void validate_coset_u(const CosetUSpec& s) {
    require(s.k >= 3, "coset-U construction needs k >= 3");
    require(s.k <= kMaxLevel, "k must be at most 12");
    require(s.n >= 2 && s.n % 2 == 0 && s.n <= field_detail::kMaxDegree, "coset-U construction needs even n in [2, 24]");
    const std::size_t len = (std::size_t{1} << (s.n / 2)) + 1;
    require(s.u_values.size() == len, "u_values must have 2^m + 1 = " + std::to_string(len) + " entries");
    const std::uint32_t q = std::uint32_t{1} << s.k;
    require(s.f0 < q, "f0 must be below 2^k");
    for (auto v : s.u_values) require(v < q, "u_values entry " + std::to_string(v) + " is not below 2^k");
}

/// sum_{u in U} zeta^f(u) == zeta^f(0).
inline CosetUCriterion check_coset_u_criterion(const CosetUSpec& s) {
    validate_coset_u(s);
    CosetUCriterion c{false, zeta_sum(s.k, s.u_values), zeta_pow(s.k, s.f0)};
    c.holds = c.sum == c.target;
    return c;
}

/// f(0) = f0, f(s u) = u_values[index of u] for s in F_{2^m}^*.
inline GBF construct_coset_u(const CosetUSpec& spec, std::shared_ptr<const FieldCtx> ctx) {
    validate_coset_u(spec);
    require(ctx != nullptr, "field context required");
    require(ctx->n() == spec.n, "field degree must equal spec.n");
    const CosetDecomposition d = ctx->coset_decompose();
    std::vector<std::uint32_t> t(ctx->size(), 0);
    t[0] = spec.f0;
    for (std::size_t j = 0; j < d.unit_circle.size(); ++j)
        for (Elem s : d.subfield_star) t[ctx->mul(s, d.unit_circle[j])] = spec.u_values[j];
    return GBF(std::move(ctx), spec.k, std::move(t));
}

inline GBF construct_coset_u(const CosetUSpec& spec) { return construct_coset_u(spec, FieldCtx::make(spec.n)); }

/// One entry equal to f0, the other 2^m in antipodal pairs.
inline CosetUSpec sample_coset_u_values(unsigned m, unsigned k, std::uint64_t seed) {
    require(k >= 3, "coset-U construction needs k >= 3");
    require(k <= kMaxLevel && m >= 1 && 2 * m <= field_detail::kMaxDegree, "m or k out of range");
    std::mt19937_64 rng(seed);
    const std::uint32_t q = std::uint32_t{1} << k, half = q / 2;
    std::uniform_int_distribution<std::uint32_t> val(0, q - 1);
    CosetUSpec s{2 * m, k, val(rng), {}};
    const std::size_t len = (std::size_t{1} << m) + 1;
    std::vector<std::uint32_t> pos(len);
    for (std::size_t i = 0; i < len; ++i) pos[i] = static_cast<std::uint32_t>(i);
    std::shuffle(pos.begin(), pos.end(), rng);
    s.u_values.assign(len, 0);
    s.u_values[pos[0]] = s.f0;
    for (std::size_t i = 1; i < len; i += 2) {
        std::uint32_t v = val(rng);
        s.u_values[pos[i]] = v;
        s.u_values[pos[i + 1]] = (v + half) & (q - 1);
    }
    return s;
}

/// Uniform values redrawn until the criterion holds.
inline CosetUSpec sample_coset_u_rejection(unsigned m, unsigned k, std::uint64_t seed,
                                           std::uint64_t max_attempts = 1u << 20) {
    require(k >= 3, "coset-U construction needs k >= 3");
    require(k <= kMaxLevel && m >= 1 && 2 * m <= field_detail::kMaxDegree, "m or k out of range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> val(0, (std::uint32_t{1} << k) - 1);
    CosetUSpec s{2 * m, k, 0, std::vector<std::uint32_t>((std::size_t{1} << m) + 1)};
    for (std::uint64_t a = 0; a < max_attempts; ++a) {
        s.f0 = val(rng);
        for (auto& v : s.u_values) v = val(rng);
        if (check_coset_u_criterion(s).holds) return s;
    }
    throw BudgetError("rejection sampling found no admissible coset-U spec within " +
                      std::to_string(max_attempts) + " attempts");
}

/// An admissible spec with one entry moved to a different value, so the
/// criterion is guaranteed to fail.
inline CosetUSpec sample_coset_u_violating(unsigned m, unsigned k, std::uint64_t seed) {
    CosetUSpec s = sample_coset_u_values(m, k, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::size_t> where(0, s.u_values.size() - 1);
    std::uniform_int_distribution<std::uint32_t> shift(1, (std::uint32_t{1} << k) - 1);
    auto& v = s.u_values[where(rng)];
    v = (v + shift(rng)) & ((std::uint32_t{1} << k) - 1);
    return s;
}

}  // namespace gbentlab
