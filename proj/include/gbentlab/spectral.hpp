#pragma once

// Generalized Walsh-Hadamard transforms H_f(u) = sum_x zeta^f(x) (-1)^<u,x>.
//
// Two independent routes are kept:
//   gwht_direct            groups each shifted function by value and sums
//                          counts times powers of zeta (O(4^n));
//   gwht_fast_components   runs one butterfly WHT per component g_c and
//                          recombines them through the sign/character sum.

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gbf.hpp"
#include "parallel.hpp"

namespace gbentlab {

struct Spectrum {
    unsigned n = 0;
    unsigned k = 1;
    std::vector<CycloInt> values;

    const CycloInt& operator[](std::size_t u) const { return values[u]; }
    std::size_t size() const { return values.size(); }
    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

enum class TransformPath { Direct, Fast };

/// In-place unnormalized Walsh-Hadamard butterfly; out[v] = sum_x in[x] (-1)^(v.x).
inline void walsh_butterfly(std::span<std::int64_t> a) {
    const std::size_t len = a.size();
    for (std::size_t h = 1; h < len; h <<= 1)
        for (std::size_t i = 0; i < len; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j) {
                std::int64_t x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
}

/// Integer Walsh spectrum of a Boolean function, indexed by u.
inline std::vector<std::int64_t> wht_fast_values(const GBF& f) {
    require(f.k() == 1, "Boolean WHT needs k = 1");
    std::vector<std::int64_t> a(f.size());
    for (std::size_t x = 0; x < a.size(); ++x) a[x] = f.table()[x] ? -1 : 1;
    walsh_butterfly(a);
    if (f.domain() == Domain::Vector) return a;
    // Tr(u x) = L(u) . x, so the field spectrum is a re-indexing.
    std::vector<std::int64_t> out(a.size());
    for (std::size_t u = 0; u < a.size(); ++u) out[u] = a[f.inner_mask(static_cast<std::uint32_t>(u))];
    return out;
}

inline Spectrum wht_fast(const GBF& f) {
    auto w = wht_fast_values(f);
    Spectrum s{f.n(), 1, {}};
    s.values.reserve(w.size());
    for (auto v : w) s.values.push_back(CycloInt::integer(1, v));
    return s;
}

/// Reference transform from value distributions of the shifted functions.
inline Spectrum gwht_direct(const GBF& f, const Exec& exec = {}) {
    Spectrum s{f.n(), f.k(), std::vector<CycloInt>(f.size(), CycloInt(f.k()))};
    const std::uint32_t half = std::uint32_t{1} << (f.k() - 1);
    parallel_for(f.size(), exec, [&](std::size_t u) {
        ValueDistribution d = value_distribution(f, static_cast<std::uint32_t>(u));
        std::vector<std::int64_t> c(half, 0);
        for (std::uint32_t rho = 0; rho < d.counts.size(); ++rho) {
            auto b = static_cast<std::int64_t>(d.counts[rho]);
            if (f.k() == 1) c[0] += rho ? -b : b;
            else if (rho < half) c[rho] += b;
            else c[rho - half] -= b;
        }
        s.values[u] = CycloInt(f.k(), std::move(c));
    });
    return s;
}

/// Combines the Boolean spectra W_c of the 2^(k-1) components g_c
/// (index = mask c, bit i <-> digit a_{i+1}) into the level-k spectrum:
///   H(a) = 2^-(k-1) sum_{c,d} (-1)^(c.d) zeta^iota(d) W_c(a).
/// Coordinate d of H(a) is the inner sum over c, evaluated by a butterfly.
inline Spectrum combine_component_spectra(unsigned k, std::span<const std::vector<std::int64_t>> w,
                                          const Exec& exec = {}) {
    require(k >= 1, "level must be positive");
    const std::size_t comps = std::size_t{1} << (k - 1);
    require(w.size() == comps, "expected 2^(k-1) component spectra");
    const std::size_t len = w[0].size();
    for (const auto& v : w) require(v.size() == len, "component spectra differ in length");
    Spectrum s{static_cast<unsigned>(std::countr_zero(len)), k,
               std::vector<CycloInt>(len, CycloInt(k))};
    const auto scale = static_cast<std::int64_t>(comps);
    parallel_chunks(len, exec, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::int64_t> t(comps);
        for (std::size_t a = lo; a < hi; ++a) {
            for (std::size_t c = 0; c < comps; ++c) t[c] = w[c][a];
            walsh_butterfly(t);
            for (auto& v : t) {
                if (v % scale != 0)
                    throw DisagreementError("component combination is not divisible by 2^(k-1)");
                v /= scale;
            }
            s.values[a] = CycloInt(k, t);
        }
    });
    return s;
}

inline Spectrum gwht_fast_components(const GBF& f, const Exec& exec = {}) {
    if (f.k() == 1) return wht_fast(f);
    const std::size_t comps = std::size_t{1} << (f.k() - 1);
    std::vector<std::vector<std::int64_t>> w(comps);
    parallel_for(comps, exec, [&](std::size_t c) {
        w[c] = wht_fast_values(component_gc_mask(f, static_cast<std::uint32_t>(c)));
    });
    // Components already fan out over workers; combine serially per chunk.
    return combine_component_spectra(f.k(), w, exec);
}

inline Spectrum gwht(const GBF& f, TransformPath path = TransformPath::Fast, const Exec& exec = {}) {
    return path == TransformPath::Direct ? gwht_direct(f, exec) : gwht_fast_components(f, exec);
}

/// Extended transform H_{f,i}(u) = sum_x zeta^f(x) (-1)^Tr(u x^i), computed
/// as the plain transform of x -> f(x^j), j = i^-1 mod 2^n - 1.
inline Spectrum ewht(const GBF& f, std::uint64_t i, TransformPath path = TransformPath::Fast,
                     const Exec& exec = {}) {
    require(f.domain() == Domain::Field, "extended transform needs a field domain");
    const std::uint64_t order = f.field()->order();
    require(std::gcd(i, order) == 1, "decimation exponent " + std::to_string(i) +
                                         " is not coprime to 2^n-1");
    const std::uint64_t j = order == 1 ? 1 : mod_inverse(i % order, order);
    return gwht(decimate(f, j), path, exec);
}

/// Index of c = (c_1, ..., c_{l-1}) in Z_{2^t}^(l-1): sum_j c_j 2^(t(j-1)).
inline std::vector<std::uint32_t> base2t_coeffs(std::size_t index, unsigned t, unsigned l) {
    std::vector<std::uint32_t> c(l - 1);
    const std::size_t m = (std::size_t{1} << t) - 1;
    for (unsigned j = 0; j + 1 < l; ++j) c[j] = static_cast<std::uint32_t>((index >> (j * t)) & m);
    return c;
}

/// Rebuilds the level-k spectrum from the level-t spectra of all base-2^t
/// components g_c (indexed as base2t_coeffs):
///   H(a) = 2^-(k-t) sum_{c,d} zeta_{2^t}^(-c.d) zeta_{2^k}^(sum_j 2^((j-1)t) d_j) H_{g_c}(a).
inline Spectrum combine_base2t_spectra(std::span<const Spectrum> comps, unsigned t, unsigned k) {
    require(t >= 1 && k % t == 0, "block width t must divide k");
    const unsigned l = k / t;
    const std::size_t count = std::size_t{1} << (t * (l - 1));
    require(comps.size() == count, "expected 2^(t(l-1)) component spectra, got " +
                                       std::to_string(comps.size()));
    const std::size_t len = comps[0].size();
    for (const auto& s : comps)
        require(s.k == t && s.size() == len, "component spectra must be level t and equal length");
    const auto divisor = std::int64_t{1} << (k - t);
    const std::int64_t up = std::int64_t{1} << (k - t);  // zeta_{2^t} = zeta_{2^k}^(2^(k-t))
    std::vector<std::vector<std::uint32_t>> coeffs(count);
    for (std::size_t c = 0; c < count; ++c) coeffs[c] = base2t_coeffs(c, t, l);

    Spectrum out{comps[0].n, k, std::vector<CycloInt>(len, CycloInt(k))};
    for (std::size_t a = 0; a < len; ++a) {
        std::vector<CycloInt> lifted;
        lifted.reserve(count);
        for (std::size_t c = 0; c < count; ++c) lifted.push_back(comps[c][a].lift(k));
        CycloInt total(k);
        for (std::size_t d = 0; d < count; ++d) {
            std::int64_t iota = 0;
            for (unsigned j = 0; j + 1 < l; ++j) iota += std::int64_t{coeffs[d][j]} << (j * t);
            for (std::size_t c = 0; c < count; ++c) {
                std::int64_t dot = 0;
                for (unsigned j = 0; j + 1 < l; ++j)
                    dot += std::int64_t{coeffs[c][j]} * std::int64_t{coeffs[d][j]};
                total += lifted[c].rotate(iota - up * dot);
            }
        }
        out.values[a] = total.exact_div(divisor);
    }
    return out;
}

/// sum_u |H(u)|^2 as an exact cyclotomic integer.
inline CycloInt energy(const Spectrum& s) {
    CycloInt acc(s.k);
    for (const auto& v : s.values) acc += v.norm_sq();
    return acc;
}

inline bool parseval_holds(const Spectrum& s) {
    return energy(s).is_integer(std::int64_t{1} << (2 * s.n));
}

}  // namespace gbentlab
