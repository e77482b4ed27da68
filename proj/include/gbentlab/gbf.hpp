#pragma once

// Generalized Boolean functions V_n -> Z_{2^k} as dense truth tables.

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace gbentlab {

enum class Domain { Vector, Field };

inline const char* to_string(Domain d) { return d == Domain::Vector ? "vector" : "field"; }

/// Index x of the table is both the vector (x_1 = bit 0, ..., x_n = bit n-1)
/// and, for field domains, the polynomial-basis field element.
class GBF {
public:
    GBF(unsigned n, unsigned k, std::vector<std::uint32_t> table)
        : n_(n), k_(k), table_(std::move(table)) {
        validate();
    }

    GBF(std::shared_ptr<const FieldCtx> field, unsigned k, std::vector<std::uint32_t> table)
        : n_(field ? field->n() : 0), k_(k), domain_(Domain::Field), field_(std::move(field)),
          table_(std::move(table)) {
        require(field_ != nullptr, "field domain requires a field context");
        validate();
    }

    static GBF zero(unsigned n, unsigned k) {
        return GBF(n, k, std::vector<std::uint32_t>(std::size_t{1} << n, 0));
    }

    template <class Fn>
    static GBF tabulate(unsigned n, unsigned k, Fn&& fn) {
        std::vector<std::uint32_t> t(std::size_t{1} << n);
        for (std::size_t x = 0; x < t.size(); ++x)
            t[x] = static_cast<std::uint32_t>(fn(static_cast<std::uint32_t>(x)));
        return GBF(n, k, std::move(t));
    }

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    std::uint32_t modulus() const { return std::uint32_t{1} << k_; }
    std::size_t size() const { return table_.size(); }
    Domain domain() const { return domain_; }
    const std::shared_ptr<const FieldCtx>& field() const { return field_; }
    std::span<const std::uint32_t> table() const { return table_; }
    std::uint32_t operator()(std::uint32_t x) const { return table_[x]; }

    /// Same domain (and field) with a new level and table.
    GBF rebuild(unsigned k, std::vector<std::uint32_t> table) const {
        if (domain_ == Domain::Field) return GBF(field_, k, std::move(table));
        return GBF(n_, k, std::move(table));
    }

    /// Linear form x -> <u, x>, returned as the mask L with <u,x> = parity(L & x).
    std::uint32_t inner_mask(std::uint32_t u) const {
        return domain_ == Domain::Vector ? u : field_->trace_form(u);
    }

    unsigned inner(std::uint32_t u, std::uint32_t x) const {
        return static_cast<unsigned>(std::popcount(inner_mask(u) & x) & 1);
    }

    friend bool operator==(const GBF& a, const GBF& b) {
        if (a.n_ != b.n_ || a.k_ != b.k_ || a.domain_ != b.domain_ || a.table_ != b.table_)
            return false;
        if (a.domain_ == Domain::Field) return a.field_->modulus() == b.field_->modulus();
        return true;
    }

private:
    void validate() const {
        require(n_ >= 1 && n_ <= 24, "n must be in [1, 24]");
        require(k_ >= 1 && k_ <= 12, "k must be in [1, 12]");
        require(table_.size() == (std::size_t{1} << n_),
                "table length must be 2^n = " + std::to_string(std::size_t{1} << n_) + ", got " +
                    std::to_string(table_.size()));
        const std::uint32_t q = std::uint32_t{1} << k_;
        for (std::size_t x = 0; x < table_.size(); ++x)
            if (table_[x] >= q)
                throw InvariantError("table entry " + std::to_string(x) + " = " +
                                     std::to_string(table_[x]) + " is not below 2^k = " +
                                     std::to_string(q));
    }

    unsigned n_;
    unsigned k_;
    Domain domain_ = Domain::Vector;
    std::shared_ptr<const FieldCtx> field_;
    std::vector<std::uint32_t> table_;
};

/// b_j = |{x : f(x) + 2^(k-1) <u,x> = j}|.
struct ValueDistribution {
    std::vector<std::uint64_t> counts;
};

/// Digit functions a_1 (least significant) .. a_k.
inline std::vector<GBF> digits(const GBF& f) {
    std::vector<GBF> out;
    out.reserve(f.k());
    for (unsigned i = 0; i < f.k(); ++i) {
        std::vector<std::uint32_t> t(f.size());
        for (std::size_t x = 0; x < t.size(); ++x) t[x] = (f.table()[x] >> i) & 1u;
        out.push_back(f.rebuild(1, std::move(t)));
    }
    return out;
}

/// g_c = c_1 a_1 ^ ... ^ c_{k-1} a_{k-1} ^ a_k, with bit i of `mask` = c_{i+1}.
inline GBF component_gc_mask(const GBF& f, std::uint32_t mask) {
    require(f.k() >= 2, "component functions need k >= 2");
    require(mask < (std::uint32_t{1} << (f.k() - 1)), "component mask has more than k-1 bits");
    const std::uint32_t top = std::uint32_t{1} << (f.k() - 1);
    const std::uint32_t sel = mask | top;
    std::vector<std::uint32_t> t(f.size());
    for (std::size_t x = 0; x < t.size(); ++x)
        t[x] = static_cast<std::uint32_t>(std::popcount(f.table()[x] & sel) & 1);
    return f.rebuild(1, std::move(t));
}

inline GBF component_gc(const GBF& f, std::span<const std::uint8_t> c) {
    require(f.k() >= 2, "component functions need k >= 2");
    require(c.size() == f.k() - 1, "component vector must have length k-1 = " +
                                       std::to_string(f.k() - 1));
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        require(c[i] <= 1, "component vector entries must be bits");
        if (c[i]) mask |= std::uint32_t{1} << i;
    }
    return component_gc_mask(f, mask);
}

/// f = g + 2^t h with g = f mod 2^t (level t) and h = f div 2^t (level k-t).
inline std::pair<GBF, GBF> split_low_high(const GBF& f, unsigned t) {
    require(t >= 1 && t < f.k(), "split position t must satisfy 1 <= t < k");
    std::vector<std::uint32_t> lo(f.size()), hi(f.size());
    const std::uint32_t m = (std::uint32_t{1} << t) - 1;
    for (std::size_t x = 0; x < f.size(); ++x) {
        lo[x] = f.table()[x] & m;
        hi[x] = f.table()[x] >> t;
    }
    return {f.rebuild(t, std::move(lo)), f.rebuild(f.k() - t, std::move(hi))};
}

/// f = b_1 + 2^t b_2 + ... + 2^((l-1)t) b_l, each b_j at level t.
inline std::vector<GBF> base2t_blocks(const GBF& f, unsigned t) {
    require(t >= 1 && f.k() % t == 0, "block width t must divide k");
    const unsigned l = f.k() / t;
    const std::uint32_t m = (std::uint32_t{1} << t) - 1;
    std::vector<GBF> out;
    out.reserve(l);
    for (unsigned j = 0; j < l; ++j) {
        std::vector<std::uint32_t> b(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) b[x] = (f.table()[x] >> (j * t)) & m;
        out.push_back(f.rebuild(t, std::move(b)));
    }
    return out;
}

/// g_c = c_1 b_1 + ... + c_{l-1} b_{l-1} + b_l mod 2^t.
inline GBF component_base2t(const GBF& f, unsigned t, std::span<const std::uint32_t> c) {
    require(t >= 1 && f.k() % t == 0, "block width t must divide k");
    const unsigned l = f.k() / t;
    require(c.size() == l - 1, "coefficient vector must have length l-1 = " +
                                   std::to_string(l - 1));
    const std::uint32_t m = (std::uint32_t{1} << t) - 1;
    std::vector<std::uint32_t> g(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        std::uint32_t v = f.table()[x];
        std::uint64_t acc = (v >> ((l - 1) * t)) & m;
        for (unsigned j = 0; j + 1 < l; ++j) acc += std::uint64_t{c[j]} * ((v >> (j * t)) & m);
        g[x] = static_cast<std::uint32_t>(acc & m);
    }
    return f.rebuild(t, std::move(g));
}

/// f_u(x) = f(x) + 2^(k-1) <u, x>.
inline GBF shift_msb(const GBF& f, std::uint32_t u) {
    const std::uint32_t L = f.inner_mask(u);
    const std::uint32_t half = std::uint32_t{1} << (f.k() - 1), q = f.modulus();
    std::vector<std::uint32_t> t(f.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        std::uint32_t v = f.table()[x];
        if (std::popcount(L & static_cast<std::uint32_t>(x)) & 1) v = (v + half) & (q - 1);
        t[x] = v;
    }
    return f.rebuild(f.k(), std::move(t));
}

/// g(x) = f(x^i), 0^i := 0.
inline GBF decimate(const GBF& f, std::uint64_t i) {
    require(f.domain() == Domain::Field, "decimation needs a field domain");
    const FieldCtx& F = *f.field();
    require(std::gcd(i, std::uint64_t{F.order()}) == 1,
            "decimation exponent " + std::to_string(i) + " is not coprime to 2^n-1");
    std::vector<std::uint32_t> t(f.size());
    t[0] = f.table()[0];
    for (Elem x = 1; x < f.size(); ++x) t[x] = f.table()[F.pow(x, i)];
    return f.rebuild(f.k(), std::move(t));
}

inline ValueDistribution value_distribution(const GBF& f, std::uint32_t u) {
    const std::uint32_t L = f.inner_mask(u);
    const std::uint32_t half = std::uint32_t{1} << (f.k() - 1), q = f.modulus();
    ValueDistribution d;
    d.counts.assign(q, 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        std::uint32_t v = f.table()[x];
        if (std::popcount(L & static_cast<std::uint32_t>(x)) & 1) v = (v + half) & (q - 1);
        ++d.counts[v];
    }
    return d;
}

/// Pointwise  sum_j coef_j * f_j  mod 2^k_out; all inputs on the same domain.
inline GBF linear_combination(unsigned k_out, std::span<const std::pair<std::uint64_t, const GBF*>> terms) {
    require(!terms.empty(), "empty linear combination");
    const GBF& first = *terms.front().second;
    const std::uint64_t m = (std::uint64_t{1} << k_out) - 1;
    std::vector<std::uint32_t> t(first.size(), 0);
    for (auto [coef, g] : terms) {
        require(g->size() == first.size() && g->domain() == first.domain(),
                "linear combination over mismatched domains");
        for (std::size_t x = 0; x < t.size(); ++x)
            t[x] = static_cast<std::uint32_t>((t[x] + coef * g->table()[x]) & m);
    }
    return first.rebuild(k_out, std::move(t));
}

}  // namespace gbentlab
