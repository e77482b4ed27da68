#pragma once

// Arithmetic in F_{2^n}, 1 <= n <= 24. Elements are n-bit integers in the
// polynomial basis: bit i is the coefficient of x^i.

#include <bit>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <numeric>
#include <sstream>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gbentlab {

using Elem = std::uint32_t;

namespace field_detail {

inline constexpr unsigned kMaxDegree = 24;
inline constexpr unsigned kTableDegree = 16;

// Low-weight irreducible (in fact primitive) polynomials, index = degree.
inline constexpr std::uint64_t kDefaultModulus[kMaxDegree + 1] = {
    0,         0x3,       0x7,       0xB,       0x13,     0x25,     0x43,
    0x83,      0x11D,     0x211,     0x409,     0x805,    0x1053,   0x201B,
    0x4443,    0x8003,    0x1100B,   0x20009,   0x40081,  0x80027,  0x100009,
    0x200005,  0x400003,  0x800021,  0x1000087,
};

// Distinct prime factors of 2^n - 1.
inline const std::vector<std::uint32_t>& mersenne_primes(unsigned n) {
    static const std::vector<std::uint32_t> table[kMaxDegree + 1] = {
        {},
        {},
        {3},
        {7},
        {3, 5},
        {31},
        {3, 7},
        {127},
        {3, 5, 17},
        {7, 73},
        {3, 11, 31},
        {23, 89},
        {3, 5, 7, 13},
        {8191},
        {3, 43, 127},
        {7, 31, 151},
        {3, 5, 17, 257},
        {131071},
        {3, 7, 19, 73},
        {524287},
        {3, 5, 11, 31, 41},
        {7, 127, 337},
        {3, 23, 89, 683},
        {47, 178481},
        {3, 5, 7, 13, 17, 241},
    };
    return table[n];
}

inline unsigned poly_degree(std::uint64_t p) {
    return p == 0 ? 0 : 63u - static_cast<unsigned>(std::countl_zero(p));
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
    unsigned dp = poly_degree(p);
    while (a != 0 && poly_degree(a) >= dp) a ^= p << (poly_degree(a) - dp);
    return a;
}

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return poly_mod(clmul(a, b), p);
}

inline std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// x^(2^e) mod p
inline std::uint64_t x_pow_2e(unsigned e, std::uint64_t p) {
    std::uint64_t r = poly_mod(2, p);
    for (unsigned i = 0; i < e; ++i) r = poly_mulmod(r, r, p);
    return r;
}

inline std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned q = 2; q <= n; ++q) {
        if (n % q) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (prime) out.push_back(q);
    }
    return out;
}

}  // namespace field_detail

/// Rabin irreducibility test over F_2, plus the direct subfield check
/// x^(2^d) != x for every proper divisor d.
inline bool is_irreducible(std::uint64_t p) {
    using namespace field_detail;
    unsigned n = poly_degree(p);
    if (n == 0) return false;
    if (n == 1) return true;
    const std::uint64_t x = poly_mod(2, p);
    if (x_pow_2e(n, p) != x) return false;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0 && x_pow_2e(d, p) == x) return false;
    for (unsigned q : prime_divisors(n))
        if (poly_gcd(p, x_pow_2e(n / q, p) ^ x) != 1) return false;
    return true;
}

/// Parses "0x13"-style hex polynomials.
inline std::uint64_t parse_poly(const std::string& text) {
    std::string s = text;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s = s.substr(2);
    if (s.empty() || s.size() > 16) throw ParseError("bad polynomial literal '" + text + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw ParseError("bad polynomial literal '" + text + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

inline std::string format_poly(std::uint64_t p) {
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << p;
    return os.str();
}

/// Inverse of a modulo mod; throws when gcd(a, mod) != 1.
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(mod), nr = static_cast<std::int64_t>(a % mod);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw InvariantError("no modular inverse");
    if (t < 0) t += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(t);
}

struct CosetDecomposition {
    std::vector<Elem> subfield_star;  ///< F_{2^m}^*, ascending
    std::vector<Elem> unit_circle;    ///< U = {x : x^(2^m+1) = 1}, ascending
};

class FieldCtx;

/// F_{2^m} embedded in a larger field. `embed[b]` is the image of the
/// m-bit element b of a standalone F_{2^m}; `index[x]` inverts it (-1 when
/// x is not in the subfield).
struct Subfield {
    std::shared_ptr<const FieldCtx> small;
    std::vector<Elem> embed;
    std::vector<std::int32_t> index;
};

/// Immutable model of F_{2^n}.
class FieldCtx {
public:
    explicit FieldCtx(unsigned n) : FieldCtx(n, default_modulus(n)) {}

    FieldCtx(unsigned n, std::uint64_t modulus) : n_(n), modulus_(modulus) {
        using namespace field_detail;
        require(n >= 1 && n <= kMaxDegree, "field degree must be in [1, 24]");
        require(poly_degree(modulus) == n, "modulus " + format_poly(modulus) +
                                               " does not have degree " + std::to_string(n));
        require(is_irreducible(modulus), "modulus " + format_poly(modulus) + " is reducible");
        mask_ = static_cast<Elem>((std::uint64_t{1} << n) - 1);
        order_ = mask_;
        find_generator();
        if (n <= kTableDegree) build_tables();
        build_trace();
    }

    static std::uint64_t default_modulus(unsigned n) {
        require(n >= 1 && n <= field_detail::kMaxDegree, "field degree must be in [1, 24]");
        return field_detail::kDefaultModulus[n];
    }

    static std::shared_ptr<const FieldCtx> make(unsigned n) {
        return std::make_shared<const FieldCtx>(n);
    }
    static std::shared_ptr<const FieldCtx> make(unsigned n, std::uint64_t modulus) {
        return std::make_shared<const FieldCtx>(n, modulus);
    }

    unsigned n() const { return n_; }
    std::uint64_t modulus() const { return modulus_; }
    Elem generator() const { return generator_; }
    /// Multiplicative group order 2^n - 1.
    std::uint32_t order() const { return order_; }
    std::uint32_t size() const { return order_ + 1; }
    Elem mask() const { return mask_; }

    Elem mul(Elem a, Elem b) const {
        a &= mask_;
        b &= mask_;
        if (!log_.empty()) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return slow_mul(a, b);
    }

    /// Carry-less multiply and reduce; never uses the tables.
    Elem slow_mul(Elem a, Elem b) const {
        return static_cast<Elem>(field_detail::poly_mulmod(a & mask_, b & mask_, modulus_));
    }

    Elem sqr(Elem a) const { return mul(a, a); }

    Elem pow(Elem a, std::uint64_t e) const {
        a &= mask_;
        if (a == 0) return e == 0 ? 1 : 0;
        if (!log_.empty()) {
            std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % order_)) % order_;
            return exp_[l];
        }
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem inv(Elem a) const {
        require((a & mask_) != 0, "zero has no inverse");
        return pow(a, order_ - 1);
    }

    /// Absolute trace Tr(a) in {0, 1}.
    unsigned trace(Elem a) const {
        return static_cast<unsigned>(std::popcount(a & trace_mask_) & 1);
    }

    /// Reference trace a + a^2 + ... + a^(2^(n-1)), evaluated by squaring.
    Elem trace_by_definition(Elem a) const {
        Elem s = 0, t = a & mask_;
        for (unsigned j = 0; j < n_; ++j) {
            s ^= t;
            t = sqr(t);
        }
        return s;
    }

    /// Relative trace to F_{2^m}: sum of a^(2^(jm)), j < n/m.
    Elem rel_trace(unsigned m, Elem a) const {
        require(m >= 1 && n_ % m == 0, "relative trace needs m | n");
        Elem s = 0, t = a & mask_;
        for (unsigned j = 0; j < n_ / m; ++j) {
            s ^= t;
            for (unsigned r = 0; r < m; ++r) t = sqr(t);
        }
        return s;
    }

    bool in_subfield(unsigned m, Elem a) const {
        require(m >= 1 && n_ % m == 0, "subfield degree must divide n");
        Elem t = a & mask_;
        for (unsigned r = 0; r < m; ++r) t = sqr(t);
        return t == (a & mask_);
    }

    /// The F_2-linear map L with Tr(u x) = popcount(L(u) & x) mod 2.
    Elem trace_form(Elem u) const {
        Elem r = 0;
        u &= mask_;
        while (u) {
            unsigned b = static_cast<unsigned>(std::countr_zero(u));
            r ^= trace_form_basis_[b];
            u &= u - 1;
        }
        return r;
    }

    unsigned inner(Elem u, Elem x) const { return trace(mul(u, x)); }

    /// Decimation exponents 1 <= i <= 2^n - 2 coprime to 2^n - 1 (just {1} for n = 1).
    std::vector<std::uint32_t> coprime_exponents() const {
        std::vector<std::uint32_t> out;
        if (order_ == 1) return {1};
        for (std::uint32_t i = 1; i < order_; ++i)
            if (std::gcd(i, order_) == 1) out.push_back(i);
        return out;
    }

    CosetDecomposition coset_decompose() const {
        require(n_ % 2 == 0, "coset decomposition needs even n");
        unsigned m = n_ / 2;
        std::uint64_t sub = (std::uint64_t{1} << m) - 1, circ = (std::uint64_t{1} << m) + 1;
        CosetDecomposition d;
        for (Elem x = 1; x <= mask_; ++x) {
            if (pow(x, sub) == 1) d.subfield_star.push_back(x);
            if (pow(x, circ) == 1) d.unit_circle.push_back(x);
        }
        return d;
    }

    /// Embedding of F_{2^m} (with its default modulus) for m | n.
    Subfield subfield(unsigned m) const { return subfield(m, default_modulus(m)); }

    Subfield subfield(unsigned m, std::uint64_t small_modulus) const {
        require(m >= 1 && n_ % m == 0, "subfield degree must divide n");
        Subfield s;
        s.small = std::make_shared<const FieldCtx>(m, small_modulus);
        // Smallest root of the small modulus; its powers give an F_2-basis.
        Elem root = 0;
        bool found = false;
        for (Elem r = 0; r <= mask_ && !found; ++r) {
            Elem acc = 0;
            for (int bit = static_cast<int>(m); bit >= 0; --bit) {
                acc = mul(acc, r);
                if ((small_modulus >> bit) & 1) acc ^= 1;
            }
            if (acc == 0) {
                root = r;
                found = true;
            }
        }
        require(found, "subfield modulus has no root");
        Elem sm = (Elem{1} << m) - 1;
        s.embed.assign(std::size_t{sm} + 1, 0);
        std::vector<Elem> powers(m);
        Elem p = 1;
        for (unsigned i = 0; i < m; ++i) {
            powers[i] = p;
            p = mul(p, root);
        }
        s.index.assign(size(), -1);
        for (Elem b = 0; b <= sm; ++b) {
            Elem e = 0;
            for (unsigned i = 0; i < m; ++i)
                if ((b >> i) & 1) e ^= powers[i];
            s.embed[b] = e;
            s.index[e] = static_cast<std::int32_t>(b);
        }
        return s;
    }

private:
    void find_generator() {
        const auto& primes = field_detail::mersenne_primes(n_);
        for (Elem g = 1; g <= mask_; ++g) {
            if (slow_pow(g, order_) != 1) continue;
            bool full = true;
            for (std::uint32_t p : primes)
                if (slow_pow(g, order_ / p) == 1) {
                    full = false;
                    break;
                }
            if (full) {
                generator_ = g;
                return;
            }
        }
        throw InvariantError("no generator found for " + format_poly(modulus_));
    }

    Elem slow_pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        exp_.assign(2 * std::size_t{order_} + 1, 0);
        log_.assign(size(), 0);
        Elem v = 1;
        for (std::uint32_t i = 0; i < order_; ++i) {
            exp_[i] = v;
            log_[v] = i;
            v = slow_mul(v, generator_);
        }
        for (std::uint32_t i = order_; i < exp_.size(); ++i) exp_[i] = exp_[i - order_];
    }

    void build_trace() {
        trace_mask_ = 0;
        for (unsigned b = 0; b < n_; ++b)
            if (trace_by_definition(Elem{1} << b) & 1) trace_mask_ |= Elem{1} << b;
        trace_form_basis_.assign(n_, 0);
        for (unsigned b = 0; b < n_; ++b) {
            Elem r = 0;
            for (unsigned j = 0; j < n_; ++j)
                if (trace(mul(Elem{1} << b, Elem{1} << j))) r |= Elem{1} << j;
            trace_form_basis_[b] = r;
        }
    }

    unsigned n_;
    std::uint64_t modulus_;
    Elem mask_ = 0;
    std::uint32_t order_ = 0;
    Elem generator_ = 1;
    Elem trace_mask_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> trace_form_basis_;
};

}  // namespace gbentlab
