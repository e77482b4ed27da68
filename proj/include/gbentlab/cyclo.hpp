#pragma once

// Exact elements of Z[zeta], zeta = exp(2 pi i / 2^k), stored in the power
// basis {1, zeta, ..., zeta^(2^(k-1) - 1)} with zeta^(2^(k-1)) = -1.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace gbentlab {

inline constexpr unsigned kMaxLevel = 12;

namespace cyclo_detail {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("cyclotomic coefficient overflow");
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("cyclotomic coefficient overflow");
    return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("cyclotomic coefficient overflow");
    return r;
}

}  // namespace cyclo_detail

class CycloInt {
public:
    /// Zero at level 1.
    CycloInt() : CycloInt(1) {}

    /// Zero at level k.
    explicit CycloInt(unsigned k) : k_(k) {
        require(k >= 1 && k <= kMaxLevel, "cyclotomic level must be in [1, 12]");
        c_.assign(std::size_t{1} << (k - 1), 0);
    }

    CycloInt(unsigned k, std::vector<std::int64_t> coords) : k_(k), c_(std::move(coords)) {
        require(k >= 1 && k <= kMaxLevel, "cyclotomic level must be in [1, 12]");
        require(c_.size() == (std::size_t{1} << (k - 1)),
                "coords length must be 2^(k-1) = " + std::to_string(std::size_t{1} << (k - 1)));
    }

    static CycloInt integer(unsigned k, std::int64_t v) {
        CycloInt r(k);
        r.c_[0] = v;
        return r;
    }

    /// zeta_{2^k}^e, e taken mod 2^k.
    static CycloInt zeta_pow(unsigned k, std::int64_t e) {
        CycloInt r(k);
        const std::int64_t q = std::int64_t{1} << k, half = q / 2;
        std::int64_t r_e = ((e % q) + q) % q;
        if (r_e >= half || k == 1) {
            if (k == 1) r.c_[0] = (r_e == 0) ? 1 : -1;
            else r.c_[static_cast<std::size_t>(r_e - half)] = -1;
        } else {
            r.c_[static_cast<std::size_t>(r_e)] = 1;
        }
        return r;
    }

    unsigned level() const { return k_; }
    std::size_t dim() const { return c_.size(); }
    std::span<const std::int64_t> coords() const { return c_; }
    std::int64_t operator[](std::size_t j) const { return c_[j]; }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }

    /// True when the value is the rational integer v.
    bool is_integer(std::int64_t v) const {
        if (c_[0] != v) return false;
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j]) return false;
        return true;
    }

    friend bool operator==(const CycloInt& a, const CycloInt& b) {
        return a.k_ == b.k_ && a.c_ == b.c_;
    }

    CycloInt& operator+=(const CycloInt& o) {
        check_level(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = cyclo_detail::add(c_[j], o.c_[j]);
        return *this;
    }
    CycloInt& operator-=(const CycloInt& o) {
        check_level(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = cyclo_detail::sub(c_[j], o.c_[j]);
        return *this;
    }
    friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
    friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
    friend CycloInt operator-(CycloInt a) {
        for (auto& v : a.c_) v = cyclo_detail::sub(0, v);
        return a;
    }

    CycloInt& operator*=(std::int64_t s) {
        for (auto& v : c_) v = cyclo_detail::mul(v, s);
        return *this;
    }
    friend CycloInt operator*(CycloInt a, std::int64_t s) { return a *= s; }
    friend CycloInt operator*(std::int64_t s, CycloInt a) { return a *= s; }

    /// Negacyclic convolution.
    friend CycloInt operator*(const CycloInt& a, const CycloInt& b) {
        a.check_level(b);
        const std::size_t d = a.c_.size();
        CycloInt r(a.k_);
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                std::int64_t p = cyclo_detail::mul(a.c_[i], b.c_[j]);
                std::size_t e = i + j;
                if (e >= d) r.c_[e - d] = cyclo_detail::sub(r.c_[e - d], p);
                else r.c_[e] = cyclo_detail::add(r.c_[e], p);
            }
        }
        return r;
    }
    CycloInt& operator*=(const CycloInt& o) { return *this = *this * o; }

    /// Multiplication by zeta^e as a signed rotation of the coordinates.
    CycloInt rotate(std::int64_t e) const {
        const std::int64_t d = static_cast<std::int64_t>(c_.size());
        const std::int64_t q = 2 * d;
        std::int64_t s = ((e % q) + q) % q;
        CycloInt r(k_);
        for (std::int64_t j = 0; j < d; ++j) {
            std::int64_t t = j + s;
            bool neg = false;
            while (t >= d) {
                t -= d;
                neg = !neg;
            }
            r.c_[static_cast<std::size_t>(t)] = neg ? -c_[static_cast<std::size_t>(j)]
                                                    : c_[static_cast<std::size_t>(j)];
        }
        return r;
    }

    /// Complex conjugate: zeta^j -> zeta^(-j) = -zeta^(d - j) for 0 < j < d.
    CycloInt conj() const {
        CycloInt r(k_);
        const std::size_t d = c_.size();
        r.c_[0] = c_[0];
        for (std::size_t j = 1; j < d; ++j) r.c_[d - j] = cyclo_detail::sub(0, c_[j]);
        return r;
    }

    CycloInt norm_sq() const { return *this * conj(); }

    /// Same complex number at level k_new >= k.
    CycloInt lift(unsigned k_new) const {
        require(k_new >= k_, "lift target level must not be below the source level");
        CycloInt r(k_new);
        const std::size_t stride = std::size_t{1} << (k_new - k_);
        for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j * stride] = c_[j];
        return r;
    }

    /// Exact division by a rational integer; throws DisagreementError if inexact.
    CycloInt exact_div(std::int64_t v) const {
        require(v != 0, "division by zero");
        CycloInt r(k_);
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] % v != 0)
                throw DisagreementError("inexact division of cyclotomic coordinate by " +
                                        std::to_string(v));
            r.c_[j] = c_[j] / v;
        }
        return r;
    }

    /// Floating evaluation for reporting only.
    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        const double q = std::ldexp(1.0, static_cast<int>(k_));
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (!c_[j]) continue;
            double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / q;
            s += static_cast<double>(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloInt& a) {
        os << "k=" << a.k_ << "(";
        for (std::size_t j = 0; j < a.c_.size(); ++j) os << (j ? "," : "") << a.c_[j];
        return os << ")";
    }

private:
    void check_level(const CycloInt& o) const {
        require(k_ == o.k_, "cyclotomic level mismatch: " + std::to_string(k_) + " vs " +
                                std::to_string(o.k_));
    }

    unsigned k_;
    std::vector<std::int64_t> c_;
};

inline CycloInt zeta_pow(unsigned k, std::int64_t e) { return CycloInt::zeta_pow(k, e); }

}  // namespace gbentlab
