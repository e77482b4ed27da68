#pragma once

// Exact decision procedures: bent, semibent, gbent (with regular forms and
// duals), the value-count criteria, hyperbent and g-hyperbent.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "gbf.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace gbentlab {

struct Witness {
    std::uint32_t u = 0;
    std::optional<std::uint32_t> i;  ///< decimation exponent, when relevant
};

struct PropertyReport {
    std::string property;
    bool verdict = false;
    std::optional<Witness> witness;
    nlohmann::json certificate;  ///< null when there is nothing to certify
};

// ---------------------------------------------------------------------------
// Regular forms of a gbent spectral value.

/// rho with h = 2^(n/2) zeta^rho (n even).
inline std::optional<std::uint32_t> match_even_form(const CycloInt& h, unsigned n) {
    if (n % 2) return std::nullopt;
    const std::int64_t mag = std::int64_t{1} << (n / 2);
    std::optional<std::uint32_t> rho;
    const auto c = h.coords();
    const std::uint32_t half = static_cast<std::uint32_t>(c.size());
    for (std::uint32_t j = 0; j < half; ++j) {
        if (c[j] == 0) continue;
        if (rho || (c[j] != mag && c[j] != -mag)) return std::nullopt;
        rho = c[j] > 0 ? j : j + (h.level() == 1 ? 1 : half);
    }
    return rho;
}

/// rho with h = 2^((n-1)/2) (zeta^(rho - 2^(k-3)) + zeta^(rho + 2^(k-3))) (n odd, k >= 3).
/// With zeta^(2^(k-3)) = zeta_8 this is 2^(n/2) zeta^rho, so rho is unique mod 2^k.
inline std::optional<std::uint32_t> match_odd_two_term(const CycloInt& h, unsigned n) {
    const unsigned k = h.level();
    if (n % 2 == 0 || k < 3) return std::nullopt;
    const std::int64_t scale = std::int64_t{1} << ((n - 1) / 2);
    const std::int64_t e = std::int64_t{1} << (k - 3);
    for (std::int64_t rho = 0; rho < (std::int64_t{1} << k); ++rho) {
        CycloInt cand = (zeta_pow(k, rho - e) + zeta_pow(k, rho + e)) * scale;
        if (cand == h) return static_cast<std::uint32_t>(rho);
    }
    return std::nullopt;
}

/// Signs (s_re, s_im) with h = 2^((n-1)/2) (s_re + s_im i) (n odd, k = 2).
inline std::optional<std::pair<int, int>> match_odd_exceptional(const CycloInt& h, unsigned n) {
    if (n % 2 == 0 || h.level() != 2) return std::nullopt;
    const std::int64_t scale = std::int64_t{1} << ((n - 1) / 2);
    const auto c = h.coords();
    if ((c[0] != scale && c[0] != -scale) || (c[1] != scale && c[1] != -scale)) return std::nullopt;
    return std::pair<int, int>{c[0] > 0 ? 1 : -1, c[1] > 0 ? 1 : -1};
}

/// 2^(n/2) zeta^rho built exactly (odd n through the two-term form).
inline CycloInt regular_value(unsigned n, unsigned k, std::int64_t rho) {
    if (n % 2 == 0) return zeta_pow(k, rho) * (std::int64_t{1} << (n / 2));
    require(k >= 3, "odd n regular value needs k >= 3");
    const std::int64_t e = std::int64_t{1} << (k - 3);
    return (zeta_pow(k, rho - e) + zeta_pow(k, rho + e)) * (std::int64_t{1} << ((n - 1) / 2));
}

inline bool is_regular_case(unsigned n, unsigned k) { return n % 2 == 0 || k >= 3; }

// ---------------------------------------------------------------------------

namespace props_detail {

inline std::optional<std::uint32_t> first_non_flat(const Spectrum& s) {
    const std::int64_t target = std::int64_t{1} << s.n;
    for (std::uint32_t u = 0; u < s.size(); ++u)
        if (!s[u].norm_sq().is_integer(target)) return u;
    return std::nullopt;
}

/// Regular-form certificate for a flat spectrum. Throws DisagreementError if
/// a flat value fits none of the forms.
inline nlohmann::json regular_certificate(const Spectrum& s) {
    nlohmann::json cert;
    const unsigned n = s.n, k = s.k;
    if (n % 2 == 1 && k == 2) {
        nlohmann::json signs = nlohmann::json::array();
        for (std::uint32_t u = 0; u < s.size(); ++u) {
            auto m = match_odd_exceptional(s[u], n);
            if (!m) throw DisagreementError("flat value outside 2^((n-1)/2)(+-1+-i) at u=" +
                                            std::to_string(u));
            signs.push_back({m->first, m->second});
        }
        cert["form"] = "odd_exceptional";
        cert["signs"] = std::move(signs);
        return cert;
    }
    std::vector<std::uint32_t> rho(s.size());
    for (std::uint32_t u = 0; u < s.size(); ++u) {
        auto m = n % 2 == 0 ? match_even_form(s[u], n) : match_odd_two_term(s[u], n);
        if (!m) throw DisagreementError("flat value outside the regular form at u=" +
                                        std::to_string(u));
        rho[u] = *m;
    }
    cert["form"] = n % 2 == 0 ? "even_power" : "odd_two_term";
    cert["rho"] = rho;
    return cert;
}

inline PropertyReport flatness_report(std::string name, const Spectrum& s) {
    PropertyReport r{std::move(name), true, std::nullopt, nullptr};
    if (auto u = first_non_flat(s)) {
        r.verdict = false;
        r.witness = Witness{*u, std::nullopt};
    }
    return r;
}

}  // namespace props_detail

inline PropertyReport is_bent(const GBF& f) {
    require(f.k() == 1, "bent test needs a Boolean function (k = 1)");
    require(f.n() % 2 == 0, "bent functions only exist for even n");
    const auto w = wht_fast_values(f);
    const std::int64_t sq = std::int64_t{1} << f.n();
    PropertyReport r{"bent", true, std::nullopt, nullptr};
    for (std::uint32_t u = 0; u < w.size(); ++u)
        if (w[u] * w[u] != sq) {
            r.verdict = false;
            r.witness = Witness{u, std::nullopt};
            break;
        }
    return r;
}

inline PropertyReport is_semibent(const GBF& f) {
    require(f.k() == 1, "semibent test needs a Boolean function (k = 1)");
    require(f.n() % 2 == 1, "semibent test is defined for odd n");
    const auto w = wht_fast_values(f);
    const std::int64_t peak = std::int64_t{1} << ((f.n() + 1) / 2);
    PropertyReport r{"semibent", true, std::nullopt, nullptr};
    for (std::uint32_t u = 0; u < w.size(); ++u)
        if (w[u] != 0 && w[u] != peak && w[u] != -peak) {
            r.verdict = false;
            r.witness = Witness{u, std::nullopt};
            break;
        }
    return r;
}

/// |H_f(u)|^2 = 2^n for all u, tested exactly. The certificate records the
/// regular form of every value and, in the regular case, the dual table.
inline PropertyReport is_gbent(const GBF& f, const Exec& exec = {}) {
    Spectrum s = gwht_fast_components(f, exec);
    PropertyReport r = props_detail::flatness_report("gbent", s);
    if (r.verdict) {
        r.certificate = props_detail::regular_certificate(s);
        if (r.certificate.contains("rho")) r.certificate["dual"] = r.certificate["rho"];
    }
    return r;
}

/// f*(u) = rho_u with H_f(u) = 2^(n/2) zeta^rho_u.
inline GBF dual(const GBF& f, const Exec& exec = {}) {
    if (f.n() % 2 == 1 && f.k() == 2)
        throw NotRegular("odd n with k = 2 has no regular dual");
    PropertyReport r = is_gbent(f, exec);
    if (!r.verdict)
        throw NotGbent("dual requested for a non-gbent function (fails at u=" +
                       std::to_string(r.witness->u) + ")");
    return f.rebuild(f.k(), r.certificate["rho"].get<std::vector<std::uint32_t>>());
}

/// Count criterion for even n: for every u there is rho_u < 2^(k-1) with
/// b_{2^(k-1)+rho_u} = b_{rho_u} +- 2^(n/2), and b_{2^(k-1)+j} = b_j otherwise.
inline PropertyReport check_gbent_by_counts_even(const GBF& f) {
    require(f.n() % 2 == 0, "even-n count criterion needs even n");
    const std::uint32_t half = std::uint32_t{1} << (f.k() - 1);
    const std::int64_t mag = std::int64_t{1} << (f.n() / 2);
    PropertyReport r{"counts-even", true, std::nullopt, nullptr};
    nlohmann::json cert = nlohmann::json::array();
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        auto b = value_distribution(f, u).counts;
        std::optional<std::uint32_t> rho;
        int sign = 0;
        bool ok = true;
        for (std::uint32_t j = 0; j < half && ok; ++j) {
            auto diff = static_cast<std::int64_t>(b[half + j]) - static_cast<std::int64_t>(b[j]);
            if (diff == 0) continue;
            if (rho || (diff != mag && diff != -mag)) ok = false;
            else {
                rho = j;
                sign = diff > 0 ? 1 : -1;
            }
        }
        if (!ok || !rho) {
            r.verdict = false;
            r.witness = Witness{u, std::nullopt};
            r.certificate = nullptr;
            return r;
        }
        cert.push_back({{"u", u}, {"rho", *rho}, {"sign", sign}});
    }
    r.certificate = std::move(cert);
    return r;
}

/// Count criterion for odd n, k >= 3: there is rho_u < 2^k with
/// |B(rho-e+2^(k-1))| - |B(rho-e)| = |B(rho+e+2^(k-1))| - |B(rho+e)| = +-2^((n-1)/2)
/// (e = 2^(k-3), same sign) and |B(r+2^(k-1))| = |B(r)| at every other r.
inline PropertyReport check_gbent_by_counts_odd(const GBF& f) {
    require(f.n() % 2 == 1, "odd-n count criterion needs odd n");
    require(f.k() >= 3, "odd-n count criterion needs k >= 3");
    const std::uint32_t q = f.modulus(), half = q / 2, e = q / 8;
    const std::int64_t mag = std::int64_t{1} << ((f.n() - 1) / 2);
    PropertyReport r{"counts-odd", true, std::nullopt, nullptr};
    nlohmann::json cert = nlohmann::json::array();
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        auto b = value_distribution(f, u).counts;
        auto D = [&](std::uint32_t j) {
            j &= q - 1;
            return static_cast<std::int64_t>(b[(j + half) & (q - 1)]) - static_cast<std::int64_t>(b[j]);
        };
        std::optional<std::uint32_t> found;
        int sign = 0;
        for (std::uint32_t rho = 0; rho < q && !found; ++rho) {
            const std::uint32_t p1 = (rho - e) & (q - 1), p2 = (rho + e) & (q - 1);
            const std::int64_t d1 = D(p1), d2 = D(p2);
            if (d1 != d2 || (d1 != mag && d1 != -mag)) continue;
            bool rest = true;
            for (std::uint32_t j = 0; j < q && rest; ++j) {
                if (j == p1 || j == p2 || j == ((p1 + half) & (q - 1)) || j == ((p2 + half) & (q - 1)))
                    continue;
                if (D(j) != 0) rest = false;
            }
            if (rest) {
                found = rho;
                sign = d1 > 0 ? 1 : -1;
            }
        }
        if (!found) {
            r.verdict = false;
            r.witness = Witness{u, std::nullopt};
            r.certificate = nullptr;
            return r;
        }
        cert.push_back({{"u", u}, {"rho", *found}, {"sign", sign}});
    }
    r.certificate = std::move(cert);
    return r;
}

/// Exponents to scan: the explicit list, or every coprime exponent when empty.
inline std::vector<std::uint32_t> decimation_set(const GBF& f, std::span<const std::uint32_t> only) {
    require(f.domain() == Domain::Field, "decimation needs a field domain");
    if (only.empty()) return f.field()->coprime_exponents();
    std::vector<std::uint32_t> v(only.begin(), only.end());
    std::sort(v.begin(), v.end());
    return v;
}

inline PropertyReport is_ghyperbent(const GBF& f, std::span<const std::uint32_t> only = {},
                                    const Exec& exec = {}) {
    require(f.domain() == Domain::Field, "g-hyperbent test needs a field domain");
    PropertyReport r{"ghyperbent", true, std::nullopt, nullptr};
    nlohmann::json per_i = nlohmann::json::object();
    const bool regular = is_regular_case(f.n(), f.k());
    for (std::uint32_t i : decimation_set(f, only)) {
        Spectrum s = ewht(f, i, TransformPath::Fast, exec);
        if (auto u = props_detail::first_non_flat(s)) {
            r.verdict = false;
            r.witness = Witness{*u, i};
            r.certificate = nullptr;
            return r;
        }
        if (regular) per_i[std::to_string(i)] = props_detail::regular_certificate(s)["rho"];
    }
    if (regular) r.certificate = {{"rho", std::move(per_i)}};
    return r;
}

inline PropertyReport is_hyperbent(const GBF& f, std::span<const std::uint32_t> only = {},
                                   const Exec& exec = {}) {
    require(f.k() == 1, "hyperbent test needs a Boolean function (k = 1)");
    require(f.domain() == Domain::Field, "hyperbent test needs a field domain");
    require(f.n() % 2 == 0, "hyperbent functions need even n");
    PropertyReport r = is_ghyperbent(f, only, exec);
    r.property = "hyperbent";
    return r;
}

}  // namespace gbentlab
