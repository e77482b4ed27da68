#pragma once

// JSON and text serialization. JSON is the stable interchange format; the
// text format is for people.

#include <cstdint>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "construct.hpp"
#include "cyclo.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gbf.hpp"
#include "json.hpp"
#include "props.hpp"
#include "spectral.hpp"

namespace gbentlab {

using nlohmann::json;

inline json to_json(const CycloInt& c) {
    return {{"k", c.level()}, {"coords", std::vector<std::int64_t>(c.coords().begin(), c.coords().end())}};
}

inline CycloInt cyclo_from_json(const json& j) {
    try {
        return CycloInt(j.at("k").get<unsigned>(), j.at("coords").get<std::vector<std::int64_t>>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad CycloInt JSON: ") + e.what());
    }
}

inline json to_json(const GBF& f) {
    json j{{"n", f.n()}, {"k", f.k()}, {"domain", to_string(f.domain())}};
    if (f.domain() == Domain::Field) j["poly"] = format_poly(f.field()->modulus());
    j["table"] = std::vector<std::uint32_t>(f.table().begin(), f.table().end());
    return j;
}

namespace io_detail {

inline GBF make_gbf(unsigned n, unsigned k, const std::string& domain, const std::string& poly,
                    std::vector<std::uint32_t> table) {
    if (domain == "vector") {
        if (!poly.empty()) throw ParseError("vector domain takes no modulus");
        return GBF(n, k, std::move(table));
    }
    if (domain != "field") throw ParseError("domain must be \"vector\" or \"field\", got \"" + domain + "\"");
    auto ctx = poly.empty() ? FieldCtx::make(n) : FieldCtx::make(n, parse_poly(poly));
    return GBF(std::move(ctx), k, std::move(table));
}

}  // namespace io_detail

inline GBF gbf_from_json(const json& j) {
    unsigned n = 0, k = 0;
    std::string domain, poly;
    std::vector<std::uint32_t> table;
    try {
        n = j.at("n").get<unsigned>();
        k = j.at("k").get<unsigned>();
        domain = j.value("domain", std::string("vector"));
        if (j.contains("poly") && !j["poly"].is_null()) poly = j["poly"].get<std::string>();
        table = j.at("table").get<std::vector<std::uint32_t>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad GBF JSON: ") + e.what());
    }
    return io_detail::make_gbf(n, k, domain, poly, std::move(table));
}

/// "gbf n k domain [poly]" followed by 2^n whitespace-separated values.
inline std::string to_text(const GBF& f) {
    std::ostringstream os;
    os << "gbf " << f.n() << ' ' << f.k() << ' ' << to_string(f.domain());
    if (f.domain() == Domain::Field) os << ' ' << format_poly(f.field()->modulus());
    os << '\n';
    for (std::size_t x = 0; x < f.size(); ++x) os << f.table()[x] << ((x + 1) % 16 == 0 || x + 1 == f.size() ? '\n' : ' ');
    return os.str();
}

inline GBF gbf_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty GBF text");
    std::istringstream head(line);
    std::string tag, domain, poly;
    long long n = -1, k = -1;
    if (!(head >> tag >> n >> k >> domain) || tag != "gbf")
        throw ParseError("GBF text header must read 'gbf n k domain [poly]'");
    head >> poly;
    if (n < 1 || n > 24 || k < 1 || k > 12) throw ParseError("header n or k out of range");
    std::vector<std::uint32_t> table;
    long long v;
    while (is >> v) {
        if (v < 0) throw ParseError("negative table value");
        table.push_back(static_cast<std::uint32_t>(v));
    }
    if (!is.eof()) throw ParseError("non-numeric token in GBF table");
    return io_detail::make_gbf(static_cast<unsigned>(n), static_cast<unsigned>(k), domain, poly, std::move(table));
}

/// Accepts either the JSON or the text format.
inline GBF gbf_from_string(const std::string& s) {
    auto p = s.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && s[p] == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        return gbf_from_json(j);
    }
    return gbf_from_text(s);
}

inline json to_json(const Spectrum& s) {
    json vals = json::array();
    for (std::uint32_t u = 0; u < s.size(); ++u) {
        auto z = s[u].to_complex();
        vals.push_back({{"u", u},
                        {"coords", std::vector<std::int64_t>(s[u].coords().begin(), s[u].coords().end())},
                        {"float", {z.real(), z.imag()}}});
    }
    return {{"n", s.n}, {"k", s.k}, {"values", std::move(vals)}};
}

inline Spectrum spectrum_from_json(const json& j) {
    try {
        Spectrum s{j.at("n").get<unsigned>(), j.at("k").get<unsigned>(), {}};
        for (const auto& v : j.at("values")) s.values.emplace_back(s.k, v.at("coords").get<std::vector<std::int64_t>>());
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad spectrum JSON: ") + e.what());
    }
}

inline std::string to_text(const Spectrum& s) {
    std::ostringstream os;
    os << "# u  coords  (re, im)\n" << std::fixed << std::setprecision(6);
    for (std::uint32_t u = 0; u < s.size(); ++u) {
        auto z = s[u].to_complex();
        os << u << "  [";
        for (std::size_t j = 0; j < s[u].dim(); ++j) os << (j ? " " : "") << s[u][j];
        os << "]  (" << z.real() << ", " << z.imag() << ")\n";
    }
    return os.str();
}

inline json to_json(const Witness& w) {
    json j{{"u", w.u}};
    if (w.i) j["i"] = *w.i;
    return j;
}

inline json to_json(const PropertyReport& r) {
    return {{"property", r.property},
            {"verdict", r.verdict},
            {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
            {"certificate", r.certificate}};
}

inline PropertyReport property_report_from_json(const json& j) {
    try {
        PropertyReport r{j.at("property").get<std::string>(), j.at("verdict").get<bool>(), std::nullopt,
                         j.value("certificate", json(nullptr))};
        if (j.contains("witness") && !j["witness"].is_null()) {
            Witness w{j["witness"].at("u").get<std::uint32_t>(), std::nullopt};
            if (j["witness"].contains("i")) w.i = j["witness"]["i"].get<std::uint32_t>();
            r.witness = w;
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad property report JSON: ") + e.what());
    }
}

inline json to_json(const DecompositionReport& r) {
    json cl = json::array();
    for (const auto& c : r.clauses)
        cl.push_back({{"claim", c.claim}, {"verdict", c.verdict}, {"required", c.required}, {"witness", c.witness}});
    json j{{"theorem", r.theorem}, {"hypotheses_met", r.hypotheses_met}, {"consistent", r.ok()}, {"clauses", cl}};
    j["sign_pattern"] = r.sign_pattern ? json(*r.sign_pattern) : json(nullptr);
    return j;
}

inline DecompositionReport decomposition_report_from_json(const json& j) {
    try {
        DecompositionReport r;
        r.theorem = j.at("theorem").get<std::string>();
        r.hypotheses_met = j.at("hypotheses_met").get<bool>();
        for (const auto& c : j.at("clauses"))
            r.clauses.push_back({c.at("claim").get<std::string>(), c.at("verdict").get<bool>(),
                                 c.at("required").get<bool>(), c.value("witness", json(nullptr))});
        if (j.contains("sign_pattern") && !j["sign_pattern"].is_null())
            r.sign_pattern = j["sign_pattern"].get<std::vector<int>>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad decomposition report JSON: ") + e.what());
    }
}

inline bool operator==(const Clause& a, const Clause& b) {
    return a.claim == b.claim && a.verdict == b.verdict && a.required == b.required && a.witness == b.witness;
}

inline bool operator==(const DecompositionReport& a, const DecompositionReport& b) {
    return a.theorem == b.theorem && a.hypotheses_met == b.hypotheses_met && a.clauses == b.clauses &&
           a.sign_pattern == b.sign_pattern;
}

}  // namespace gbentlab
