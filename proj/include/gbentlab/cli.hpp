#pragma once

// Subcommand implementations behind the gbentlab executable. Each cmd_*
// writes to `out`, reports problems on `err` and returns the exit code.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "construct.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "gbf.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "props.hpp"
#include "spectral.hpp"

namespace gbentlab::cli {

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kInvariant = 3, kBudget = 4, kDisagreement = 5 };

struct RunConfig {
    std::string subcommand;
    std::string input;         ///< path, or "-" for stdin
    std::string inline_gbf;    ///< JSON or text given on the command line
    std::string format = "json";
    std::string decimation = "none";  ///< none | all | comma-separated list
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string path = "fast";

    std::string property;
    std::string family;
    unsigned m = 2;
    unsigned n = 4;
    unsigned k = 1;
    std::string g_table;
    std::string u_values;
    std::optional<std::uint32_t> f0;
    bool violate = false;

    std::string theorem;
    unsigned t = 1;
    unsigned s = 1;
    std::string c_bits;
    std::string split_mode = "check";

    std::string mode = "exhaustive";
    std::string domain = "vector";
    std::uint64_t samples = 1000;
    unsigned max_log2 = 26;
    bool count_only = false;

    unsigned reps = 1;
};

namespace detail {

inline std::vector<std::uint64_t> parse_list(const std::string& s, const char* what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos, 0);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad ") + what + " entry '" + item + "'");
        }
        if (pos != item.size()) throw ParseError(std::string("bad ") + what + " entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

template <class T>
std::vector<T> narrow(const std::vector<std::uint64_t>& v, std::uint64_t limit, const char* what) {
    std::vector<T> out;
    for (auto x : v) {
        if (x > limit) throw ParseError(std::string(what) + " entry " + std::to_string(x) + " out of range");
        out.push_back(static_cast<T>(x));
    }
    return out;
}

inline GBF load_gbf(const RunConfig& cfg) {
    const bool has_path = !cfg.input.empty(), has_inline = !cfg.inline_gbf.empty();
    if (has_path == has_inline) throw ParseError("give exactly one of --input or --gbf");
    if (has_inline) return gbf_from_string(cfg.inline_gbf);
    std::string text;
    if (cfg.input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(cfg.input);
        if (!in) throw ParseError("cannot open " + cfg.input);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return gbf_from_string(text);
}

inline std::vector<std::uint32_t> decimations(const GBF& f, const std::string& policy) {
    if (policy == "none") return {};
    if (f.domain() != Domain::Field) throw InvariantError("decimation needs a field-domain function");
    if (policy == "all") return f.field()->coprime_exponents();
    return narrow<std::uint32_t>(parse_list(policy, "decimation"), f.field()->order(), "decimation");
}

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline bool flat(const GBF& f) { return !props_detail::first_non_flat(gwht_fast_components(f)); }

inline std::function<bool(const GBF&)> search_predicate(const std::string& p) {
    if (p == "bent") return [](const GBF& f) { return is_bent(f).verdict; };
    if (p == "semibent") return [](const GBF& f) { return is_semibent(f).verdict; };
    if (p == "gbent") return flat;
    if (p == "hyperbent") return [](const GBF& f) { return is_hyperbent(f).verdict; };
    if (p == "ghyperbent") return [](const GBF& f) { return is_ghyperbent(f).verdict; };
    if (p == "counts-even") return [](const GBF& f) { return check_gbent_by_counts_even(f).verdict; };
    if (p == "counts-odd") return [](const GBF& f) { return check_gbent_by_counts_odd(f).verdict; };
    throw ParseError("unknown property '" + p + "'");
}

/// FNV-1a over all coordinates, for comparing runs.
inline std::uint64_t digest(const Spectrum& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& v : s.values)
        for (auto c : v.coords()) h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ull;
    return h;
}

}  // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    GBF f = detail::load_gbf(cfg);
    Exec exec{cfg.threads};
    const TransformPath path = cfg.path == "direct" ? TransformPath::Direct : TransformPath::Fast;
    if (cfg.path != "direct" && cfg.path != "fast") throw ParseError("--path must be fast or direct");
    auto exps = detail::decimations(f, cfg.decimation);
    if (exps.empty()) {
        Spectrum s = gwht(f, path, exec);
        if (cfg.format == "text") out << to_text(s);
        else detail::emit(out, to_json(s));
        return kOk;
    }
    json per = json::object();
    for (auto i : exps) {
        Spectrum s = ewht(f, i, path, exec);
        if (cfg.format == "text") out << "# i = " << i << '\n' << to_text(s);
        else per[std::to_string(i)] = to_json(s);
    }
    if (cfg.format != "text") detail::emit(out, {{"decimations", std::move(per)}});
    return kOk;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
    GBF f = detail::load_gbf(cfg);
    Exec exec{cfg.threads};
    std::vector<std::uint32_t> only;
    if (cfg.decimation != "none" && cfg.decimation != "all") only = detail::decimations(f, cfg.decimation);
    const std::string& p = cfg.property;
    PropertyReport r;
    if (p == "bent") r = is_bent(f);
    else if (p == "semibent") r = is_semibent(f);
    else if (p == "gbent") r = is_gbent(f, exec);
    else if (p == "hyperbent") r = is_hyperbent(f, only, exec);
    else if (p == "ghyperbent") r = is_ghyperbent(f, only, exec);
    else if (p == "counts-even") r = check_gbent_by_counts_even(f);
    else if (p == "counts-odd") r = check_gbent_by_counts_odd(f);
    else throw ParseError("unknown property '" + p + "'");
    if (cfg.format == "text") {
        out << r.property << ": " << (r.verdict ? "yes" : "no");
        if (r.witness) {
            out << " (witness u=" << r.witness->u;
            if (r.witness->i) out << ", i=" << *r.witness->i;
            out << ")";
        }
        out << '\n';
    } else {
        detail::emit(out, to_json(r));
    }
    return kOk;
}

inline int cmd_construct(const RunConfig& cfg, std::ostream& out) {
    GBF f = GBF::zero(1, 1);
    if (cfg.family == "ps-ap") {
        PsApSpec spec{cfg.m, cfg.k, {}};
        spec.g_table = cfg.g_table.empty()
                           ? sample_ps_ap_g(cfg.m, cfg.k, cfg.seed)
                           : detail::narrow<std::uint32_t>(detail::parse_list(cfg.g_table, "g-table"),
                                                           0xffffffffu, "g-table");
        f = construct_ps_ap(spec);
    } else if (cfg.family == "coset-u") {
        CosetUSpec spec = cfg.violate ? sample_coset_u_violating(cfg.m, cfg.k, cfg.seed)
                                      : sample_coset_u_values(cfg.m, cfg.k, cfg.seed);
        if (!cfg.u_values.empty())
            spec.u_values = detail::narrow<std::uint32_t>(detail::parse_list(cfg.u_values, "u-values"),
                                                          0xffffffffu, "u-values");
        if (cfg.f0) spec.f0 = *cfg.f0;
        f = construct_coset_u(spec);
    } else {
        throw ParseError("--family must be ps-ap or coset-u");
    }
    if (cfg.format == "text") out << to_text(f);
    else detail::emit(out, to_json(f));
    return kOk;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
    GBF f = detail::load_gbf(cfg);
    Exec exec{cfg.threads};
    const std::string& th = cfg.theorem;
    DecompositionReport rep;
    if (th == "components") {
        rep = verify_component_theorem(f, exec);
    } else if (th == "split" || th == "split-iff") {
        SplitMode mode = th == "split-iff" || cfg.split_mode == "iff" ? SplitMode::Iff : SplitMode::Check;
        rep = verify_split_k_km1(f, mode, exec);
    } else if (th == "t-split") {
        rep = verify_t_split(f, cfg.t, exec);
    } else if (th == "recursive") {
        std::vector<std::uint8_t> c;
        for (char ch : cfg.c_bits) {
            if (ch == ',' || ch == ' ') continue;
            if (ch != '0' && ch != '1') throw ParseError("--c must be a bit string");
            c.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        rep = verify_recursive_gc(f, cfg.s, c, exec);
    } else if (th == "base2t") {
        rep = verify_base2t_theorem(f, cfg.t, exec);
    } else {
        throw ParseError("unknown theorem '" + th + "'");
    }
    if (cfg.format == "text") {
        out << rep.theorem << " (hypotheses " << (rep.hypotheses_met ? "met" : "not met") << ")\n";
        for (const auto& c : rep.clauses)
            out << (c.verdict ? "  [true]  " : "  [false] ") << c.claim << (c.required ? "" : "  (info)") << '\n';
    } else {
        detail::emit(out, to_json(rep));
    }
    return rep.ok() ? kOk : kDisagreement;
}

/// Exhaustive or seeded random scan. Streams matches, then a summary line.
inline int cmd_search(const RunConfig& cfg, std::ostream& out) {
    const unsigned n = cfg.n, k = cfg.k;
    if (n < 1 || n > 24 || k < 1 || k > 12) throw InvariantError("n must be in [1, 24] and k in [1, 12]");
    auto pred = detail::search_predicate(cfg.property);
    const bool field = cfg.domain == "field" || cfg.property == "hyperbent" || cfg.property == "ghyperbent";
    if (cfg.domain != "field" && cfg.domain != "vector") throw ParseError("--domain must be vector or field");
    std::shared_ptr<const FieldCtx> ctx = field ? FieldCtx::make(n) : nullptr;
    const std::size_t len = std::size_t{1} << n;
    const std::uint32_t mask = (std::uint32_t{1} << k) - 1;

    std::uint64_t total = 0;
    std::function<void(std::uint64_t, std::vector<std::uint32_t>&)> fill;
    if (cfg.mode == "exhaustive") {
        const std::uint64_t bits = std::uint64_t{k} * len;
        if (bits > cfg.max_log2)
            throw BudgetError("exhaustive search over 2^" + std::to_string(bits) + " tables exceeds the budget 2^" +
                              std::to_string(cfg.max_log2));
        total = std::uint64_t{1} << bits;
        fill = [=](std::uint64_t idx, std::vector<std::uint32_t>& t) {
            for (std::size_t x = 0; x < len; ++x) t[x] = static_cast<std::uint32_t>(idx >> (k * x)) & mask;
        };
    } else if (cfg.mode == "random") {
        total = cfg.samples;
        const std::uint64_t seed = cfg.seed;
        fill = [=](std::uint64_t idx, std::vector<std::uint32_t>& t) {
            std::mt19937_64 rng(detail::splitmix(seed ^ detail::splitmix(idx)));
            for (auto& v : t) v = static_cast<std::uint32_t>(rng()) & mask;
        };
    } else {
        throw ParseError("--mode must be exhaustive or random");
    }

    // Fixed-size blocks keep memory bounded and the output order independent of threads.
    const std::uint64_t block = std::uint64_t{1} << 16;
    std::uint64_t count = 0;
    for (std::uint64_t base = 0; base < total; base += block) {
        const std::uint64_t here = std::min(block, total - base);
        std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> hits;
        std::mutex guard;
        std::vector<std::uint64_t> found;
        parallel_chunks(here, Exec{cfg.threads}, [&](std::size_t lo, std::size_t hi) {
            std::vector<std::uint64_t> local;
            std::vector<std::uint32_t> t(len);
            for (std::size_t j = lo; j < hi; ++j) {
                fill(base + j, t);
                GBF f = field ? GBF(ctx, k, t) : GBF(n, k, t);
                if (pred(f)) local.push_back(base + j);
            }
            std::lock_guard lock(guard);
            hits.emplace_back(lo, std::move(local));
        });
        std::sort(hits.begin(), hits.end());
        for (auto& h : hits) found.insert(found.end(), h.second.begin(), h.second.end());
        count += found.size();
        if (cfg.count_only) continue;
        std::vector<std::uint32_t> t(len);
        for (auto idx : found) {
            fill(idx, t);
            if (cfg.format == "text") {
                out << "match " << idx;
                for (auto v : t) out << ' ' << v;
                out << '\n';
            } else {
                detail::emit(out, {{"index", idx}, {"table", t}});
            }
        }
    }
    if (cfg.format == "text") out << "count " << count << " scanned " << total << '\n';
    else
        detail::emit(out, {{"property", cfg.property}, {"n", n}, {"k", k}, {"mode", cfg.mode},
                           {"domain", field ? "field" : "vector"}, {"scanned", total}, {"count", count}});
    return kOk;
}

/// Times the transform paths on one seeded random function and checks they agree.
inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    const unsigned n = cfg.n, k = cfg.k;
    if (n < 1 || n > 24 || k < 1 || k > 12) throw InvariantError("n must be in [1, 24] and k in [1, 12]");
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (auto& v : t) v = static_cast<std::uint32_t>(rng()) & ((std::uint32_t{1} << k) - 1);
    const GBF f(n, k, std::move(t));
    Exec exec{cfg.threads};
    using clock = std::chrono::steady_clock;
    auto time = [&](auto&& fn) {
        auto a = clock::now();
        Spectrum s;
        for (unsigned r = 0; r < std::max(1u, cfg.reps); ++r) s = fn();
        return std::pair{s, std::chrono::duration<double>(clock::now() - a).count() / std::max(1u, cfg.reps)};
    };
    json rows = json::array();
    auto [fast, tf] = time([&] { return gwht_fast_components(f, exec); });
    rows.push_back({{"path", "gwht_fast_components"}, {"seconds", tf}});
    bool agree = true;
    if (n <= 14) {
        auto [direct, td] = time([&] { return gwht_direct(f, exec); });
        rows.push_back({{"path", "gwht_direct"}, {"seconds", td}});
        agree = agree && direct == fast;
    }
    if (k == 1) {
        auto [w, tw] = time([&] { return wht_fast(f); });
        rows.push_back({{"path", "wht_fast"}, {"seconds", tw}});
        agree = agree && w == fast;
    }
    const std::uint64_t dg = detail::digest(fast);
    if (cfg.format == "text") {
        out << "n=" << n << " k=" << k << " threads=" << cfg.threads << " digest=" << dg
            << (agree ? " agree" : " DISAGREE") << '\n';
        for (const auto& r : rows) out << "  " << r["path"].get<std::string>() << "  " << r["seconds"].get<double>() << " s\n";
    } else {
        detail::emit(out, {{"n", n}, {"k", k}, {"threads", cfg.threads}, {"digest", dg}, {"agree", agree},
                           {"timings", rows}});
    }
    return agree ? kOk : kDisagreement;
}

/// Dispatch plus the exit-code mapping.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.threads < 1) throw InvariantError("thread budget must be at least 1");
        if (cfg.format != "json" && cfg.format != "text") throw ParseError("--format must be json or text");
        if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out);
        if (cfg.subcommand == "check") return cmd_check(cfg, out);
        if (cfg.subcommand == "construct") return cmd_construct(cfg, out);
        if (cfg.subcommand == "decompose") return cmd_decompose(cfg, out);
        if (cfg.subcommand == "search") return cmd_search(cfg, out);
        if (cfg.subcommand == "bench") return cmd_bench(cfg, out);
        err << "unknown subcommand '" << cfg.subcommand << "'\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const DisagreementError& e) {
        err << "internal disagreement: " << e.what() << '\n';
        return kDisagreement;
    } catch (const Error& e) {
        err << "invariant violated: " << e.what() << '\n';
        return kInvariant;
    }
}

}  // namespace gbentlab::cli
