#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "gbentlab/cli.hpp"
#include "oracles.hpp"

using namespace gbentlab;
using cli::RunConfig;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(RunConfig cfg) {
    std::ostringstream out, err;
    int code = cli::run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig with_gbf(std::string sub, const GBF& f) {
    RunConfig c;
    c.subcommand = std::move(sub);
    c.inline_gbf = to_json(f).dump();
    return c;
}

std::vector<json> lines(const std::string& s) {
    std::vector<json> v;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) v.push_back(json::parse(line));
    return v;
}

#ifdef GBENTLAB_CLI_PATH
Result shell(const std::string& args) {
    const std::string cmd = std::string(GBENTLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, p)) out.append(buf, got);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}
#endif

}  // namespace

TEST(Cli, SpectrumJsonRoundTrips) {
    GBF f(2, 2, {0, 0, 0, 1});
    auto r = run(with_gbf("spectrum", f));
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(spectrum_from_json(json::parse(r.out)), gwht_direct(f));
    auto cfg = with_gbf("spectrum", f);
    cfg.path = "direct";
    EXPECT_EQ(run(cfg).out, r.out);
    cfg.format = "text";
    EXPECT_NE(run(cfg).out.find("[3 1]"), std::string::npos);
}

TEST(Cli, SpectrumPerDecimation) {
    std::mt19937_64 rng(1);
    GBF f = oracle::random_gbf(rng, 3, 2, true);
    auto cfg = with_gbf("spectrum", f);
    cfg.decimation = "all";
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = json::parse(r.out)["decimations"];
    EXPECT_EQ(j.size(), 6u);
    for (std::uint32_t i : f.field()->coprime_exponents())
        EXPECT_EQ(spectrum_from_json(j[std::to_string(i)]), oracle::ewht(f, i));
    cfg.decimation = "3";
    EXPECT_EQ(json::parse(run(cfg).out)["decimations"].size(), 1u);
    cfg.decimation = "7";
    EXPECT_EQ(run(cfg).code, cli::kInvariant);
    cfg.decimation = "x";
    EXPECT_EQ(run(cfg).code, cli::kParse);
}

TEST(Cli, InputErrors) {
    RunConfig cfg;
    cfg.subcommand = "spectrum";
    cfg.inline_gbf = R"({"n":2,"k":2,"table":[0,1,2]})";
    auto r = run(cfg);
    EXPECT_EQ(r.code, cli::kInvariant);
    EXPECT_NE(r.err.find("table"), std::string::npos);
    cfg.inline_gbf = "{oops";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.inline_gbf.clear();
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.input = "/nonexistent/file.json";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.inline_gbf = "gbf 1 1 vector\n0 1";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    RunConfig bad;
    bad.subcommand = "nope";
    EXPECT_EQ(run(bad).code, cli::kUsage);
    RunConfig zero_threads = with_gbf("spectrum", GBF::zero(2, 1));
    zero_threads.threads = 0;
    EXPECT_EQ(run(zero_threads).code, cli::kInvariant);
}

TEST(Cli, InputFromFile) {
    auto path = std::filesystem::temp_directory_path() / "gbentlab_cli_input.txt";
    {
        std::ofstream o(path);
        o << "gbf 2 2 vector\n0 0 0 2\n";
    }
    RunConfig cfg;
    cfg.subcommand = "check";
    cfg.property = "gbent";
    cfg.input = path.string();
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(json::parse(r.out)["verdict"], true);
    std::filesystem::remove(path);
}

TEST(Cli, CheckReports) {
    auto cfg = with_gbf("check", construct_ps_ap(PsApSpec{2, 1, {0, 0, 1, 1}}));
    cfg.property = "hyperbent";
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto rep = property_report_from_json(json::parse(r.out));
    EXPECT_TRUE(rep.verdict);
    cfg.format = "text";
    EXPECT_EQ(run(cfg).out, "hyperbent: yes\n");
    cfg = with_gbf("check", GBF::zero(2, 1));
    cfg.property = "bent";
    cfg.format = "text";
    EXPECT_EQ(run(cfg).out, "bent: no (witness u=0)\n");
    cfg.property = "semibent";
    EXPECT_EQ(run(cfg).code, cli::kInvariant);
    cfg.property = "sparkly";
    EXPECT_EQ(run(cfg).code, cli::kParse);
}

TEST(Cli, ConstructFamilies) {
    RunConfig cfg;
    cfg.subcommand = "construct";
    cfg.family = "ps-ap";
    cfg.m = 2;
    cfg.k = 3;
    cfg.seed = 4;
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    GBF f = gbf_from_json(json::parse(r.out));
    EXPECT_EQ(f, construct_ps_ap(PsApSpec{2, 3, sample_ps_ap_g(2, 3, 4)}));
    EXPECT_EQ(run(cfg).out, r.out);

    cfg.g_table = "0,4,1,5";
    EXPECT_EQ(gbf_from_json(json::parse(run(cfg).out)), construct_ps_ap(PsApSpec{2, 3, {0, 4, 1, 5}}));
    cfg.g_table = "0,4,1,1";
    EXPECT_EQ(run(cfg).code, cli::kInvariant);

    cfg = RunConfig{};
    cfg.subcommand = "construct";
    cfg.family = "coset-u";
    cfg.m = 2;
    cfg.k = 3;
    cfg.u_values = "0,0,0,0,0";
    cfg.f0 = 0;
    GBF c = gbf_from_json(json::parse(run(cfg).out));
    EXPECT_FALSE(is_ghyperbent(c).verdict);
    cfg.u_values.clear();
    cfg.f0.reset();
    cfg.violate = true;
    EXPECT_FALSE(is_ghyperbent(gbf_from_json(json::parse(run(cfg).out))).verdict);
    cfg.violate = false;
    EXPECT_TRUE(is_ghyperbent(gbf_from_json(json::parse(run(cfg).out))).verdict);
    cfg.k = 2;
    EXPECT_EQ(run(cfg).code, cli::kInvariant);
    cfg.family = "other";
    EXPECT_EQ(run(cfg).code, cli::kParse);
}

TEST(Cli, DecomposeExitCodes) {
    std::mt19937_64 rng(2);
    auto cfg = with_gbf("decompose", oracle::even_gbent(rng, 4, 3));
    for (std::string th : {"components", "split", "split-iff", "recursive", "base2t"}) {
        cfg.theorem = th;
        cfg.t = 1;
        cfg.s = 1;
        auto r = run(cfg);
        ASSERT_EQ(r.code, cli::kOk) << th << " " << r.err;
        EXPECT_TRUE(decomposition_report_from_json(json::parse(r.out)).ok());
    }
    cfg.theorem = "recursive";
    cfg.s = 3;
    cfg.c_bits = "01";
    EXPECT_EQ(run(cfg).code, cli::kOk);
    cfg.c_bits = "0x";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.theorem = "t-split";
    cfg.t = 2;
    EXPECT_EQ(run(cfg).code, cli::kInvariant);
    cfg.theorem = "prop99";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.theorem = "split";
    cfg.format = "text";
    EXPECT_NE(run(cfg).out.find("[true]  (ii) implies (i)"), std::string::npos);
}

TEST(Cli, SearchBentCensus) {
    RunConfig cfg;
    cfg.subcommand = "search";
    cfg.property = "bent";
    cfg.n = 4;
    cfg.k = 1;
    cfg.count_only = true;
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["count"], 896);
    EXPECT_EQ(j["scanned"], 65536);
    cfg.threads = 3;
    EXPECT_EQ(run(cfg).out, r.out);
}

TEST(Cli, SearchQuaternaryMatchesDirectCriterion) {
    RunConfig cfg;
    cfg.subcommand = "search";
    cfg.property = "gbent";
    cfg.n = 2;
    cfg.k = 2;
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto ls = lines(r.out);
    ASSERT_FALSE(ls.empty());
    EXPECT_EQ(ls.back()["scanned"], 256);
    std::set<std::uint64_t> found;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) found.insert(ls[i]["index"].get<std::uint64_t>());
    for (std::uint32_t idx = 0; idx < 256; ++idx) {
        GBF f = GBF::tabulate(2, 2, [&](std::uint32_t x) { return (idx >> (2 * x)) & 3; });
        EXPECT_EQ(found.count(idx) == 1, oracle::flat(oracle::gwht(f))) << idx;
    }
    EXPECT_EQ(ls.back()["count"], found.size());
}

TEST(Cli, SearchRandomIsDeterministic) {
    RunConfig cfg;
    cfg.subcommand = "search";
    cfg.property = "gbent";
    cfg.mode = "random";
    cfg.n = 2;
    cfg.k = 2;
    cfg.samples = 1000;
    cfg.seed = 7;
    auto a = run(cfg);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(run(cfg).out, a.out);
    cfg.threads = 4;
    EXPECT_EQ(run(cfg).out, a.out);
    cfg.seed = 8;
    EXPECT_NE(run(cfg).out, a.out);
}

TEST(Cli, SearchBudgetAndErrors) {
    RunConfig cfg;
    cfg.subcommand = "search";
    cfg.property = "bent";
    cfg.n = 6;
    EXPECT_EQ(run(cfg).code, cli::kBudget);
    cfg.max_log2 = 64;
    cfg.n = 2;
    cfg.mode = "sideways";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.mode = "exhaustive";
    cfg.domain = "torus";
    EXPECT_EQ(run(cfg).code, cli::kParse);
    cfg.domain = "vector";
    cfg.n = 30;
    EXPECT_EQ(run(cfg).code, cli::kInvariant);
}

TEST(Cli, SearchOverFieldDomain) {
    RunConfig cfg;
    cfg.subcommand = "search";
    cfg.property = "hyperbent";
    cfg.n = 4;
    cfg.count_only = true;
    auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["domain"], "field");
    EXPECT_EQ(j["count"], 56);
}

TEST(Cli, BenchAgreesAndIsThreadIndependent) {
    RunConfig cfg;
    cfg.subcommand = "bench";
    cfg.n = 12;
    cfg.k = 3;
    auto a = run(cfg);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    auto ja = json::parse(a.out);
    EXPECT_EQ(ja["agree"], true);
    cfg.threads = 8;
    auto jb = json::parse(run(cfg).out);
    EXPECT_EQ(jb["digest"], ja["digest"]);
    cfg.k = 1;
    cfg.n = 10;
    auto jc = json::parse(run(cfg).out);
    EXPECT_EQ(jc["agree"], true);
    EXPECT_EQ(jc["timings"].size(), 3u);
}

#ifdef GBENTLAB_CLI_PATH
TEST(CliBinary, ExitCodes) {
    EXPECT_EQ(shell("spectrum --gbf '{\"n\":2,\"k\":2,\"table\":[0,1,2]}'").code, 3);
    EXPECT_EQ(shell("spectrum --gbf '{nope'").code, 2);
    EXPECT_EQ(shell("spectrum --frobnicate").code, 2);
    EXPECT_EQ(shell("search --property bent --n 6").code, 4);
    auto ok = shell("check --property gbent --gbf 'gbf 2 2 vector\n0 0 0 2' --format text");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "gbent: yes\n");
}

TEST(CliBinary, BentCensusAcrossThreadBudgets) {
    auto a = shell("search --property bent --n 4 --count-only --threads 1");
    auto b = shell("search --property bent --n 4 --count-only --threads 4");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["count"], 896);
}

TEST(CliBinary, StdinInput) {
    auto r = shell("construct --family ps-ap --m 2 --k 2 --seed 3 | " + std::string(GBENTLAB_CLI_PATH) +
                   " check --property ghyperbent --input - --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "ghyperbent: yes\n");
}
#endif
