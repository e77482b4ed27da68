// gbentlab: command-line front end.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gbentlab/cli.hpp"

namespace {

void add_input(CLI::App* sub, gbentlab::cli::RunConfig& cfg) {
    sub->add_option("--input,-i", cfg.input, "GBF file (JSON or text), '-' for stdin");
    sub->add_option("--gbf", cfg.inline_gbf, "GBF given inline (JSON or text)");
}

}  // namespace

int main(int argc, char** argv) {
    using gbentlab::cli::RunConfig;
    RunConfig cfg;
    cfg.threads = gbentlab::Exec::from_env().threads;

    CLI::App app{"Exact spectra, bentness tests and decomposition checks for generalized Boolean functions"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--threads", cfg.threads, "worker threads (default: GBENTLAB_THREADS or 1)");

    auto* spectrum = app.add_subcommand("spectrum", "generalized Walsh-Hadamard spectrum");
    add_input(spectrum, cfg);
    spectrum->add_option("--decimation", cfg.decimation, "none, all, or a list i1,i2,...");
    spectrum->add_option("--path", cfg.path, "fast or direct");

    auto* check = app.add_subcommand("check", "decide one property");
    add_input(check, cfg);
    check->add_option("--property", cfg.property,
                      "bent|semibent|gbent|hyperbent|ghyperbent|counts-even|counts-odd")
        ->required();
    check->add_option("--decimation", cfg.decimation, "all (default) or a list i1,i2,...");

    auto* construct = app.add_subcommand("construct", "build a g-hyperbent function");
    construct->add_option("--family", cfg.family, "ps-ap or coset-u")->required();
    construct->add_option("--m", cfg.m, "half degree m (n = 2m)");
    construct->add_option("--k", cfg.k, "level (values in Z_{2^k})");
    construct->add_option("--seed", cfg.seed, "sampler seed");
    construct->add_option("--g-table", cfg.g_table, "ps-ap: g(0),...,g(2^m - 1)");
    construct->add_option("--u-values", cfg.u_values, "coset-u: values on U (ascending)");
    construct->add_option("--f0", cfg.f0, "coset-u: value at 0");
    construct->add_flag("--violate", cfg.violate, "coset-u: sample a spec failing the criterion");

    auto* decompose = app.add_subcommand("decompose", "verify a decomposition theorem on one function");
    add_input(decompose, cfg);
    decompose->add_option("--theorem", cfg.theorem, "components|split|split-iff|t-split|recursive|base2t")
        ->required();
    decompose->add_option("--t", cfg.t, "block width t");
    decompose->add_option("--s", cfg.s, "recursion depth s");
    decompose->add_option("--c", cfg.c_bits, "recursion selector c_1...c_{s-1}, e.g. 01");
    decompose->add_option("--mode", cfg.split_mode, "split: check or iff");

    auto* search = app.add_subcommand("search", "enumerate or sample tables with a property");
    search->add_option("--property", cfg.property, "property to search for")->required();
    search->add_option("--n", cfg.n, "number of variables");
    search->add_option("--k", cfg.k, "level");
    search->add_option("--mode", cfg.mode, "exhaustive or random");
    search->add_option("--samples", cfg.samples, "random mode: number of tables");
    search->add_option("--seed", cfg.seed, "random mode: seed");
    search->add_option("--domain", cfg.domain, "vector or field");
    search->add_option("--max-log2", cfg.max_log2, "refuse exhaustive scans above 2^this tables");
    search->add_flag("--count-only", cfg.count_only, "print only the summary");

    auto* bench = app.add_subcommand("bench", "time the transform paths and check agreement");
    bench->add_option("--n", cfg.n, "number of variables");
    bench->add_option("--k", cfg.k, "level");
    bench->add_option("--seed", cfg.seed, "seed of the random input");
    bench->add_option("--reps", cfg.reps, "repetitions per path");
    for (auto* sub : {spectrum, check, construct, decompose, search, bench}) {
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--format", cfg.format, "json or text");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : gbentlab::cli::kParse;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (cfg.subcommand == "check" && cfg.decimation == "none") cfg.decimation = "all";
    return gbentlab::cli::run(cfg, std::cout, std::cerr);
}
