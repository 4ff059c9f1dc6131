// qcg: growth bounds for radial solutions of the Beltrami equation.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcg/cli.hpp"
#include "qcg/config.hpp"

namespace {

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::uint64_t seed = 42;
    int trials = 20;
    int order = 0;
    double R = 0.0;
};

qcg::RunConfig load(const Options& opt) {
    auto cfg = qcg::load_run_config(opt.config);
    if (opt.out) {
        cfg.out = *opt.out;
    }
    if (opt.format) {
        if (*opt.format != "csv" && *opt.format != "json") {
            throw qcg::ParseError("--format must be csv or json");
        }
        cfg.format = *opt.format;
    }
    qcg::apply_environment(cfg);
    return cfg;
}

void add_output_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config, "JSON run configuration")->required();
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth bounds at infinity for radial Beltrami solutions"};
    app.require_subcommand(1);
    Options opt;

    auto* analyze = app.add_subcommand("analyze", "tabulate M, I, Lambda and envelopes over an R grid");
    add_output_flags(analyze, opt);

    auto* verify = app.add_subcommand("verify", "liminf verdict for lemma3|lemma4|thm2|cor1|cor2");
    add_output_flags(verify, opt);

    auto* lemma5 = app.add_subcommand("lemma5", "check int_{e_N}^R dt/prod ln_k t = ln_{N+1} R");
    lemma5->add_option("--N", opt.order, "iterated-log order (0..3)")->required();
    lemma5->add_option("--R", opt.R, "upper limit, R > e_N")->required();

    auto* ring = app.add_subcommand("ring-check", "ring Q-homeomorphism inequality on random admissible eta");
    add_output_flags(ring, opt);
    ring->add_option("--trials", opt.trials, "number of random test functions");
    ring->add_option("--seed", opt.seed, "RNG seed");

    auto* families = app.add_subcommand("families", "list the radial mapping catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*analyze) {
            return qcg::cli::cmd_analyze(load(opt), std::cout);
        }
        if (*verify) {
            return qcg::cli::cmd_verify(load(opt), std::cout);
        }
        if (*lemma5) {
            qcg::RunConfig env_only;
            qcg::apply_environment(env_only);
            return qcg::cli::cmd_lemma5(opt.order, opt.R, env_only.quad, std::cout);
        }
        if (*ring) {
            return qcg::cli::cmd_ring_check(load(opt), opt.trials, opt.seed, std::cout);
        }
        if (*families) {
            return qcg::cli::cmd_families(std::cout);
        }
    } catch (const qcg::Error& e) {
        std::cerr << "qcg: " << e.what() << '\n';
        return qcg::cli::kExitUsage;
    }
    return qcg::cli::kExitUsage;
}
