#include <CLI11.hpp>
#include <iostream>

#include "mqc/errors.hpp"
#include "mqc/pipeline.hpp"

int main(int argc, char** argv) {
    mqc::RunConfig cfg;
    CLI::App app{"census of imaginary multiquadratic fields with 2-power class number"};
    app.fallthrough();
    app.set_config("--config", "", "key=value config file; flags override");
    app.add_option("--m", cfg.m, "class number exponent: keep fields with h | 2^m");
    app.add_option("--bound", cfg.bound, "census discriminant bound (0: derived from m)");
    app.add_option("--max-level", cfg.max_level, "highest censused level (-1: m+1)");
    app.add_option("--data-dir", cfg.data_dir, "checkpoint directory");
    app.add_option("--oracle-cmd", cfg.oracle_cmd, "external responder command line");
    app.add_option("--oracle-timeout-secs", cfg.oracle_timeout_secs, "per-request deadline");
    app.add_option("--jobs", cfg.jobs, "worker thread cap");

    auto* census = app.add_subcommand("census", "enumerate the quadratic class-number levels");
    auto* biquad = app.add_subcommand("biquad", "degree-4 stage");
    auto* segment = app.add_subcommand("segment", "one degree-2^n recursion step");
    int seg_n = 3;
    segment->add_option("--n", seg_n, "degree exponent n")->required();
    auto* run = app.add_subcommand("run", "full census, degree 4 upward");
    auto* verify = app.add_subcommand("verify", "diff a checkpoint against a published table");
    std::string table;
    verify->add_option("--table", table, "table identifier")->required();
    auto* bound = app.add_subcommand("bound", "least exponent m admitting degree-2^n fields");
    int bound_n = 2;
    bound->add_option("--n", bound_n, "degree exponent n")->required();
    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*census) return mqc::cmd_census(cfg);
        if (*biquad) return mqc::cmd_biquad(cfg);
        if (*segment) return mqc::cmd_segment(cfg, seg_n);
        if (*run) return mqc::cmd_run(cfg);
        if (*verify) return mqc::cmd_verify(cfg, table);
        if (*bound) return mqc::cmd_bound(bound_n);
    } catch (const mqc::OracleUnavailable& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const mqc::UnknownTable& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const mqc::IoError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
