// satake: scenario runner on top of the C interface.
#include "satake.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

int run_command(const std::string& file, std::optional<int> jobs, std::optional<std::uint64_t> seed,
                std::optional<std::size_t> samples, const std::string& out) {
    sat_scenario* sc = nullptr;
    if (sat_scenario_load(file.c_str(), &sc) != SAT_OK) {
        std::cerr << file << ": " << sat_last_error() << "\n";
        return SAT_INPUT_ERROR;
    }
    sat_status st = SAT_OK;
    if (jobs) st = sat_scenario_set_jobs(sc, *jobs);
    if (st == SAT_OK && seed) st = sat_scenario_set_seed(sc, *seed);
    if (st == SAT_OK && samples) st = sat_scenario_set_samples(sc, *samples);
    if (st != SAT_OK) {
        std::cerr << sat_last_error() << "\n";
        sat_scenario_free(sc);
        return SAT_INPUT_ERROR;
    }
    std::string dir = out.empty() ? "satake_out/" + std::string(sat_scenario_name(sc)) : out;
    sat_report* rep = nullptr;
    st = sat_run(sc, dir.c_str(), &rep);
    sat_scenario_free(sc);
    if (st != SAT_OK) {
        std::cerr << sat_last_error() << "\n";
        return st;
    }
    int code = sat_report_exit_code(rep);
    if (code == SAT_OK || code == SAT_DISAGREE) {
        std::cout << sat_report_verdict_table(rep);
        std::cout << "trace: " << sat_report_trace(rep) << "\n";
        std::cout << "outputs in " << dir << "\n";
    }
    if (code != SAT_OK) std::cerr << sat_report_message(rep) << "\n";
    sat_report_free(rep);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limits of translated homogeneous measures: classifiers and Monte Carlo checks"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one scenario file");
    std::string file, out;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    run->add_option("file", file, "Scenario file")->required();
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Monte Carlo seed");
    run->add_option("--samples", samples, "Samples per index")->check(CLI::PositiveNumber);
    run->add_option("--out", out, "Output directory (default satake_out/<name>)");

    auto* cat = app.add_subcommand("list-catalog", "Print the subgroup catalog and classifier coverage");

    auto* ver = app.add_subcommand("verify-identities", "Run the exact and numeric identity checks");
    int trials = 200;
    std::uint64_t vseed = 7;
    ver->add_option("--trials", trials, "Random trials per group size")->check(CLI::PositiveNumber);
    ver->add_option("--seed", vseed, "Seed for random trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : SAT_INPUT_ERROR;
    }

    if (*run) return run_command(file, jobs, seed, samples, out);
    if (*cat) {
        char* text = sat_catalog_text();
        std::cout << text;
        sat_string_free(text);
        return 0;
    }
    if (*ver) {
        char* report = nullptr;
        int ok = 0;
        if (sat_verify_identities(trials, vseed, &report, &ok) != SAT_OK) {
            std::cerr << sat_last_error() << "\n";
            return SAT_INPUT_ERROR;
        }
        std::cout << report;
        sat_string_free(report);
        return ok ? 0 : 1;
    }
    return SAT_INPUT_ERROR;
}
