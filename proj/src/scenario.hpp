// Declarative experiment files: parsing, the classifier + Monte Carlo pipeline, and reports.
#pragma once

#include "limits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sat {

constexpr const char* kScenarioFormat = "satake-scenario/1";

struct ParseError : InputError {
    int line, column;
    ParseError(int l, int c, const std::string& what)
        : InputError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}
};

enum class Model { sl3, sl2r, unip, levi, ma };
std::string model_name(Model m);

struct Scenario {
    std::string name;
    std::vector<int> factors;
    Model model = Model::sl3;
    SequenceSpec sequence;
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    double ycap = kDefaultYCap;
    std::vector<double> tesc{1e2, 1e3, 1e4};
    int jobs = 1;
};

// "sl n" or "sl2^r"; throws InputError
std::vector<int> parse_group_spec(const std::string& spec);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

LimitDescriptor classify(const RootSystem& rs, Model model, const SequenceSpec& seq);

enum ExitCode { kPass = 0, kDisagree = 2, kNotCovered = 3, kInputError = 4 };

struct IndexResult {
    int index = 0;
    std::vector<BoundaryHistogram> histograms;   // one per tesc entry
    double truncation_loss = 0;
};

struct Report {
    Scenario scenario;
    LimitDescriptor predicted;
    Subset reported_label = 0;   // predicted label, or the empirical argmax when left to data
    std::vector<IndexResult> results;
    bool pass = false;
    int exit_code = kInputError;
    std::string message;
    double runtime_seconds = 0;
    std::string summary;   // deterministic given scenario and seed
};

// Runs the whole pipeline; never throws, errors land in exit_code and message.
// When out_dir is non-empty, writes points_<n>.tsv, summary.txt and verdict.txt there.
Report run_scenario(const Scenario& sc, const std::string& out_dir = "");

std::string label_name(Subset I, int rank);
std::string verdict_table(const Report& r);
std::string catalog_text();

}  // namespace sat
