#pragma once

// Subcommand execution behind the command-line tool. Reports are JSON with
// sorted keys and numbers printed at fixed precision, so identical inputs
// give byte-identical reports.

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

#include "mixweyl/app/scenario.hpp"
#include "mixweyl/criteria.hpp"
#include "mixweyl/weyl.hpp"

namespace mixweyl::app {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_scenario = 2,
    exit_inadmissible = 3,
    exit_precision = 4,
    exit_undecided = 5,
};

struct Invocation {
    std::string command;
    std::vector<std::string> targets;  // scenario names or paths; one except for batch
    std::optional<double> lambda_re;
    std::optional<double> lambda_im;
    std::optional<double> alpha;
    std::optional<long> n_max;
    std::optional<long> bits;
    std::optional<std::string> mode;
    std::optional<std::string> M;
    bool strict = false;
    std::optional<std::string> out;
    double c1 = 1.0;
    double c1_im = 0.0;
    double c2 = 0.0;
    double c2_im = 0.0;
    std::optional<long> N;
    double beta = 0.0;
    unsigned jobs = 0;  // batch: 0 picks the hardware concurrency
};

struct Artifact {
    std::string file_name;
    std::string content;
};

struct RunResult {
    nlohmann::json report;
    std::vector<Artifact> artifacts;
    nlohmann::json timings;
    int exit_code = exit_ok;
};

/// Scenario with the invocation's overrides applied; throws ScenarioError.
Scenario scenario_for(const Invocation& inv, const std::string& target);

/// Throws the library's errors; map them with exit_code_for.
RunResult run(const Invocation& inv);

int exit_code_for(const std::exception& error);

/// Writes the report and artifacts under `dir`, creating it.
void write_outputs(const RunResult& result, const std::string& dir);

nlohmann::json to_json(const Scalar& z);
nlohmann::json to_json(const Real& x);
nlohmann::json to_json(const CriterionVerdict& verdict);
std::string disc_csv(const ClassificationReport& report);

/// Parses argv and runs; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace mixweyl::app
