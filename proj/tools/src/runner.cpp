#include "mixweyl/app/runner.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "mixweyl/app/invariants.hpp"
#include "mixweyl/recurrence.hpp"

#ifndef MIXWEYL_VERSION
#define MIXWEYL_VERSION "0.0.0"
#endif

namespace mixweyl::app {

namespace {

constexpr int kReportDigits = 25;
constexpr int kCsvDigits = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json base_report(const std::string& command, const Scenario& s)
{
    nlohmann::json report;
    report["schema_version"] = kSchemaVersion;
    report["tool_version"] = MIXWEYL_VERSION;
    report["command"] = command;
    report["scenario"] = s.to_json();
    report["precision"] = {{"mode", to_string(s.precision.mode)}, {"bits", s.precision.bits()}};
    return report;
}

nlohmann::json disc_json(const WeylDisc& d)
{
    return {{"N", d.N}, {"center", to_json(d.center)}, {"radius", to_json(d.radius)}, {"S_psi", to_json(d.S)}};
}

nlohmann::json criteria_json(const Scenario& s, const Invocation& inv)
{
    const CoefficientSet model = s.model();
    nlohmann::json out;
    out["thm51"] = to_json(thm51_check(model, s.n_max));
    if (inv.M) {
        CoefficientExpr M = CoefficientExpr::parse(*inv.M);
        out["thm52"] = to_json(thm52_check(model, M, s.n_max));
        out["thm52"]["M"] = M.to_string();
    } else {
        out["thm52"] = {{"outcome", "skipped"}, {"reason", "requires --M"}};
    }
    return out;
}

RunResult run_classify(const Scenario& s, const Invocation& inv)
{
    const auto start = Clock::now();
    const ClassificationReport r = classify(s.model(), s.lambda(), s.alpha_real(), s.classify_options());
    const double classify_seconds = seconds_since(start);

    RunResult result;
    nlohmann::json& report = result.report;
    report = base_report("classify", s);
    report["precision"]["guard_bits"] = r.guard_bits;
    report["lambda"] = to_json(r.lambda);
    report["alpha"] = to_json(r.alpha);
    report["verdict"] = to_string(r.verdict);
    report["l2_solution_count"] = r.l2_solution_count == 0 ? nlohmann::json("undecided") : nlohmann::json(r.l2_solution_count);
    report["m_limit"] = to_json(r.m_limit);
    report["psi_profile"] = to_string(r.psi_profile.growth_verdict);
    report["chi_profile"] = to_string(r.chi_profile.growth_verdict);
    nlohmann::json last = disc_json(r.disc_samples.back());
    last["T_chi"] = to_json(r.chi_profile.partial_sums.back());
    report["final_disc"] = last;
    const std::optional<Scalar> second = s.classify_options().cross_check;
    report["cross_check"] = {{"lambda", second ? to_json(second->with_precision(s.precision.bits())) : nlohmann::json(nullptr)},
                             {"verdict", r.cross_check_verdict ? nlohmann::json(to_string(*r.cross_check_verdict))
                                                               : nlohmann::json(nullptr)}};
    report["guidance"] = r.guidance;
    report["disc_samples_path"] = "discs.csv";
    report["timings_path"] = "timings.json";
    report["criteria"] = criteria_json(s, inv);

    result.artifacts.push_back({"discs.csv", disc_csv(r)});
    result.timings = {{"classify_seconds", classify_seconds}, {"total_seconds", seconds_since(start)}};
    if (inv.strict && r.verdict == LimitType::undecided) {
        result.exit_code = exit_undecided;
    }
    return result;
}

RunResult run_criteria(const Scenario& s, const Invocation& inv)
{
    RunResult result;
    result.report = base_report("criteria", s);
    result.report["criteria"] = criteria_json(s, inv);
    return result;
}

RunResult run_ivp(const Scenario& s, const Invocation& inv)
{
    const Bits bits = s.precision.bits();
    const BoundaryData bd{{Real::from_double(inv.c1, bits), Real::from_double(inv.c1_im, bits)},
                          {Real::from_double(inv.c2, bits), Real::from_double(inv.c2_im, bits)}};
    const long N = inv.N.value_or(s.n_max);
    const Trajectory y = propagate(s.model(), s.lambda(), bd, N);

    RunResult result;
    result.report = base_report("ivp", s);
    result.report["lambda"] = to_json(y.lambda());
    result.report["boundary"] = {{"c1", to_json(bd.c1)}, {"c2", to_json(bd.c2)}};
    result.report["N"] = N;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "t,y1_re,y1_im,y2_re,y2_im,qd_re,qd_im\n";
    for (long t = y.a() - 1; t <= N + 1; ++t) {
        nlohmann::json row = {{"t", t}, {"y1", to_json(y.y1(t))}};
        csv << t << "," << y.y1(t).re().to_string(kCsvDigits) << "," << y.y1(t).im().to_string(kCsvDigits);
        if (t <= N) {
            row["y2"] = to_json(y.y2(t));
            row["qd"] = to_json(y.qd(t));
            csv << "," << y.y2(t).re().to_string(kCsvDigits) << "," << y.y2(t).im().to_string(kCsvDigits) << ","
                << y.qd(t).re().to_string(kCsvDigits) << "," << y.qd(t).im().to_string(kCsvDigits);
        } else {
            csv << ",,,,";
        }
        csv << "\n";
        rows.push_back(row);
    }
    result.report["trajectory"] = rows;
    result.report["trajectory_path"] = "trajectory.csv";
    result.artifacts.push_back({"trajectory.csv", csv.str()});
    return result;
}

RunResult run_disc(const Scenario& s, const Invocation& inv)
{
    const long N = inv.N.value_or(s.n_max);
    const DiscSequence seq = disc_sequence(s.model(), s.lambda(), s.alpha_real(), N);
    RunResult result;
    result.report = base_report("disc", s);
    result.report["precision"]["guard_bits"] = seq.guard_bits;
    result.report["lambda"] = to_json(s.lambda());
    result.report["disc"] = disc_json(seq.discs.back());
    return result;
}

RunResult run_eigen(const Scenario& s, const Invocation& inv)
{
    const Bits bits = s.precision.bits();
    const long N = inv.N.value_or(s.a);
    const BoundaryAngles angles{s.alpha_real(), Real::from_double(inv.beta, bits)};
    const Scalar residual = regular_eigen_residual(s.model(), s.lambda(), angles, N);
    const Real tolerance = working_tolerance(bits / 2, 0);
    RunResult result;
    result.report = base_report("eigen", s);
    result.report["lambda"] = to_json(s.lambda());
    result.report["beta"] = to_json(angles.beta);
    result.report["N"] = N;
    result.report["residual"] = to_json(residual);
    result.report["abs_residual"] = to_json(residual.abs());
    result.report["tolerance"] = to_json(tolerance);
    result.report["eigenvalue"] = residual.abs() <= tolerance;
    return result;
}

RunResult run_examples()
{
    RunResult result;
    result.report["schema_version"] = kSchemaVersion;
    result.report["tool_version"] = MIXWEYL_VERSION;
    result.report["command"] = "examples";
    nlohmann::json list = nlohmann::json::array();
    for (const std::string& name : builtin_names()) {
        list.push_back(builtin_scenario(name).to_json());
    }
    result.report["examples"] = list;
    return result;
}

RunResult run_check(const Scenario& s)
{
    const auto start = Clock::now();
    RunResult result;
    result.report = base_report("check", s);
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const SuiteResult& r : run_all_suites(s.model(), {})) {
        suites.push_back({{"name", r.name},
                          {"worst", r.worst.to_string(6)},
                          {"tolerance", r.tolerance},
                          {"samples", r.samples},
                          {"pass", r.pass},
                          {"worst_case", r.detail}});
        all = all && r.pass;
    }
    result.report["suites"] = suites;
    result.report["pass"] = all;
    result.timings = {{"total_seconds", seconds_since(start)}};
    result.exit_code = all ? exit_ok : exit_failure;
    return result;
}

RunResult run_batch(const Invocation& inv)
{
    const std::string out_root = inv.out.value_or("mixweyl-out");
    const unsigned jobs = inv.jobs != 0 ? inv.jobs : std::max(1u, std::thread::hardware_concurrency());
    struct Item {
        std::string target;
        nlohmann::json summary;
        int code = exit_ok;
    };
    std::vector<Item> items;
    for (const std::string& t : inv.targets) {
        items.push_back({t, {}, exit_ok});
    }
    auto work = [&](Item& item) {
        try {
            const Scenario s = scenario_for(inv, item.target);
            Invocation single = inv;
            single.command = "classify";
            RunResult r = run_classify(s, single);
            write_outputs(r, (std::filesystem::path(out_root) / s.name).string());
            item.summary = {{"name", s.name}, {"verdict", r.report["verdict"]}, {"exit_code", r.exit_code}};
            item.code = r.exit_code;
        } catch (const std::exception& e) {
            item.code = exit_code_for(e);
            item.summary = {{"name", item.target}, {"error", e.what()}, {"exit_code", item.code}};
        }
    };
    for (std::size_t first = 0; first < items.size(); first += jobs) {
        std::vector<std::future<void>> running;
        for (std::size_t i = first; i < std::min(items.size(), first + jobs); ++i) {
            running.push_back(std::async(std::launch::async, work, std::ref(items[i])));
        }
        for (auto& f : running) {
            f.get();
        }
    }
    RunResult result;
    result.report["schema_version"] = kSchemaVersion;
    result.report["tool_version"] = MIXWEYL_VERSION;
    result.report["command"] = "batch";
    result.report["runs"] = nlohmann::json::array();
    for (const Item& item : items) {
        result.report["runs"].push_back(item.summary);
        if (result.exit_code == exit_ok) {
            result.exit_code = item.code;
        }
    }
    return result;
}

}  // namespace

nlohmann::json to_json(const Real& x) { return x.to_string(kReportDigits); }

nlohmann::json to_json(const Scalar& z) { return {{"re", to_json(z.re())}, {"im", to_json(z.im())}}; }

nlohmann::json to_json(const CriterionVerdict& v)
{
    nlohmann::json out;
    out["criterion"] = to_string(v.which);
    out["outcome"] = to_string(v.outcome);
    out["N"] = v.N;
    out["horizon"] = v.horizon;
    nlohmann::json witnesses;
    for (const Witness& w : v.witnesses) {
        witnesses[w.name] = to_json(w.value);
    }
    out["witnesses"] = witnesses;
    out["failing_condition"] = v.failing_condition ? nlohmann::json(*v.failing_condition) : nlohmann::json(nullptr);
    out["reason"] = v.reason;
    return out;
}

std::string disc_csv(const ClassificationReport& report)
{
    std::ostringstream csv;
    csv << "N,center_re,center_im,radius,S_psi,T_chi\n";
    for (std::size_t i = 0; i < report.disc_samples.size(); ++i) {
        const WeylDisc& d = report.disc_samples[i];
        csv << d.N << "," << d.center.re().to_string(kCsvDigits) << "," << d.center.im().to_string(kCsvDigits) << ","
            << d.radius.to_string(kCsvDigits) << "," << d.S.to_string(kCsvDigits) << ","
            << report.chi_profile.partial_sums[i].to_string(kCsvDigits) << "\n";
    }
    return csv.str();
}

Scenario scenario_for(const Invocation& inv, const std::string& target)
{
    Scenario s = resolve_scenario(target);
    if (inv.lambda_re) {
        s.lambda_re = *inv.lambda_re;
    }
    if (inv.lambda_im) {
        s.lambda_im = *inv.lambda_im;
    }
    if (inv.alpha) {
        s.alpha = *inv.alpha;
    }
    if (inv.n_max) {
        s.n_max = *inv.n_max;
    }
    if (inv.mode) {
        try {
            s.precision.mode = parse_precision_mode(*inv.mode);
        } catch (const Error& e) {
            throw ScenarioError("--mode", "", e.what());
        }
    }
    if (inv.bits) {
        s.precision.mantissa_bits = *inv.bits;
    }
    return parse_scenario(s.to_json(), target);
}

RunResult run(const Invocation& inv)
{
    if (inv.command == "examples") {
        return run_examples();
    }
    if (inv.command == "batch") {
        return run_batch(inv);
    }
    if (inv.targets.size() != 1) {
        throw ScenarioError(inv.command, "", "expects exactly one scenario");
    }
    const Scenario s = scenario_for(inv, inv.targets.front());
    if (inv.command == "classify") {
        return run_classify(s, inv);
    }
    if (inv.command == "criteria") {
        return run_criteria(s, inv);
    }
    if (inv.command == "ivp") {
        return run_ivp(s, inv);
    }
    if (inv.command == "disc") {
        return run_disc(s, inv);
    }
    if (inv.command == "eigen") {
        return run_eigen(s, inv);
    }
    if (inv.command == "check") {
        return run_check(s);
    }
    throw Error("unknown command " + inv.command);
}

int exit_code_for(const std::exception& error)
{
    if (dynamic_cast<const ScenarioError*>(&error) || dynamic_cast<const SyntaxError*>(&error)) {
        return exit_scenario;
    }
    if (dynamic_cast<const InadmissibleLambda*>(&error)) {
        return exit_inadmissible;
    }
    if (dynamic_cast<const PrecisionExhausted*>(&error)) {
        return exit_precision;
    }
    return exit_failure;
}

void write_outputs(const RunResult& result, const std::string& dir)
{
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    std::ofstream(root / "report.json") << result.report.dump(2) << "\n";
    for (const Artifact& a : result.artifacts) {
        std::ofstream(root / a.file_name) << a.content;
    }
    if (!result.timings.is_null()) {
        std::ofstream(root / "timings.json") << result.timings.dump(2) << "\n";
    }
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Solve and classify mixed-order matrix difference equations on a discrete half-line", "mixweyl"};
    app.set_version_flag("--version", MIXWEYL_VERSION);
    app.require_subcommand(1);

    Invocation inv;
    auto add_common = [&](CLI::App* sub, bool needs_target) {
        if (needs_target) {
            sub->add_option("scenario", inv.targets, "Built-in name or scenario JSON path")->required();
        }
        sub->add_option("--lambda-re", inv.lambda_re, "Real part of lambda");
        sub->add_option("--lambda-im", inv.lambda_im, "Imaginary part of lambda");
        sub->add_option("--alpha", inv.alpha, "Left boundary angle in [0, pi)");
        sub->add_option("--n-max", inv.n_max, "Largest N");
        sub->add_option("--bits", inv.bits, "Mantissa bits (big-float)");
        sub->add_option("--mode", inv.mode, "Precision mode: big-float or native-float");
        sub->add_option("--out", inv.out, "Directory for report.json and artifacts");
    };

    auto* classify_cmd = app.add_subcommand("classify", "Limit-point / limit-circle classification with disc CSV");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--M", inv.M, "Comparison sequence for the second criterion");
    classify_cmd->add_flag("--strict", inv.strict, "Exit with 5 when the verdict is undecided");

    auto* criteria_cmd = app.add_subcommand("criteria", "Check the sufficient limit-point criteria");
    add_common(criteria_cmd, true);
    criteria_cmd->add_option("--M", inv.M, "Comparison sequence for the second criterion");

    auto* ivp_cmd = app.add_subcommand("ivp", "Solve the initial value problem and dump the trajectory");
    add_common(ivp_cmd, true);
    ivp_cmd->add_option("--c1", inv.c1, "y1(a), real part");
    ivp_cmd->add_option("--c1-im", inv.c1_im, "y1(a), imaginary part");
    ivp_cmd->add_option("--c2", inv.c2, "y[1](a-1), real part");
    ivp_cmd->add_option("--c2-im", inv.c2_im, "y[1](a-1), imaginary part");
    ivp_cmd->add_option("--N", inv.N, "Last index (default n_max)");

    auto* disc_cmd = app.add_subcommand("disc", "Weyl disc at one N");
    add_common(disc_cmd, true);
    disc_cmd->add_option("--N", inv.N, "Disc index (default n_max)");

    auto* eigen_cmd = app.add_subcommand("eigen", "Residual U2(psi) of the regular boundary value problem");
    add_common(eigen_cmd, true);
    eigen_cmd->add_option("--beta", inv.beta, "Right boundary angle in [0, pi)");
    eigen_cmd->add_option("--N", inv.N, "Right end (default a)");

    app.add_subcommand("examples", "List the built-in scenarios");

    auto* check_cmd = app.add_subcommand("check", "Run the invariant suites on a scenario");
    add_common(check_cmd, true);

    auto* batch_cmd = app.add_subcommand("batch", "Classify several scenarios in parallel");
    add_common(batch_cmd, false);
    batch_cmd->add_option("scenarios", inv.targets, "Built-in names or scenario paths")->required();
    batch_cmd->add_option("--jobs", inv.jobs, "Parallel runs (default: hardware threads)");
    batch_cmd->add_flag("--strict", inv.strict, "Exit with 5 when a verdict is undecided");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    inv.command = app.get_subcommands().front()->get_name();

    try {
        RunResult result = run(inv);
        std::optional<std::string> dir = inv.out;
        if (!dir && inv.command == "classify") {
            dir = (std::filesystem::path("mixweyl-out") / result.report["scenario"]["name"].get<std::string>()).string();
        }
        if (dir && inv.command != "batch") {
            write_outputs(result, *dir);
        }
        std::cout << result.report.dump(2) << "\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "mixweyl " << inv.command << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace mixweyl::app
