#include "support.hpp"

#include <filesystem>
#include <fstream>

#include "mixweyl/app/scenario.hpp"

namespace mixweyl::test {
namespace {

using app::Scenario;
using app::ScenarioError;
using nlohmann::json;

std::string coef(const Scenario& s, Coef which) { return s.coefficients[static_cast<std::size_t>(which)].describe(); }

std::string canon(const char* text) { return CoefficientExpr::parse(text).to_string(); }

TEST(Scenario, BuiltinRegistry)
{
    const std::vector<std::string> expected = {"ex4.1a", "ex4.1b", "ex4.2a", "ex4.2b", "free"};
    EXPECT_EQ(app::builtin_names(), expected);
}

TEST(Scenario, BuiltinUnperturbedFirstExample)
{
    const Scenario s = app::builtin_scenario("ex4.1a");
    EXPECT_EQ(s.a, 0);
    EXPECT_EQ(coef(s, Coef::p), canon("-(4^t)"));
    EXPECT_EQ(coef(s, Coef::q), canon("4^t"));
    EXPECT_EQ(coef(s, Coef::c), "0");
    EXPECT_EQ(coef(s, Coef::h), "0");
    EXPECT_EQ(coef(s, Coef::d), "1");
}

TEST(Scenario, BuiltinPerturbedSecondExample)
{
    const Scenario s = app::builtin_scenario("ex4.2b");
    EXPECT_EQ(coef(s, Coef::p), "1");
    EXPECT_EQ(coef(s, Coef::q), canon("4^t"));
    EXPECT_EQ(coef(s, Coef::c), canon("sqrt(4^(2*t)+4^t)"));
    EXPECT_EQ(coef(s, Coef::h), "0");
    EXPECT_EQ(coef(s, Coef::d), canon("4^t"));
}

TEST(Scenario, DefaultsAreInjected)
{
    const Scenario s = app::parse_scenario(json{{"name", "x"}, {"p", "1"}}, "inline");
    EXPECT_EQ(s.lambda_re, 0.0);
    EXPECT_EQ(s.lambda_im, 1.0);
    EXPECT_EQ(s.alpha, 0.0);
    EXPECT_EQ(s.n_max, 200);
    EXPECT_EQ(s.precision.mode, PrecisionMode::big_float);
    EXPECT_EQ(s.precision.bits(), 256);
    EXPECT_EQ(s.window, 32);
    EXPECT_EQ(coef(s, Coef::d), "0");
    const json echo = s.to_json();
    EXPECT_EQ(echo["lambda"]["im"], 1.0);
    EXPECT_EQ(echo["precision"]["mode"], "big-float");
}

TEST(Scenario, CoefficientForms)
{
    const json body = {{"name", "forms"},
                       {"p", 2},
                       {"q", 0.5},
                       {"c", {{"table", {1, "3/4", "0.25", -2}}, {"start", -1}}},
                       {"h", "t^2"}};
    const Scenario s = app::parse_scenario(body, "inline");
    const CoefficientSet m = s.model();
    EXPECT_EQ(m.value(Coef::p, 7), 2);
    EXPECT_EQ(m.value(Coef::q, 7), rational(1, 2));
    EXPECT_EQ(m.value(Coef::c, 0), rational(3, 4));
    EXPECT_EQ(m.value(Coef::c, 1), rational(1, 4));
    EXPECT_EQ(m.value(Coef::c, 2), -2);
    EXPECT_EQ(m.value(Coef::h, 3), 9);
}

TEST(Scenario, EchoRoundTrips)
{
    for (const std::string& name : app::builtin_names()) {
        const Scenario s = app::builtin_scenario(name);
        const Scenario again = app::parse_scenario(s.to_json(), "echo");
        EXPECT_EQ(again.to_json(), s.to_json()) << name;
    }
}

TEST(Scenario, ErrorsNameTheField)
{
    const std::vector<std::pair<json, std::string>> cases = {
        {json::array(), "JSON object"},
        {json{{"q", "1"}}, "p"},
        {json{{"p", "4^"}}, "p"},
        {json{{"p", "1"}, {"q", {{"table", json::array()}}}}, "q.table"},
        {json{{"p", "1"}, {"lambda", 3}}, "lambda"},
        {json{{"p", "1"}, {"n_max", "many"}}, "n_max"},
        {json{{"p", "1"}, {"alpha", 4.0}}, "alpha"},
        {json{{"p", "1"}, {"precision", {{"mode", "quad"}}}}, "precision.mode"},
        {json{{"p", "1"}, {"precision", {{"bits", 10}}}}, "precision.bits"},
        {json{{"p", "1"}, {"thresholds", {{"window", 0}}}}, "thresholds"},
    };
    for (const auto& [body, field] : cases) {
        try {
            app::parse_scenario(body, "case.json");
            ADD_FAILURE() << body.dump() << " accepted";
        } catch (const ScenarioError& e) {
            const std::string what = e.what();
            EXPECT_NE(what.find("case.json"), std::string::npos) << what;
            EXPECT_NE(what.find(field), std::string::npos) << what;
        }
    }
}

TEST(Scenario, LoadFromFile)
{
    const auto dir = std::filesystem::temp_directory_path() / "mixweyl-scenario-test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "coupled.json";
    std::ofstream(path) << R"({"p": "1", "c": "t", "lambda": {"re": 0.5}})";
    const Scenario s = app::resolve_scenario(path.string());
    EXPECT_EQ(s.name, "coupled");
    EXPECT_EQ(s.lambda_re, 0.5);
    EXPECT_EQ(s.lambda_im, 1.0);

    std::ofstream(dir / "broken.json") << "{\"p\": ";
    EXPECT_THROW(app::load_scenario((dir / "broken.json").string()), ScenarioError);
    EXPECT_THROW(app::resolve_scenario((dir / "absent.json").string()), ScenarioError);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mixweyl::test
