#include "mixweyl/app/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

namespace mixweyl::app {

namespace {

constexpr std::array<const char*, 5> kCoefficientNames = {"p", "q", "c", "h", "d"};

mpq_class parse_rational(const std::string& text)
{
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        mpq_class value(text, 10);
        value.canonicalize();
        return value;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t decimals = text.size() - dot - 1;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, decimals);
    mpq_class value(mpz_class(digits, 10), denominator);
    value.canonicalize();
    return value;
}

mpq_class table_value(const nlohmann::json& v, const std::string& source, const std::string& field)
{
    try {
        if (v.is_number_integer()) {
            return mpq_class(mpz_class(std::to_string(v.get<long long>()), 10));
        }
        if (v.is_number()) {
            const double d = v.get<double>();
            if (!std::isfinite(d)) {
                throw ScenarioError(source, field, "table value is not finite");
            }
            return mpq_class(d);
        }
        if (v.is_string()) {
            return parse_rational(v.get<std::string>());
        }
    } catch (const std::invalid_argument&) {
    }
    throw ScenarioError(source, field, "table values must be numbers or rational strings like \"3/4\"");
}

Coefficient parse_coefficient(const nlohmann::json& v, const std::string& source, const std::string& field)
{
    if (v.is_string()) {
        try {
            return Coefficient::parse(v.get<std::string>());
        } catch (const SyntaxError& e) {
            throw ScenarioError(source, field, e.what());
        }
    }
    if (v.is_number()) {
        return Coefficient(CoefficientExpr::constant(table_value(v, source, field)));
    }
    if (v.is_object() && v.contains("table")) {
        CoefficientTable table;
        table.start = v.value("start", 0L);
        if (!v["table"].is_array() || v["table"].empty()) {
            throw ScenarioError(source, field + ".table", "expected a nonempty array");
        }
        for (const auto& item : v["table"]) {
            table.values.push_back(table_value(item, source, field + ".table"));
        }
        return Coefficient(std::move(table));
    }
    throw ScenarioError(source, field, "expected an expression string or {\"table\": [...], \"start\": n}");
}

template <typename T>
T field_or(const nlohmann::json& body, const char* key, T fallback, const std::string& source,
           const std::string& prefix = "")
{
    if (!body.contains(key)) {
        return fallback;
    }
    try {
        return body.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ScenarioError(source, prefix + key, "has the wrong type");
    }
}

nlohmann::json coefficient_json(const Coefficient& c)
{
    if (const auto* table = c.table()) {
        nlohmann::json values = nlohmann::json::array();
        for (const mpq_class& v : table->values) {
            values.push_back(v.get_str());
        }
        return {{"start", table->start}, {"table", values}};
    }
    return c.expr()->to_string();
}

const std::map<std::string, nlohmann::json>& registry()
{
    static const std::map<std::string, nlohmann::json> builtins = {
        {"free", {{"p", "1"}, {"q", "0"}, {"c", "0"}, {"h", "0"}, {"d", "0"}}},
        {"ex4.1a", {{"p", "-(4^t)"}, {"q", "4^t"}, {"c", "0"}, {"h", "0"}, {"d", "1"}}},
        {"ex4.1b", {{"p", "-(4^t)"}, {"q", "4^t"}, {"c", "0"}, {"h", "2^t+2^(-t)"}, {"d", "1"}}},
        {"ex4.2a", {{"p", "1"}, {"q", "4^t"}, {"c", "0"}, {"h", "0"}, {"d", "4^t"}}},
        {"ex4.2b", {{"p", "1"}, {"q", "4^t"}, {"c", "sqrt(4^(2*t)+4^t)"}, {"h", "0"}, {"d", "4^t"}}},
    };
    return builtins;
}

}  // namespace

CoefficientSet Scenario::model() const
{
    return {a, coefficients[0], coefficients[1], coefficients[2], coefficients[3], coefficients[4], precision};
}

Scalar Scenario::lambda() const
{
    const Bits bits = precision.bits();
    return {Real::from_double(lambda_re, bits), Real::from_double(lambda_im, bits)};
}

Real Scenario::alpha_real() const { return Real::from_double(alpha, precision.bits()); }

ClassifyOptions Scenario::classify_options() const
{
    ClassifyOptions options;
    options.n_max = n_max;
    options.rel_tol = rel_tol;
    options.divergence_factor = divergence_factor;
    options.window = window;
    return options;
}

nlohmann::json Scenario::to_json() const
{
    nlohmann::json out;
    out["name"] = name;
    out["a"] = a;
    for (std::size_t i = 0; i < kCoefficientNames.size(); ++i) {
        out[kCoefficientNames[i]] = coefficient_json(coefficients[i]);
    }
    out["lambda"] = {{"re", lambda_re}, {"im", lambda_im}};
    out["alpha"] = alpha;
    out["n_max"] = n_max;
    out["precision"] = {{"mode", to_string(precision.mode)}, {"bits", precision.bits()}};
    out["thresholds"] = {{"rel_tol", rel_tol}, {"divergence_factor", divergence_factor}, {"window", window}};
    return out;
}

Scenario parse_scenario(const nlohmann::json& body, const std::string& source)
{
    if (!body.is_object()) {
        throw ScenarioError(source, "", "scenario must be a JSON object");
    }
    Scenario s;
    s.name = field_or<std::string>(body, "name", std::filesystem::path(source).stem().string(), source);
    s.a = field_or<long>(body, "a", 0, source);
    for (std::size_t i = 0; i < kCoefficientNames.size(); ++i) {
        const char* key = kCoefficientNames[i];
        if (!body.contains(key)) {
            if (i == 0) {
                throw ScenarioError(source, key, "is required");
            }
            continue;
        }
        s.coefficients[i] = parse_coefficient(body.at(key), source, key);
    }
    if (body.contains("lambda")) {
        const auto& l = body.at("lambda");
        if (!l.is_object()) {
            throw ScenarioError(source, "lambda", "expected {\"re\": x, \"im\": y}");
        }
        s.lambda_re = field_or<double>(l, "re", 0.0, source, "lambda.");
        s.lambda_im = field_or<double>(l, "im", 1.0, source, "lambda.");
    }
    s.alpha = field_or<double>(body, "alpha", 0.0, source);
    s.n_max = field_or<long>(body, "n_max", 200, source);
    if (body.contains("precision")) {
        const auto& p = body.at("precision");
        try {
            s.precision.mode = parse_precision_mode(field_or<std::string>(p, "mode", "big-float", source, "precision."));
        } catch (const Error& e) {
            throw ScenarioError(source, "precision.mode", e.what());
        }
        s.precision.mantissa_bits = field_or<long>(p, "bits", 256, source, "precision.");
    }
    if (body.contains("thresholds")) {
        const auto& t = body.at("thresholds");
        s.rel_tol = field_or<double>(t, "rel_tol", s.rel_tol, source, "thresholds.");
        s.divergence_factor = field_or<double>(t, "divergence_factor", s.divergence_factor, source, "thresholds.");
        s.window = field_or<long>(t, "window", s.window, source, "thresholds.");
    }

    try {
        s.precision.validate();
    } catch (const Error& e) {
        throw ScenarioError(source, "precision.bits", e.what());
    }
    if (!(s.alpha >= 0.0 && s.alpha < M_PI)) {
        throw ScenarioError(source, "alpha", "must lie in [0, pi)");
    }
    try {
        s.classify_options().validate(s.a);
    } catch (const Error& e) {
        throw ScenarioError(source, "thresholds", e.what());
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path, "", "cannot open file");
    }
    nlohmann::json body;
    try {
        body = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(path, "", std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(body, path);
}

const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

Scenario builtin_scenario(const std::string& name)
{
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw ScenarioError(name, "", "no such built-in scenario");
    }
    nlohmann::json body = it->second;
    body["name"] = name;
    body["a"] = 0;
    return parse_scenario(body, name);
}

Scenario resolve_scenario(const std::string& name_or_path)
{
    if (registry().count(name_or_path) != 0) {
        return builtin_scenario(name_or_path);
    }
    return load_scenario(name_or_path);
}

}  // namespace mixweyl::app
