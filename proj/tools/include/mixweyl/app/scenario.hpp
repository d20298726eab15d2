#pragma once

// Scenario files: a coefficient set plus the run parameters of one experiment.

#include "json.hpp"

#include <array>
#include <string>
#include <vector>

#include "mixweyl/model.hpp"
#include "mixweyl/weyl.hpp"

namespace mixweyl::app {

/// Unreadable or invalid scenario; names the source and the offending field.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& source, const std::string& field, const std::string& message)
        : Error(source + ": " + (field.empty() ? "" : field + ": ") + message) {}
};

struct Scenario {
    std::string name;
    long a = 0;
    std::array<Coefficient, 5> coefficients;  // p, q, c, h, d
    double lambda_re = 0.0;
    double lambda_im = 1.0;
    double alpha = 0.0;
    long n_max = 200;
    PrecisionConfig precision;
    double rel_tol = 1e-10;
    double divergence_factor = 1e6;
    long window = 32;

    CoefficientSet model() const;
    Scalar lambda() const;
    Real alpha_real() const;
    ClassifyOptions classify_options() const;
    /// Canonical echo with every default filled in.
    nlohmann::json to_json() const;
};

/// Throws ScenarioError.
Scenario parse_scenario(const nlohmann::json& body, const std::string& source);
Scenario load_scenario(const std::string& path);

const std::vector<std::string>& builtin_names();
/// Throws ScenarioError for an unknown name.
Scenario builtin_scenario(const std::string& name);

/// A built-in name, otherwise a path to a scenario file.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace mixweyl::app
