#pragma once

#include <complex>
#include <iosfwd>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace modfront {

using cplx = std::complex<double>;

struct ModelParams {
    double alpha0 = 1.0;
    double cu = 1.0;
    double cv = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double epsilon = 0.0;
    double B = 0.0;
};

enum class ScenarioTag { I, II, III, IV, V };

std::string to_string(ScenarioTag tag);
ScenarioTag parse_scenario_tag(const std::string& text);

struct Scenario {
    ScenarioTag tag = ScenarioTag::I;
    double c0 = 0.0;        // speed offset (II-V)
    double gamma2_0 = 0.0;  // scenario IV: gamma2 = epsilon * gamma2_0
    double c = 0.0;         // scenario I: user-supplied speed
};

struct DispersionSample {
    double k = 0.0;
    cplx lambda_u;
    cplx lambda_v;
};

struct Velocities {
    double c_phase_u = 0.0;
    double c_group_u = 0.0;
    double c_group_v = 0.0;
};

struct ClassifyOptions {
    double scenario_tol = 1e-8;
    double ambiguity_band = 1e-4;
};

DispersionSample dispersion(const ModelParams& params, double k);
Velocities group_phase_velocities(const ModelParams& params);

// Front speed c for the scenario; throws DegenerateScenario when c0 = 0 for II-V.
double front_speed(const ModelParams& params, const Scenario& scenario);

// Speed at eps = 0 for the scenario.
double base_speed(const ModelParams& params, const Scenario& scenario);

// Classifies the base speed c|_{eps=0}. The hint separates III from IV.
ScenarioTag classify_and_validate(const ModelParams& params, double c_base,
                                  std::optional<ScenarioTag> hint = std::nullopt,
                                  const ClassifyOptions& options = {});

// Checks the structural invariants of a scenario against the parameters.
void validate_scenario(const ModelParams& params, const Scenario& scenario,
                       double tol = 1e-8);

struct ConfigValues {
    ModelParams params;
    std::optional<ScenarioTag> scenario;
    std::optional<double> c0;
    std::optional<double> c;
    std::optional<std::uint64_t> seed;
    std::map<std::string, std::string> raw;
};

// Flat key=value format; '#' starts a comment. Unknown keys raise ConfigError.
ConfigValues parse_config(std::istream& in);
ConfigValues load_config(const std::string& path);
std::string serialize_config(const ConfigValues& config);

}  // namespace modfront
