#include "modfront/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "modfront/errors.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(x)) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        fail("ConfigError", "value of '" + key + "' is not a finite number: '" + value + "'");
    }
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string to_string(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::I: return "I";
        case ScenarioTag::II: return "II";
        case ScenarioTag::III: return "III";
        case ScenarioTag::IV: return "IV";
        case ScenarioTag::V: return "V";
    }
    return "?";
}

ScenarioTag parse_scenario_tag(const std::string& text) {
    const std::string t = trim(text);
    if (t == "I" || t == "1") return ScenarioTag::I;
    if (t == "II" || t == "2") return ScenarioTag::II;
    if (t == "III" || t == "3") return ScenarioTag::III;
    if (t == "IV" || t == "4") return ScenarioTag::IV;
    if (t == "V" || t == "5") return ScenarioTag::V;
    fail("ConfigError", "unknown scenario '" + text + "'");
}

DispersionSample dispersion(const ModelParams& p, double k) {
    const double e2 = p.epsilon * p.epsilon;
    const double s = 1.0 - k * k;
    DispersionSample d;
    d.k = k;
    d.lambda_u = -s * s + e2 * p.alpha0 + I * (p.cu * k * k * k);
    d.lambda_v = -k * k - I * (p.cv * k);
    return d;
}

Velocities group_phase_velocities(const ModelParams& p) { return {p.cu, 3.0 * p.cu, -p.cv}; }

double front_speed(const ModelParams& p, const Scenario& s) {
    if (s.tag != ScenarioTag::I && s.c0 == 0.0)
        fail("DegenerateScenario", "c0 must be nonzero for scenario " + to_string(s.tag));
    const double e = p.epsilon;
    switch (s.tag) {
        case ScenarioTag::I: return s.c;
        case ScenarioTag::II: return 3.0 * p.cu + e * s.c0;
        case ScenarioTag::III: return -p.cv + e * e * s.c0;
        case ScenarioTag::IV:
        case ScenarioTag::V: return -p.cv + e * s.c0;
    }
    return s.c;
}

double base_speed(const ModelParams& p, const Scenario& s) {
    switch (s.tag) {
        case ScenarioTag::I: return s.c;
        case ScenarioTag::II: return 3.0 * p.cu;
        default: return -p.cv;
    }
}

ScenarioTag classify_and_validate(const ModelParams& p, double c_base,
                                  std::optional<ScenarioTag> hint, const ClassifyOptions& o) {
    if (p.cu == 0.0) fail("DegenerateScenario", "c_u must be nonzero");
    const double d_phase = std::abs(c_base - p.cu);
    const double d_group_u = std::abs(c_base - 3.0 * p.cu);
    const double d_group_v = std::abs(c_base + p.cv);
    if (d_phase < o.scenario_tol)
        fail("SpeedAtPhaseVelocity",
             "c|eps=0 = c_u puts infinitely many spatial eigenvalues on the imaginary axis");
    for (double d : {d_phase, d_group_u, d_group_v})
        if (d >= o.scenario_tol && d < o.ambiguity_band)
            fail("AmbiguousScenario", "base speed lies within the tolerance band of a resonance");
    const bool at_u = d_group_u < o.scenario_tol;
    const bool at_v = d_group_v < o.scenario_tol;
    if (at_u && at_v) return ScenarioTag::V;
    if (at_u) return ScenarioTag::II;
    if (at_v) {
        if (hint && (*hint == ScenarioTag::III || *hint == ScenarioTag::IV)) return *hint;
        return p.gamma2 == 0.0 ? ScenarioTag::III : ScenarioTag::IV;
    }
    return ScenarioTag::I;
}

void validate_scenario(const ModelParams& p, const Scenario& s, double tol) {
    if (p.cu == 0.0) fail("DegenerateScenario", "c_u must be nonzero");
    if (s.tag != ScenarioTag::I && s.c0 == 0.0)
        fail("DegenerateScenario", "c0 must be nonzero for scenario " + to_string(s.tag));
    if ((s.tag == ScenarioTag::III || s.tag == ScenarioTag::V) && p.gamma2 != 0.0)
        fail("Gamma2NotZero", "scenario " + to_string(s.tag) + " requires gamma2 = 0");
    if (s.tag == ScenarioTag::V && std::abs(p.cv + 3.0 * p.cu) > tol)
        fail("DegenerateScenario", "scenario V requires c_v = -3 c_u");
    ClassifyOptions o;
    o.scenario_tol = tol;
    const ScenarioTag found = classify_and_validate(p, base_speed(p, s), s.tag, o);
    if (found != s.tag)
        fail("DegenerateScenario",
             "speed relations select scenario " + to_string(found) + ", not " + to_string(s.tag));
}

ConfigValues parse_config(std::istream& in) {
    ConfigValues cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("ConfigError", "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail("ConfigError", "line " + std::to_string(lineno) + ": empty value");
        if (key == "alpha0") cfg.params.alpha0 = parse_number(key, value);
        else if (key == "cu") cfg.params.cu = parse_number(key, value);
        else if (key == "cv") cfg.params.cv = parse_number(key, value);
        else if (key == "gamma1") cfg.params.gamma1 = parse_number(key, value);
        else if (key == "gamma2") cfg.params.gamma2 = parse_number(key, value);
        else if (key == "epsilon") cfg.params.epsilon = parse_number(key, value);
        else if (key == "B") cfg.params.B = parse_number(key, value);
        else if (key == "scenario") cfg.scenario = parse_scenario_tag(value);
        else if (key == "c0") cfg.c0 = parse_number(key, value);
        else if (key == "c") cfg.c = parse_number(key, value);
        else if (key == "seed") {
            if (value.find_first_not_of("0123456789") != std::string::npos)
                fail("ConfigError", "seed must be a non-negative integer");
            try {
                cfg.seed = std::stoull(value);
            } catch (const std::out_of_range&) {
                fail("ConfigError", "seed out of range");
            }
        } else fail("ConfigError", "unknown key '" + key + "'");
        cfg.raw[key] = value;
    }
    if (cfg.params.epsilon < 0.0) fail("ConfigError", "epsilon must be >= 0");
    return cfg;
}

ConfigValues load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const ConfigValues& cfg) {
    std::ostringstream out;
    const ModelParams& p = cfg.params;
    out << "alpha0=" << format_double(p.alpha0) << '\n'
        << "cu=" << format_double(p.cu) << '\n'
        << "cv=" << format_double(p.cv) << '\n'
        << "gamma1=" << format_double(p.gamma1) << '\n'
        << "gamma2=" << format_double(p.gamma2) << '\n'
        << "epsilon=" << format_double(p.epsilon) << '\n'
        << "B=" << format_double(p.B) << '\n';
    if (cfg.scenario) out << "scenario=" << to_string(*cfg.scenario) << '\n';
    if (cfg.c0) out << "c0=" << format_double(*cfg.c0) << '\n';
    if (cfg.c) out << "c=" << format_double(*cfg.c) << '\n';
    if (cfg.seed) out << "seed=" << *cfg.seed << '\n';
    return out.str();
}

}  // namespace modfront
