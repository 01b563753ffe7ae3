#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modfront/model.hpp"

namespace cli {

using json = nlohmann::ordered_json;

// Config file plus flag overrides shared by every subcommand.
struct CommonOptions {
    std::string config;
    std::string out = ".";
    int jobs = 1;
    std::optional<double> alpha0, cu, cv, gamma1, gamma2, epsilon, B, c0, c;
    std::optional<std::string> scenario;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& app, CommonOptions& o);

struct Resolved {
    modfront::ConfigValues config;
    modfront::Scenario scenario;
};

// Loads the config, applies overrides and fills the scenario. Speed fields are only required
// when need_speed is set.
Resolved resolve(const CommonOptions& o, bool need_speed);

json complex_json(std::complex<double> z);
json params_json(const modfront::ModelParams& p);
json scenario_json(const modfront::Scenario& s);

std::filesystem::path output_dir(const CommonOptions& o);
void write_text(const std::filesystem::path& path, const std::string& text);
void emit_json(const CommonOptions& o, const std::string& name, const json& doc);

// Full-precision decimal for CSV cells.
std::string num(double x);

// Runs body(i) for i in [0, n) on up to jobs threads. The first exception is rethrown.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace cli
