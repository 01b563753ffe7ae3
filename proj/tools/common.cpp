#include "common.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "modfront/errors.hpp"

namespace cli {

using namespace modfront;

void add_common(CLI::App& app, CommonOptions& o) {
    app.add_option("--config", o.config, "key=value config file")->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--alpha0", o.alpha0);
    app.add_option("--cu", o.cu);
    app.add_option("--cv", o.cv);
    app.add_option("--gamma1", o.gamma1);
    app.add_option("--gamma2", o.gamma2);
    app.add_option("--epsilon", o.epsilon);
    app.add_option("--B", o.B);
    app.add_option("--scenario", o.scenario, "I, II, III, IV or V");
    app.add_option("--c0", o.c0, "speed offset (II-V)");
    app.add_option("--c", o.c, "front speed (I)");
    app.add_option("--seed", o.seed);
}

Resolved resolve(const CommonOptions& o, bool need_speed) {
    Resolved r;
    if (!o.config.empty()) r.config = load_config(o.config);
    ConfigValues& c = r.config;
    ModelParams& p = c.params;
    auto set = [](double& dst, const std::optional<double>& v) {
        if (v) dst = *v;
    };
    set(p.alpha0, o.alpha0);
    set(p.cu, o.cu);
    set(p.cv, o.cv);
    set(p.gamma1, o.gamma1);
    set(p.gamma2, o.gamma2);
    set(p.epsilon, o.epsilon);
    set(p.B, o.B);
    if (o.scenario) c.scenario = parse_scenario_tag(*o.scenario);
    if (o.c0) c.c0 = o.c0;
    if (o.c) c.c = o.c;
    if (o.seed) c.seed = o.seed;
    if (p.epsilon < 0.0) fail("ConfigError", "epsilon must be >= 0");

    Scenario& s = r.scenario;
    s.tag = c.scenario.value_or(ScenarioTag::I);
    if (s.tag == ScenarioTag::I) {
        if (c.c) s.c = *c.c;
        else if (need_speed) fail("ConfigError", "scenario I needs --c");
    } else {
        if (c.c0) s.c0 = *c.c0;
        else if (need_speed) fail("ConfigError", "scenario " + to_string(s.tag) + " needs --c0");
    }
    if (s.tag == ScenarioTag::IV) {
        if (!(p.epsilon > 0.0)) fail("ConfigError", "scenario IV needs epsilon > 0");
        s.gamma2_0 = p.gamma2 / p.epsilon;
    }
    if (need_speed) validate_scenario(p, s);
    return r;
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json params_json(const ModelParams& p) {
    return json{{"alpha0", p.alpha0}, {"cu", p.cu},         {"cv", p.cv}, {"gamma1", p.gamma1},
                {"gamma2", p.gamma2}, {"epsilon", p.epsilon}, {"B", p.B}};
}

json scenario_json(const Scenario& s) {
    json j{{"tag", to_string(s.tag)}};
    if (s.tag == ScenarioTag::I) j["c"] = s.c;
    else j["c0"] = s.c0;
    if (s.tag == ScenarioTag::IV) j["gamma2_0"] = s.gamma2_0;
    return j;
}

std::filesystem::path output_dir(const CommonOptions& o) {
    std::filesystem::path dir(o.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail("IOError", "cannot create output directory '" + o.out + "'");
    return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
    if (!f) fail("IOError", "cannot write '" + path.string() + "'");
}

void emit_json(const CommonOptions& o, const std::string& name, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    write_text(output_dir(o) / (name + ".json"), text);
    std::cout << text;
}

std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex m;
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    const int t = std::max(1, std::min(jobs, n));
    std::vector<std::thread> pool;
    for (int k = 1; k < t; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cli
