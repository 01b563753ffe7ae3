#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "modfront/errors.hpp"
#include "modfront/model.hpp"

using namespace modfront;

namespace {
std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}
}  // namespace

TEST_CASE("dispersion examples") {
    ModelParams p;
    p.cu = 1.0;
    p.epsilon = 0.0;
    const auto d = dispersion(p, 1.0);
    CHECK(std::abs(d.lambda_u - cplx(0.0, 1.0)) < 1e-15);

    p.cv = 2.7;
    p.gamma1 = 0.3;
    CHECK(dispersion(p, 0.0).lambda_v == cplx(0.0, 0.0));

    ModelParams q;
    q.epsilon = 0.1;
    q.alpha0 = 1.0;
    q.cu = 1.0;
    CHECK(std::abs(dispersion(q, 0.0).lambda_u - cplx(-1.0 + 0.01, 0.0)) < 1e-15);
}

TEST_CASE("dispersion properties") {
    ModelParams p;
    p.cu = 0.7;
    p.cv = -0.4;
    for (double k = -3.0; k <= 3.0; k += 0.01) {
        const auto d = dispersion(p, k);
        CHECK(d.lambda_u.real() <= 1e-15);
        const auto m = dispersion(p, -k);
        CHECK(std::abs(m.lambda_u - std::conj(d.lambda_u)) < 1e-12);
        CHECK(std::abs(m.lambda_v - std::conj(d.lambda_v)) < 1e-12);
    }
    CHECK(std::abs(dispersion(p, 1.0).lambda_u.real()) < 1e-15);
    p.epsilon = 0.1;
    int unstable = 0;
    for (double k = 0.9; k <= 1.1; k += 0.01) unstable += dispersion(p, k).lambda_u.real() > 0.0;
    CHECK(unstable > 3);
}

TEST_CASE("velocities") {
    ModelParams p;
    p.cu = 1.0;
    p.cv = 2.0;
    auto v = group_phase_velocities(p);
    CHECK(v.c_phase_u == 1.0);
    CHECK(v.c_group_u == 3.0);
    CHECK(v.c_group_v == -2.0);
    p.cu = -0.5;
    p.cv = 0.0;
    v = group_phase_velocities(p);
    CHECK(v.c_phase_u == -0.5);
    CHECK(v.c_group_u == -1.5);
    CHECK(v.c_group_v == 0.0);
    p.cu = 1.0;
    p.cv = -3.0;
    v = group_phase_velocities(p);
    CHECK(v.c_group_u == 3.0);
    CHECK(v.c_group_v == 3.0);
}

TEST_CASE("front speed") {
    ModelParams p;
    p.cu = 1.0;
    p.epsilon = 0.1;
    Scenario s;
    s.tag = ScenarioTag::II;
    s.c0 = 2.0;
    CHECK(front_speed(p, s) == doctest::Approx(3.2).epsilon(1e-15));
    p.cv = 2.0;
    s.tag = ScenarioTag::III;
    s.c0 = 1.0;
    CHECK(front_speed(p, s) == doctest::Approx(-1.99).epsilon(1e-15));
    p.cv = -3.0;
    p.epsilon = 0.0;
    s.tag = ScenarioTag::V;
    s.c0 = 5.0;
    CHECK(front_speed(p, s) == 3.0);
    s.c0 = 0.0;
    CHECK(error_name([&] { front_speed(p, s); }) == "DegenerateScenario");
}

TEST_CASE("classification") {
    ModelParams p;
    p.cu = 1.0;
    p.cv = 2.0;
    CHECK(classify_and_validate(p, 5.0) == ScenarioTag::I);
    CHECK(error_name([&] { classify_and_validate(p, 1.0); }) == "SpeedAtPhaseVelocity");
    p.cv = -3.0;
    p.epsilon = 0.1;
    Scenario s;
    s.tag = ScenarioTag::V;
    s.c0 = 1.0;
    CHECK(classify_and_validate(p, base_speed(p, s)) == ScenarioTag::V);
    CHECK_NOTHROW(validate_scenario(p, s));
    CHECK(error_name([&] { classify_and_validate(p, 3.0 + 5e-5); }) == "AmbiguousScenario");
    p.cv = 0.0;
    CHECK(classify_and_validate(p, 3.0) == ScenarioTag::II);
    CHECK(classify_and_validate(p, 0.0) == ScenarioTag::III);
    CHECK(classify_and_validate(p, 0.0, ScenarioTag::IV) == ScenarioTag::IV);
    p.gamma2 = 0.1;
    s.tag = ScenarioTag::III;
    CHECK(error_name([&] { validate_scenario(p, s); }) == "Gamma2NotZero");
}

TEST_CASE("config round trip") {
    std::istringstream in("# comment\nalpha0 = 0.75\ncu=1.25\ncv=-3\ngamma1=0.1\ngamma2=0\n"
                          "epsilon=0.05\nB=0.2\nscenario=V\nc0=1.5\nseed=42\n");
    const ConfigValues c = parse_config(in);
    CHECK(c.params.alpha0 == 0.75);
    CHECK(c.params.cv == -3.0);
    CHECK(c.scenario == ScenarioTag::V);
    std::istringstream again(serialize_config(c));
    const ConfigValues d = parse_config(again);
    CHECK(serialize_config(d) == serialize_config(c));
    CHECK(d.params.B == 0.2);
    CHECK(*d.c0 == 1.5);
    CHECK(*d.seed == 42u);
    std::istringstream neg("seed=-1\n");
    CHECK(error_name([&] { parse_config(neg); }) == "ConfigError");

    std::istringstream bad("alpha0=1\nspeed=3\n");
    CHECK(error_name([&] { parse_config(bad); }) == "ConfigError");
    std::istringstream junk("alpha0=abc\n");
    CHECK(error_name([&] { parse_config(junk); }) == "ConfigError");
}
