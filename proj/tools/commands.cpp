#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "criteria.hpp"
#include "modfront/bifurcation.hpp"
#include "modfront/dynamics.hpp"
#include "modfront/errors.hpp"
#include "modfront/front.hpp"
#include "modfront/pdesim.hpp"
#include "modfront/spectrum.hpp"
#include "modfront/wave.hpp"

namespace cli {

using namespace modfront;

namespace {

json vec_json(const Vec& x, const std::vector<std::string>& labels) {
    json j = json::object();
    for (int i = 0; i < x.size(); ++i) j[labels.at(i)] = x(i);
    return j;
}

double default_cp(const ModelParams& p) {
    return p.cu + p.epsilon * p.epsilon * leading_order(p).omega0_star;
}

// Shared heteroclinic options for shoot, front and simulate.
struct ShootFlags {
    double offset = 1e-6;
    double t_max = 1000.0;
    double tol = 1e-10;
    std::string direction = "auto";
    double sample_dt = 0.0;
};

void add_shoot_flags(CLI::App* app, ShootFlags& s) {
    app->add_option("--offset", s.offset, "departure offset along the unstable eigenvector")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--t-max", s.t_max)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--tol", s.tol, "integration tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--direction", s.direction)
        ->check(CLI::IsMember({"auto", "forward", "reverse"}))
        ->capture_default_str();
    app->add_option("--sample-dt", s.sample_dt, "uniform output spacing (0: solver steps)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

bool reversed_front(const ShootFlags& s, const ModelParams& p, const Scenario& sc) {
    if (s.direction == "forward") return false;
    if (s.direction == "reverse") return true;
    return sc.tag == ScenarioTag::I && sc.c < 3.0 * p.cu;
}

struct Shot {
    ReducedVectorField field;
    HeteroclinicResult result;
    bool reversed = false;
};

Shot run_shoot(const Resolved& r, const ShootFlags& s) {
    Shot out;
    out.field = build_for_shooting(r.config.params, r.scenario);
    out.reversed = reversed_front(s, r.config.params, r.scenario);
    ShootOptions so;
    so.reverse = out.reversed;
    so.sample_dt = s.sample_dt;
    out.result = shoot_heteroclinic(out.field, out.field.invading, s.offset, s.t_max, s.tol, so);
    return out;
}

std::string trajectory_csv(const Trajectory& tr, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "t";
    for (const auto& l : labels) os << ',' << l;
    os << '\n';
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        os << num(tr.times[k]);
        for (int i = 0; i < tr.states[k].size(); ++i) os << ',' << num(tr.states[k](i));
        os << '\n';
    }
    return os.str();
}

// spectrum ------------------------------------------------------------------------------------

struct SpectrumFlags {
    CommonOptions common;
    int n_max = 40;
    std::optional<double> gap_tol, cp;
    double gap_margin = 2.0;
    bool no_count_check = false;
};

int run_spectrum(const SpectrumFlags& o) {
    const Resolved r = resolve(o.common, true);
    const ModelParams& p = r.config.params;
    const double c = front_speed(p, r.scenario);
    const double cp = o.cp.value_or(default_cp(p));
    const double gap = o.gap_tol.value_or(default_gap_tol(r.scenario.tag, p.epsilon));
    PartitionOptions po;
    po.gap_margin = o.gap_margin;
    if (!o.no_count_check) po.expected_count = expected_central_count(r.scenario.tag);
    const SpectralReport rep = central_partition(p, c, cp, o.n_max, gap, po);

    std::ostringstream csv;
    csv << "n,part,re,im,class\n";
    auto rows = [&](const std::map<int, std::vector<cplx>>& m, const char* part) {
        for (const auto& [n, ev] : m)
            for (const cplx& z : ev) {
                const char* cls = std::abs(z.real()) < gap ? "central" : (z.real() > 0 ? "unstable" : "stable");
                csv << n << ',' << part << ',' << num(z.real()) << ',' << num(z.imag()) << ',' << cls << '\n';
            }
    };
    rows(rep.per_n_sh, "SH");
    rows(rep.per_n_con, "con");
    write_text(output_dir(o.common) / "spectrum_eigenvalues.csv", csv.str());

    json central = json::array();
    for (const auto& e : rep.central)
        central.push_back({{"n", e.n},
                           {"part", e.part == BlockPart::SH ? "SH" : "con"},
                           {"re", e.value.real()},
                           {"im", e.value.imag()},
                           {"multiplicity", e.multiplicity}});
    json doc{{"params", params_json(p)},
             {"scenario", scenario_json(r.scenario)},
             {"c", c},
             {"cp", cp},
             {"N_max", rep.N_max},
             {"gap_tol", rep.gap_tol},
             {"hyperbolic_gap", rep.hyperbolic_gap},
             {"central_count", rep.central_count},
             {"expected_count", expected_central_count(r.scenario.tag)},
             {"central", central},
             {"eigenvalues_csv", "spectrum_eigenvalues.csv"}};
    emit_json(o.common, "spectrum", doc);
    return 0;
}

// wave ----------------------------------------------------------------------------------------

struct WaveFlags {
    CommonOptions common;
    int profile = 0;
    bool refine = false;
};

int run_wave(const WaveFlags& o) {
    const Resolved r = resolve(o.common, false);
    const ModelParams& p = r.config.params;
    const WaveSolution w = o.refine ? refine_fixed_point(p, temporal_residual(p)) : leading_order(p);
    json doc{{"params", params_json(p)},
             {"A_star", w.A_star},
             {"A_star_squared", w.A_star * w.A_star},
             {"omega0_star", w.omega0_star},
             {"cp", w.cp},
             {"h2_u", complex_json(w.h2_u)},
             {"h2_v", complex_json(w.h2_v)},
             {"cubic_coefficient", complex_json(cubic_coefficient(p))},
             {"refined", o.refine},
             {"newton_iterations", w.newton_iterations},
             {"residual", w.residual}};
    if (o.profile > 0) {
        std::vector<double> grid;
        for (int j = 0; j < o.profile; ++j) grid.push_back(2.0 * M_PI * j / o.profile);
        std::ostringstream csv;
        csv << "p,u_tw,v_tw\n";
        for (const WaveSample& s : wave_profile(w, p, grid))
            csv << num(s.p) << ',' << num(s.u) << ',' << num(s.v) << '\n';
        write_text(output_dir(o.common) / "wave_profile.csv", csv.str());
        doc["profile_csv"] = "wave_profile.csv";
    }
    emit_json(o.common, "wave", doc);
    return 0;
}

// reduced -------------------------------------------------------------------------------------

int run_reduced(const CommonOptions& o) {
    const Resolved r = resolve(o, true);
    const ModelParams& p = r.config.params;
    const ScenarioCoefficients k = scenario_coefficients(p, r.scenario);
    const ReducedVectorField f = build_for_shooting(p, r.scenario);
    json coeff{{"c", k.c},         {"c0", k.c0},         {"s", k.s},
               {"omega0", k.omega0}, {"A_star", k.A_star}, {"B1_star", k.B1_star}};
    const ScenarioTag t = r.scenario.tag;
    if (t == ScenarioTag::II || t == ScenarioTag::V) {
        coeff["a"] = complex_json(k.a);
        coeff["b"] = complex_json(k.b);
        coeff["c_cub"] = complex_json(k.c_cub);
        coeff["Delta"] = complex_json(k.Delta);
        coeff["delta_plus"] = complex_json(k.delta_plus);
        coeff["delta_minus"] = complex_json(k.delta_minus);
        coeff["a_cub"] = complex_json(k.a_cub);
    } else {
        coeff["kappa"] = complex_json(k.kappa);
    }
    json named = json::object();
    for (const auto& [name, z] : f.coeffs) named[name] = complex_json(z);
    json doc{{"params", params_json(p)},
             {"scenario", scenario_json(r.scenario)},
             {"coefficients", coeff},
             {"field", {{"form", f.form},
                        {"dim", f.dim},
                        {"labels", f.labels},
                        {"coefficients", named},
                        {"invading", vec_json(f.invading, f.labels)},
                        {"amplitude", f.amplitude}}}};
    if (t == ScenarioTag::IV) {
        doc["gamma2_condition"] = gamma2_condition(p, r.scenario.c0, r.scenario.gamma2_0);
        doc["slow_linearization_at_invading"] = slow_linearization_at_invading(build_s4(p, r.scenario.c0, r.scenario.gamma2_0));
    }
    emit_json(o, "reduced", doc);
    return 0;
}

// shoot ---------------------------------------------------------------------------------------

struct ShootCmd {
    CommonOptions common;
    ShootFlags shoot;
    bool opposite = false;
};

int run_shoot_cmd(ShootCmd o) {
    const Resolved r = resolve(o.common, true);
    const ModelParams& p = r.config.params;
    if (o.shoot.sample_dt == 0.0) o.shoot.sample_dt = 0.5;
    Shot s;
    s.field = build_for_shooting(p, r.scenario);
    s.reversed = reversed_front(o.shoot, p, r.scenario);
    ShootOptions so;
    so.reverse = s.reversed;
    so.sample_dt = o.shoot.sample_dt;
    so.integrate_opposite = o.opposite;
    s.result = shoot_heteroclinic(s.field, s.field.invading, o.shoot.offset, o.shoot.t_max, o.shoot.tol, so);
    const HeteroclinicResult& h = s.result;
    const ReducedVectorField& f = s.field;
    write_text(output_dir(o.common) / "shoot_trajectory.csv", trajectory_csv(h.trajectory, f.labels));

    const double A_wave = leading_order(p).A_star;
    const OmegaDiagnostics& d = h.diagnostics;
    json doc{{"params", params_json(p)},
             {"scenario", scenario_json(r.scenario)},
             {"reversed", s.reversed},
             {"offset", h.offset},
             {"unstable_eigenvalue", h.unstable_eigenvalue},
             {"target_class", to_string(h.target_class)},
             {"termination", to_string(h.trajectory.termination)},
             {"source", vec_json(h.source, f.labels)},
             {"direction", vec_json(h.direction, f.labels)},
             {"first_state", vec_json(h.trajectory.states.front(), f.labels)},
             {"last_state", vec_json(h.trajectory.states.back(), f.labels)},
             {"invading_amplitude", f.amplitude},
             {"two_A_star", 2.0 * f.amplitude},
             {"wave_A_star", A_wave},
             {"invading_matches", std::abs(f.amplitude - A_wave) < 1e-8},
             {"diagnostics", {{"final_norm", d.final_norm},
                              {"tail_min_amplitude", d.tail_min_amplitude},
                              {"tail_max_amplitude", d.tail_max_amplitude},
                              {"section_returns", d.section_returns},
                              {"section_spread", d.section_spread},
                              {"period_multiple", d.period_multiple},
                              {"angular_gap", d.angular_gap},
                              {"section_coordinate", d.section_coordinate}}},
             {"trajectory_csv", "shoot_trajectory.csv"}};
    if (h.opposite_class) doc["opposite_class"] = *h.opposite_class;
    emit_json(o.common, "shoot", doc);
    return 0;
}

// bifurcate -----------------------------------------------------------------------------------

struct BifurcateFlags {
    CommonOptions common;
    std::string find = "all";
    double hopf_lo = 1.0, hopf_hi = 2.0;
    double torus_lo = 0.9, torus_hi = 1.5;
    double scan_lo = 0.5, scan_hi = 3.0;
    int scan_n = 101;
    std::optional<double> branch_start;
    double branch_stop = 0.95;
    double max_step = 0.05;
};

json point_json(const BifurcationPoint& b) {
    json cert = json::array();
    for (const cplx& z : b.certificate) cert.push_back({{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
    return json{{"kind", b.kind == BifurcationKind::Hopf ? "hopf" : "torus"},
                {"c0", b.c0},
                {"residual", b.residual},
                {"certificate", cert},
                {"evaluations", b.evaluations}};
}

int run_bifurcate(const BifurcateFlags& o) {
    const Resolved r = resolve(o.common, false);
    const ModelParams& p = r.config.params;
    const ScenarioTag tag = r.config.scenario.value_or(ScenarioTag::II);
    if (tag != ScenarioTag::II && tag != ScenarioTag::V)
        fail("DegenerateScenario", "bifurcate works on scenario II or V");
    const bool want_hopf = o.find == "hopf" || o.find == "all" || o.find == "branch";
    const bool want_torus = o.find == "torus" || o.find == "all";
    const bool want_branch = o.find == "branch" || o.find == "all";
    if (tag == ScenarioTag::V && (want_torus || want_branch))
        fail("DegenerateScenario", "periodic orbits are computed for scenario II only");

    const auto dir = output_dir(o.common);
    json doc{{"params", params_json(p)}, {"scenario", to_string(tag)}};

    const auto scan = origin_spectrum_scan(p, o.scan_lo, o.scan_hi, o.scan_n, tag);
    std::ostringstream sc;
    sc << "c0";
    const std::size_t m = scan.empty() ? 0 : scan.front().eigenvalues.size();
    for (std::size_t i = 0; i < m; ++i) sc << ",re_lambda" << i << ",im_lambda" << i;
    sc << '\n';
    for (const auto& s : scan) {
        sc << num(s.c0);
        for (const cplx& z : s.eigenvalues) sc << ',' << num(z.real()) << ',' << num(z.imag());
        sc << '\n';
    }
    write_text(dir / "origin_spectrum.csv", sc.str());
    doc["origin_spectrum_csv"] = "origin_spectrum.csv";

    std::optional<BifurcationPoint> hopf;
    if (want_hopf) {
        hopf = find_hopf(p, o.hopf_lo, o.hopf_hi, tag);
        doc["hopf"] = point_json(*hopf);
    }
    if (want_torus) doc["torus"] = point_json(find_torus_bifurcation(p, o.torus_lo, o.torus_hi));
    if (want_branch) {
        BranchOptions bo;
        bo.max_step = o.max_step;
        const double start = o.branch_start.value_or(hopf->c0 - 0.01);
        const auto branch = continue_branch(p, start, o.branch_stop, bo);
        std::vector<FloquetResult> fl(branch.size());
        parallel_for(static_cast<int>(branch.size()), o.common.jobs,
                     [&](int i) { fl[i] = floquet_multipliers(branch[i], p); });
        std::ostringstream bc;
        const std::size_t nm = fl.empty() ? 0 : fl.front().multipliers.size();
        bc << "c0,period,amplitude,residual";
        for (std::size_t i = 0; i < nm; ++i) bc << ",abs_mu" << i;
        bc << ",abs_mu_trivial\n";
        for (std::size_t k = 0; k < branch.size(); ++k) {
            bc << num(branch[k].c0) << ',' << num(branch[k].period) << ',' << num(branch[k].amplitude) << ','
               << num(branch[k].residual);
            for (const cplx& z : fl[k].multipliers) bc << ',' << num(std::abs(z));
            bc << ',' << num(std::abs(fl[k].trivial)) << '\n';
        }
        write_text(dir / "branch.csv", bc.str());
        doc["branch"] = {{"points", branch.size()},
                         {"c0_first", branch.front().c0},
                         {"c0_last", branch.back().c0},
                         {"csv", "branch.csv"}};
    }
    emit_json(o.common, "bifurcate", doc);
    return 0;
}

// front ---------------------------------------------------------------------------------------

struct FrontFlags {
    CommonOptions common;
    ShootFlags shoot;
    int samples = 2001;
    int p_points = 64;
    std::optional<double> xi_min, xi_max;
    int xi_n = 2001;
    std::optional<double> snapshot;
    std::optional<double> x_min, x_max;
    int x_n = 2001;
};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return x;
}

std::string matrix_csv(const FrontProfile& f, const Mat& M, const char* field) {
    std::ostringstream os;
    os << "# field=" << field << '\n'
       << "# scenario=" << to_string(f.scenario.tag) << '\n'
       << "# c=" << num(f.c) << '\n'
       << "# cp=" << num(f.cp) << '\n'
       << "# epsilon=" << num(f.epsilon) << '\n'
       << "# rows=xi columns=p\n";
    os << "xi";
    for (double p : f.p_grid) os << ",p=" << num(p);
    os << '\n';
    for (std::size_t i = 0; i < f.xi_grid.size(); ++i) {
        os << num(f.xi_grid[i]);
        for (Eigen::Index j = 0; j < M.cols(); ++j) os << ',' << num(M(static_cast<Eigen::Index>(i), j));
        os << '\n';
    }
    return os.str();
}

int run_front(FrontFlags o) {
    const Resolved r = resolve(o.common, true);
    const ModelParams& p = r.config.params;
    const Shot s = run_shoot(r, o.shoot);
    const HeteroclinicData data = heteroclinic_data(s.field, s.result.trajectory, o.samples);
    std::vector<double> xi;
    if (o.xi_min || o.xi_max) {
        if (!o.xi_min || !o.xi_max) fail("ConfigError", "--xi-min and --xi-max go together");
        xi = linspace(*o.xi_min, *o.xi_max, o.xi_n);
    }
    const FrontProfile f = reconstruct(r.scenario, data, p, xi, o.p_points);
    const auto dir = output_dir(o.common);
    json doc{{"params", params_json(p)},
             {"scenario", scenario_json(r.scenario)},
             {"c", f.c},
             {"cp", f.cp},
             {"reversed", s.reversed},
             {"target_class", to_string(s.result.target_class)},
             {"A_star", data.A_star},
             {"omega0", data.omega0},
             {"xi_min", f.xi_grid.front()},
             {"xi_max", f.xi_grid.back()},
             {"xi_points", f.xi_grid.size()},
             {"p_points", f.p_grid.size()}};
    if (o.snapshot) {
        const double t = *o.snapshot;
        const double a = o.x_min.value_or(f.xi_grid.front() + f.c * t);
        const double b = o.x_max.value_or(f.xi_grid.back() + f.c * t);
        std::ostringstream os;
        os << "x,u,v\n";
        for (const SnapshotSample& q : physical_snapshot(f, t, linspace(a, b, o.x_n)))
            os << num(q.x) << ',' << num(q.u) << ',' << num(q.v) << '\n';
        write_text(dir / "front_snapshot.csv", os.str());
        doc["snapshot_t"] = t;
        doc["snapshot_csv"] = "front_snapshot.csv";
    } else {
        write_text(dir / "front_u.csv", matrix_csv(f, f.u, "u"));
        write_text(dir / "front_v.csv", matrix_csv(f, f.v, "v"));
        std::ostringstream hc;
        hc << "s,re_A,im_A,abs_A,B1\n";
        for (std::size_t i = 0; i < data.s_grid.size(); ++i)
            hc << num(data.s_grid[i]) << ',' << num(data.A[i].real()) << ',' << num(data.A[i].imag()) << ','
               << num(std::abs(data.A[i])) << ',' << num(data.B1.empty() ? 0.0 : data.B1[i]) << '\n';
        write_text(dir / "front_heteroclinic.csv", hc.str());
        doc["u_csv"] = "front_u.csv";
        doc["v_csv"] = "front_v.csv";
        doc["heteroclinic_csv"] = "front_heteroclinic.csv";
    }
    emit_json(o.common, "front", doc);
    return 0;
}

// simulate ------------------------------------------------------------------------------------

struct SimulateFlags {
    CommonOptions common;
    ShootFlags shoot;
    int N = 2048;
    double L = 2.0 * M_PI * 96.0;
    double dt = 0.01;
    double t_end = 120.0;
    double every = 1.0;
    double taper = 10.0;
    bool no_snapshots = false;
};

int run_simulate(SimulateFlags o) {
    const Resolved r = resolve(o.common, true);
    const ModelParams& p = r.config.params;
    if (!(p.epsilon > 0.0)) fail("ConfigError", "simulate needs epsilon > 0");
    const Shot s = run_shoot(r, o.shoot);
    const HeteroclinicData data = heteroclinic_data(s.field, s.result.trajectory);
    const FrontProfile f = reconstruct(r.scenario, data, p, linspace(-o.L / 2.0, o.L / 2.0, 4 * o.N + 1), 256);
    PdeSolver solver(p, o.L, o.N, o.dt);
    PdeState st = initial_state_from_front(f, o.L, o.N, o.L / 2.0, o.taper);

    const int per = static_cast<int>(std::lround(o.every / o.dt));
    if (per < 1) fail("ConfigError", "--snapshot-every must be at least dt");
    const auto dir = output_dir(o.common);
    const auto snap_dir = dir / "snapshots";
    if (!o.no_snapshots) std::filesystem::create_directories(snap_dir);
    auto save = [&](const PdeState& q, int k) {
        if (o.no_snapshots) return;
        std::ostringstream os;
        os << "# t=" << num(q.t) << '\n' << "x,u,v\n";
        const auto x = q.x_grid();
        for (int j = 0; j < q.N; ++j) os << num(x[j]) << ',' << num(q.u[j]) << ',' << num(q.v[j]) << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%05d.csv", k);
        write_text(snap_dir / name, os.str());
    };

    const double m0 = st.mean_v();
    double drift = 0.0;
    std::vector<PdeState> hist{st};
    save(st, 0);
    while (st.t < o.t_end - 1e-9) {
        solver.advance(st, per);
        drift = std::max(drift, std::abs(st.mean_v() - m0));
        hist.push_back(st);
        save(st, static_cast<int>(hist.size()) - 1);
    }

    MeasureOptions mo;
    mo.plateau = 2.0 * p.epsilon * data.A_star;
    const FrontTrack tr = track_front(hist, mo);
    const double cpm = measure_phase_speed(hist, mo);
    const auto Z = demodulate(hist.back());
    std::vector<double> env;
    for (const auto& z : Z) env.push_back(std::abs(z));
    const double mx = *std::max_element(env.begin(), env.end());
    std::vector<double> top;
    for (double e : env)
        if (e > 0.5 * mx) top.push_back(e);
    std::nth_element(top.begin(), top.begin() + top.size() / 2, top.end());

    json doc{{"params", params_json(p)},
             {"scenario", scenario_json(r.scenario)},
             {"N", o.N},
             {"L", o.L},
             {"dt", o.dt},
             {"t_end", st.t},
             {"snapshots", hist.size()},
             {"front_speed", tr.speed},
             {"front_speed_expected", f.c},
             {"phase_speed", cpm},
             {"phase_speed_expected", default_cp(p)},
             {"plateau_amplitude", top[top.size() / 2]},
             {"plateau_amplitude_expected", mo.plateau},
             {"reversed", tr.reversed},
             {"mean_v_initial", m0},
             {"mean_v_drift", drift}};
    if (!o.no_snapshots) doc["snapshot_dir"] = "snapshots";
    emit_json(o.common, "simulate", doc);
    return 0;
}

// verify --------------------------------------------------------------------------------------

struct VerifyFlags {
    CommonOptions common;
    int only = 0;
};

int run_verify(const VerifyFlags& o) {
    namespace acc = modfront::acceptance;
    std::vector<int> ids;
    for (int id = 1; id <= acc::criterion_count(); ++id)
        if (o.only == 0 || id == o.only) ids.push_back(id);
    std::vector<acc::CriterionResult> res(ids.size());
    parallel_for(static_cast<int>(ids.size()), o.common.jobs, [&](int i) { res[i] = acc::run_criterion(ids[i]); });
    json list = json::array();
    int failed = 0;
    for (const auto& r : res) {
        std::cout << acc::format_result(r) << '\n';
        failed += !r.passed;
        list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"detail", r.detail}});
    }
    std::cout << (res.size() - failed) << "/" << res.size() << " criteria passed\n";
    json doc{{"criteria", list}, {"passed", res.size() - failed}, {"total", res.size()}};
    write_text(output_dir(o.common) / "verify.json", doc.dump(2) + "\n");
    return failed == 0 ? 0 : 1;
}

}  // namespace

std::vector<Command> register_commands(CLI::App& root) {
    std::vector<Command> cmds;

    {
        auto o = std::make_shared<SpectrumFlags>();
        CLI::App* a = root.add_subcommand("spectrum", "central/hyperbolic partition of the spatial spectrum");
        add_common(*a, o->common);
        a->add_option("--n-max", o->n_max, "largest Fourier index")->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--gap-tol", o->gap_tol, "central threshold on |Re lambda|");
        a->add_option("--gap-margin", o->gap_margin)->capture_default_str();
        a->add_option("--cp", o->cp, "phase speed (default c_u + eps^2 omega0*)");
        a->add_flag("--no-count-check", o->no_count_check, "skip the central-count check");
        cmds.push_back({a, [o] { return run_spectrum(*o); }});
    }
    {
        auto o = std::make_shared<WaveFlags>();
        CLI::App* a = root.add_subcommand("wave", "bifurcating periodic traveling wave");
        add_common(*a, o->common);
        a->add_option("--profile", o->profile, "write an N-point profile CSV")->check(CLI::NonNegativeNumber);
        a->add_flag("--refine", o->refine, "Newton refinement of (A, omega)");
        cmds.push_back({a, [o] { return run_wave(*o); }});
    }
    {
        auto o = std::make_shared<CommonOptions>();
        CLI::App* a = root.add_subcommand("reduced", "coefficient table of the reduced system");
        add_common(*a, *o);
        cmds.push_back({a, [o] { return run_reduced(*o); }});
    }
    {
        auto o = std::make_shared<ShootCmd>();
        CLI::App* a = root.add_subcommand("shoot", "heteroclinic shooting from the invading state");
        add_common(*a, o->common);
        add_shoot_flags(a, o->shoot);
        a->add_flag("--opposite", o->opposite, "also classify the opposite branch");
        cmds.push_back({a, [o] { return run_shoot_cmd(*o); }});
    }
    {
        auto o = std::make_shared<BifurcateFlags>();
        CLI::App* a = root.add_subcommand("bifurcate", "Hopf and torus points, periodic-orbit branch");
        add_common(*a, o->common);
        a->add_option("--find", o->find)->check(CLI::IsMember({"hopf", "torus", "branch", "all"}))->capture_default_str();
        a->add_option("--hopf-lo", o->hopf_lo)->capture_default_str();
        a->add_option("--hopf-hi", o->hopf_hi)->capture_default_str();
        a->add_option("--torus-lo", o->torus_lo)->capture_default_str();
        a->add_option("--torus-hi", o->torus_hi)->capture_default_str();
        a->add_option("--scan-lo", o->scan_lo)->capture_default_str();
        a->add_option("--scan-hi", o->scan_hi)->capture_default_str();
        a->add_option("--scan-n", o->scan_n)->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--branch-start", o->branch_start, "default: Hopf point - 0.01");
        a->add_option("--branch-stop", o->branch_stop)->capture_default_str();
        a->add_option("--max-step", o->max_step)->check(CLI::PositiveNumber)->capture_default_str();
        cmds.push_back({a, [o] { return run_bifurcate(*o); }});
    }
    {
        auto o = std::make_shared<FrontFlags>();
        CLI::App* a = root.add_subcommand("front", "modulating-front profile or snapshot");
        add_common(*a, o->common);
        add_shoot_flags(a, o->shoot);
        a->add_option("--samples", o->samples, "heteroclinic resampling points")->check(CLI::Range(2, 1 << 24));
        a->add_option("--p-points", o->p_points)->check(CLI::Range(4, 1 << 16))->capture_default_str();
        a->add_option("--xi-min", o->xi_min);
        a->add_option("--xi-max", o->xi_max);
        a->add_option("--xi-n", o->xi_n)->check(CLI::Range(2, 1 << 24))->capture_default_str();
        a->add_option("--snapshot", o->snapshot, "emit (x, u, v) at this time");
        a->add_option("--x-min", o->x_min);
        a->add_option("--x-max", o->x_max);
        a->add_option("--x-n", o->x_n)->check(CLI::Range(1, 1 << 24))->capture_default_str();
        cmds.push_back({a, [o] { return run_front(*o); }});
    }
    {
        auto o = std::make_shared<SimulateFlags>();
        o->shoot.offset = 1e-7;
        o->shoot.t_max = 200.0;
        CLI::App* a = root.add_subcommand("simulate", "direct PDE simulation from a reconstructed front");
        add_common(*a, o->common);
        add_shoot_flags(a, o->shoot);
        a->add_option("--N", o->N, "grid points (power of two)")->capture_default_str();
        a->add_option("--L", o->L, "domain length")->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--dt", o->dt)->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--t-end", o->t_end)->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--snapshot-every", o->every)->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--taper", o->taper, "tanh window width")->check(CLI::PositiveNumber)->capture_default_str();
        a->add_flag("--no-snapshots", o->no_snapshots, "skip snapshot CSVs");
        cmds.push_back({a, [o] { return run_simulate(*o); }});
    }
    {
        auto o = std::make_shared<VerifyFlags>();
        CLI::App* a = root.add_subcommand("verify", "run the acceptance suite");
        a->add_option("--out", o->common.out, "output directory")->capture_default_str();
        a->add_option("--jobs", o->common.jobs)->check(CLI::PositiveNumber)->capture_default_str();
        a->add_option("--only", o->only)->check(CLI::Range(1, modfront::acceptance::criterion_count()));
        cmds.push_back({a, [o] { return run_verify(*o); }});
    }
    return cmds;
}

}  // namespace cli
