#include "criteria.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "modfront/bifurcation.hpp"
#include "modfront/dynamics.hpp"
#include "modfront/errors.hpp"
#include "modfront/front.hpp"
#include "modfront/pdesim.hpp"
#include "modfront/spectrum.hpp"
#include "modfront/wave.hpp"

namespace modfront::acceptance {

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << "FAILED: " << what << "; ";
        }
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double fitted_exponent(const std::vector<double>& h, const std::vector<double>& err) {
    double mx = 0, my = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) mx += std::log(h[i]) / n, my += std::log(err[i]) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        sxy += (std::log(h[i]) - mx) * (std::log(err[i]) - my);
        sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
    }
    return sxy / sxx;
}

cplx nearest(const std::vector<cplx>& ev, cplx target) {
    cplx best = ev.front();
    for (const cplx& z : ev)
        if (std::abs(z - target) < std::abs(best - target)) best = z;
    return best;
}

ModelParams unit_params() {
    ModelParams p;
    p.alpha0 = 1.0;
    p.cu = 1.0;
    return p;
}

// 1
void spectral_gap(Outcome& o) {
    const std::vector<double> cus = {0.2, 0.3, 0.4, 0.5, 0.6};
    const std::vector<double> cs = {-3.0, -2.0, 3.5, 4.0, 4.5};
    double min_gap = 1e300;
    int cases = 0;
    for (double cu : cus)
        for (double c : cs)
            for (double eps : {0.0, 0.02, 0.05}) {
                ModelParams p = unit_params();
                p.cu = cu;
                p.epsilon = eps;
                Scenario sc;
                sc.c = c;
                validate_scenario(p, sc);
                const double cp = cu + eps * eps * leading_order(p).omega0_star;
                PartitionOptions po;
                po.expected_count = expected_central_count(ScenarioTag::I);
                const SpectralReport r =
                    central_partition(p, c, cp, 128, default_gap_tol(ScenarioTag::I, eps), po);
                min_gap = std::min(min_gap, r.hyperbolic_gap);
                o.require(r.central_count == 3, "central count at c_u=" + fmt(cu) + ", c=" + fmt(c));
                ++cases;
            }
    o.require(min_gap >= 0.1, "hyperbolic gap " + fmt(min_gap) + " < 0.1");
    o.detail << cases << " cases, central count 3, min gap " << fmt(min_gap);
}

// 2
void central_expansions(Outcome& o) {
    const std::vector<double> eps = {0.04, 0.02, 0.01};
    std::vector<double> e1, e2;
    for (double e : eps) {
        ModelParams p = unit_params();
        p.epsilon = e;
        const double w0 = leading_order(p).omega0_star;
        const double cp = p.cu + e * e * w0;

        Scenario s1;
        s1.c = 2.0;
        const CentralExpansion x1 = central_eigen_expansion(p, s1, w0);
        const auto ev1 = block_eigenvalues(build_block(p, s1.c, cp, 1), BlockPart::SH);
        e1.push_back(std::abs(nearest(ev1, x1.sh[0]) - x1.sh[0]));

        Scenario s2;
        s2.tag = ScenarioTag::II;
        s2.c0 = 2.0;
        const double c2 = front_speed(p, s2);
        const CentralExpansion x2 = central_eigen_expansion(p, s2, w0);
        const auto ev2 = block_eigenvalues(build_block(p, c2, cp, 1), BlockPart::SH);
        double err = 0.0;
        for (const cplx& z : x2.sh) err = std::max(err, std::abs(nearest(ev2, z) - z));
        e2.push_back(err);
    }
    const double k1 = fitted_exponent(eps, e1), k2 = fitted_exponent(eps, e2);
    o.require(k1 >= 2.7, "scenario I exponent " + fmt(k1));
    o.require(k2 >= 1.7, "scenario II exponent " + fmt(k2));
    o.detail << "I: errors " << fmt(e1[0]) << "," << fmt(e1[1]) << "," << fmt(e1[2]) << " exponent "
             << fmt(k1) << "; II: errors " << fmt(e2[0]) << "," << fmt(e2[1]) << "," << fmt(e2[2])
             << " exponent " << fmt(k2);
}

// 3
void traveling_wave(Outcome& o) {
    ModelParams p = unit_params();
    const WaveSolution w = leading_order(p);
    const double dA = std::abs(w.A_star * w.A_star - 0.325), dw = std::abs(w.omega0_star + 1.0 / 60.0);
    o.require(dA <= 1e-12, "A*^2 off by " + fmt(dA));
    o.require(dw <= 1e-12, "omega0* off by " + fmt(dw));
    ModelParams q = p;
    q.epsilon = 0.05;
    q.gamma1 = 0.01;
    const WaveSolution r = refine_fixed_point(q, temporal_residual(q));
    const double shift = std::hypot(r.A_star - w.A_star, r.omega0_star - w.omega0_star);
    o.require(shift <= 0.01, "Newton shift " + fmt(shift));
    o.require(r.residual < 1e-12, "Newton residual " + fmt(r.residual));
    o.detail << "A*^2 err " << fmt(dA) << ", omega0* err " << fmt(dw) << ", refined shift "
             << fmt(shift);
}

// 4
void scenario_one_heteroclinic(Outcome& o) {
    for (double c : {4.0, 2.0}) {
        ModelParams p = unit_params();
        Scenario sc;
        sc.c = c;
        validate_scenario(p, sc);
        const ReducedVectorField f = build_for_shooting(p, sc);
        ShootOptions so;
        so.reverse = c < 3.0 * p.cu;
        const HeteroclinicResult h = shoot_heteroclinic(f, f.invading, 1e-7, 200.0, 1e-11, so);
        const Trajectory& tr = h.trajectory;
        const AnalyticS1 an = analytic_s1_heteroclinic(p, c);
        auto r_of = [&](double t) { return tr.at(t)(0) - an.r0; };
        double lo = tr.t_begin(), hi = tr.t_end();
        if (r_of(lo) * r_of(hi) > 0.0) {
            o.require(false, "trajectory never crosses r0 at c=" + fmt(c));
            continue;
        }
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((r_of(mid) < 0.0) == (r_of(lo) < 0.0)) lo = mid;
            else hi = mid;
        }
        const double shift = 0.5 * (lo + hi);
        double sup = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            sup = std::max(sup, std::abs(tr.states[i](0) - an(tr.times[i] - shift)));
        const double left = std::abs(f.amplitude_of(tr.states.front()));
        const double right = std::abs(f.amplitude_of(tr.states.back()));
        const bool normal = c > 3.0 * p.cu;
        const double want_left = normal ? an.A_star : 0.0, want_right = normal ? 0.0 : an.A_star;
        o.require(sup < 1e-6, "sup-norm " + fmt(sup) + " at c=" + fmt(c));
        o.require(std::abs(left - want_left) < 1e-5 && std::abs(right - want_right) < 1e-5,
                  "limits at c=" + fmt(c));
        o.require(h.target_class == OmegaLimit::Origin, "target class at c=" + fmt(c));
        o.detail << "c=" << fmt(c) << ": sup " << fmt(sup) << ", limits (" << fmt(left) << ", "
                 << fmt(right) << "); ";
    }
}

// 5
void hopf_point(Outcome& o) {
    const BifurcationPoint h = find_hopf(unit_params(), 1.0, 2.0);
    const double diff = std::abs(h.c0 - 1.55172);
    o.require(diff <= 1e-3, "c0* = " + fmt(h.c0) + " differs from 1.55172 by " + fmt(diff));
    o.detail << "c0* = " << fmt(h.c0) << ", |Re| = " << fmt(h.residual) << ", critical pair "
             << fmt(h.certificate[0].real()) << (h.certificate[0].imag() < 0 ? "" : "+")
             << fmt(h.certificate[0].imag()) << "i";
}

// 6
void torus_point(Outcome& o) {
    const ModelParams p = unit_params();
    const BifurcationPoint t = find_torus_bifurcation(p, 0.9, 1.5);
    const double diff = std::abs(t.c0 - 1.015);
    o.require(diff <= 1e-2, "c0** = " + fmt(t.c0));
    const double hopf = find_hopf(p, 1.0, 2.0).c0;
    BranchOptions bo;
    bo.max_step = 0.05;
    const auto branch = continue_branch(p, hopf - 0.01, t.c0 + 0.01, bo);
    o.require(branch.size() >= 5, "branch too short");
    o.require(std::abs(branch.back().c0 - (t.c0 + 0.01)) < 0.06, "branch stopped early at c0=" +
                                                                     fmt(branch.back().c0));
    double worst_trivial = 0.0, worst_mod = 0.0;
    for (const PeriodicOrbit& orb : branch) {
        if (orb.c0 <= t.c0 || orb.c0 >= hopf) continue;
        const FloquetResult fl = floquet_multipliers(orb, p);
        worst_trivial = std::max(worst_trivial, std::abs(fl.trivial - 1.0));
        for (const cplx& m : fl.nontrivial) worst_mod = std::max(worst_mod, std::abs(m));
    }
    o.require(worst_trivial <= 1e-6, "trivial multiplier off by " + fmt(worst_trivial));
    o.require(worst_mod < 1.0, "nontrivial multiplier modulus " + fmt(worst_mod));
    o.detail << "c0** = " << fmt(t.c0) << ", branch " << branch.size() << " orbits on ["
             << fmt(branch.back().c0) << ", " << fmt(branch.front().c0) << "], max |mu_triv - 1| "
             << fmt(worst_trivial) << ", max nontrivial |mu| " << fmt(worst_mod);
}

// 7
void invading_spectrum(Outcome& o) {
    for (double c0 : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const ReducedVectorField f = build_s2(unit_params(), c0);
        const FixedPointSpectrum s = fixed_point_eigens(f, f.invading);
        o.require(s.unstable == 1 && s.center == 1 && s.stable == 2, "counts at c0=" + fmt(c0));
        o.detail << "c0=" << fmt(c0) << ":(" << s.unstable << "," << s.center << "," << s.stable << ") ";
    }
}

// 8
void omega_limits(Outcome& o) {
    const std::vector<std::pair<double, OmegaLimit>> cases = {
        {2.0, OmegaLimit::Origin}, {1.3, OmegaLimit::PeriodicOrbit}, {0.98, OmegaLimit::Quasiperiodic}};
    for (const auto& [c0, want] : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const ReducedVectorField f = build_s2(unit_params(), c0);
        std::string got;
        try {
            got = to_string(shoot_heteroclinic(f, f.invading, 1e-6, 4000.0, 1e-10).target_class);
        } catch (const Error& e) {
            got = e.name();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(got == to_string(want), "c0=" + fmt(c0) + " gave " + got);
        o.require(secs < 60.0, "c0=" + fmt(c0) + " took " + fmt(secs) + " s");
        o.detail << "c0=" << fmt(c0) << ": " << got << " (" << fmt(secs) << " s); ";
    }
}

// 9
void persistence(Outcome& o) {
    for (double g1 : {0.0, 0.01, 0.05}) {
        ModelParams p = unit_params();
        p.cv = -4.0;
        p.gamma1 = g1;
        p.epsilon = 0.05;
        Scenario sc;
        sc.tag = ScenarioTag::III;
        sc.c0 = 1.0;
        validate_scenario(p, sc);
        const ReducedVectorField f = build_for_shooting(p, sc);
        const HeteroclinicResult h = shoot_heteroclinic(f, f.invading, 1e-6, 500.0, 1e-10);
        o.require(h.target_class == OmegaLimit::Origin, "III at gamma1=" + fmt(g1));
        o.detail << "III g1=" << fmt(g1) << ": " << to_string(h.target_class) << "; ";
    }
    double worst = 0.0;
    for (double g20 : {0.5, -0.5})
        for (double eps : {0.05, 0.02}) {
            ModelParams p = unit_params();
            p.cv = -4.0;
            p.gamma1 = 0.01;
            p.epsilon = eps;
            p.gamma2 = eps * g20;
            Scenario sc;
            sc.tag = ScenarioTag::IV;
            sc.c0 = 1.0;
            sc.gamma2_0 = g20;
            validate_scenario(p, sc);
            o.require(gamma2_condition(p, sc.c0, g20), "gamma2 condition at " + fmt(g20));
            const ReducedVectorField f = build_for_shooting(p, sc);
            const HeteroclinicResult h = shoot_heteroclinic(f, f.invading, 1e-6, 500.0, 1e-10);
            const Vec& x0 = h.trajectory.states.front();
            const double A = f.amplitude;
            const double want = -2.0 * g20 * A * A / sc.c0;
            const double err = std::abs(f.b1_of(x0) - want);
            worst = std::max(worst, err);
            o.require(h.target_class == OmegaLimit::Origin,
                      "IV at g20=" + fmt(g20) + ", eps=" + fmt(eps));
            o.require(err <= 1e-3, "B1 endpoint off by " + fmt(err));
            o.detail << "IV g20=" << fmt(g20) << " eps=" << fmt(eps) << ": "
                     << to_string(h.target_class) << "; ";
        }
    o.detail << "max B1 endpoint error " << fmt(worst);
}

// 10
void scenario_five(Outcome& o) {
    ModelParams p2 = unit_params();
    p2.epsilon = 0.05;
    ModelParams p5 = p2;
    p5.cv = -3.0 * p5.cu;
    const double c0 = 2.0;
    const ReducedVectorField f2 = build_s2(p2, c0);
    const ReducedVectorField f5 = build_s5(p5, c0);
    Vec x2 = f2.invading + 1e-3 * Vec::Unit(4, 0);
    Vec x5 = Vec::Zero(5);
    x5.head(4) = x2;
    IntegrateOptions io;
    io.sample_dt = 0.5;
    const Trajectory t2 = integrate(f2, x2, 100.0, 1e-12, io);
    const Trajectory t5 = integrate(f5, x5, 100.0, 1e-12, io);
    double diff = (f2.invading - f5.invading.head(4)).norm();
    for (double t = 0.0; t <= 100.0; t += 0.5) diff = std::max(diff, (t2.at(t) - t5.at(t).head(4)).norm());
    o.require(diff < 1e-8, "S5 vs S2 difference " + fmt(diff));
    o.detail << "gamma1=0: max |S5 - S2| " << fmt(diff) << "; ";

    ModelParams q = p5;
    q.gamma1 = 0.02;
    const ReducedVectorField g = build_s5(q, c0);
    const HeteroclinicResult h = shoot_heteroclinic(g, g.invading, 1e-6, 1000.0, 1e-10);
    o.require(h.target_class == OmegaLimit::Origin, "gamma1=0.02 heteroclinic");
    o.detail << "gamma1=0.02: " << to_string(h.target_class);
}

// 11
void pde_validation(Outcome& o) {
    ModelParams p = unit_params();
    p.epsilon = 0.1;
    Scenario sc;
    sc.c = 2.0;
    validate_scenario(p, sc);
    const ReducedVectorField f = build_for_shooting(p, sc);
    ShootOptions so;
    so.reverse = true;
    const HeteroclinicResult h = shoot_heteroclinic(f, f.invading, 1e-7, 200.0, 1e-10, so);
    const HeteroclinicData data = heteroclinic_data(f, h.trajectory);

    const double L = 2.0 * M_PI * 96.0;
    const int N = 2048;
    std::vector<double> xi;
    for (int i = 0; i <= 4 * N; ++i) xi.push_back(-L / 2.0 + L * i / (4.0 * N));
    const FrontProfile prof = reconstruct(sc, data, p, xi, 256);
    PdeState s = initial_state_from_front(prof, L, N, L / 2.0, 10.0);

    const double dt = 0.01, t_end = 120.0, every = 1.0;
    PdeSolver solver(p, L, N, dt);
    const double m0 = s.mean_v();
    double drift = 0.0;
    std::vector<PdeState> hist{s};
    const int per = static_cast<int>(std::lround(every / dt));
    while (s.t < t_end - 1e-9) {
        solver.advance(s, per);
        drift = std::max(drift, std::abs(s.mean_v() - m0));
        hist.push_back(s);
    }
    MeasureOptions mo;
    mo.plateau = 2.0 * p.epsilon * f.amplitude;
    const double cf = measure_front_speed(hist, mo);
    const double cpm = measure_phase_speed(hist, mo);
    const double cp_want = p.cu + p.epsilon * p.epsilon * leading_order(p).omega0_star;
    o.require(std::abs(cf - sc.c) <= 0.05, "front speed " + fmt(cf));
    o.require(std::abs(cpm - cp_want) <= 5e-3, "phase speed " + fmt(cpm) + " vs " + fmt(cp_want));
    o.require(drift < 1e-10, "mean(v) drift " + fmt(drift));
    o.detail << "front speed " << fmt(cf) << " (c=" << fmt(sc.c) << "), phase speed " << fmt(cpm)
             << " (want " << fmt(cp_want) << "), mean(v) drift " << fmt(drift);
}

// 12
void jacobians(Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::pair<std::string, ReducedVectorField>> fields;
    ModelParams p = unit_params();
    p.gamma1 = 0.03;
    p.gamma2 = 0.02;
    p.cv = 0.3;
    p.epsilon = 0.05;
    fields.emplace_back("S1", build_s1(p, 2.0));
    fields.emplace_back("S1 polar", build_s1_polar(p, 2.0));
    fields.emplace_back("S2", build_s2(p, 1.5));
    ModelParams p3 = p;
    p3.gamma2 = 0.0;
    p3.cv = -4.0;
    fields.emplace_back("S3", build_s3(p3, 1.0));
    fields.emplace_back("S3 polar", build_s3_polar(p3, 1.0));
    ModelParams p4 = p3;
    p4.gamma2 = p4.epsilon * 0.5;
    const S4System s4 = build_s4(p4, 1.0, 0.5);
    fields.emplace_back("S4", s4.full);
    fields.emplace_back("S4 slow", s4.slow);
    fields.emplace_back("S4 fast", s4.fast);
    ModelParams p5 = p;
    p5.gamma2 = 0.0;
    p5.cv = -3.0;
    fields.emplace_back("S5", build_s5(p5, 1.5));
    double worst = 0.0;
    for (const auto& [name, f] : fields) {
        double w = 0.0;
        for (int k = 0; k < 10; ++k) {
            Vec x(f.dim);
            for (int i = 0; i < f.dim; ++i) x(i) = U(rng);
            const Mat J = f.jac(x), Jfd = finite_difference_jacobian(f, x);
            w = std::max(w, (J - Jfd).norm() / std::max(J.norm(), 1e-300));
        }
        o.require(w < 1e-6, name + " relative error " + fmt(w));
        worst = std::max(worst, w);
    }
    o.detail << fields.size() << " fields x 10 states, max relative error " << fmt(worst);
}

struct Entry {
    const char* name;
    std::function<void(Outcome&)> run;
    double limit;  // seconds, 0 = none
};

const std::vector<Entry>& table() {
    static const std::vector<Entry> t = {
        {"spectral gap and counts", spectral_gap, 10.0},
        {"central eigenvalue expansions", central_expansions, 0.0},
        {"traveling wave", traveling_wave, 0.0},
        {"scenario I heteroclinic", scenario_one_heteroclinic, 0.0},
        {"Hopf point", hopf_point, 30.0},
        {"torus point", torus_point, 300.0},
        {"invading spectrum", invading_spectrum, 0.0},
        {"omega-limit classification", omega_limits, 180.0},
        {"scenario III/IV persistence", persistence, 0.0},
        {"scenario V restriction", scenario_five, 0.0},
        {"PDE validation", pde_validation, 600.0},
        {"Jacobian correctness", jacobians, 0.0},
    };
    return t;
}

}  // namespace

int criterion_count() { return static_cast<int>(table().size()); }

std::string criterion_name(int id) { return table().at(id - 1).name; }

CriterionResult run_criterion(int id) {
    const Entry& e = table().at(id - 1);
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        e.run(o);
    } catch (const Error& err) {
        o.passed = false;
        o.detail << "error " << err.name() << ": " << err.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.limit > 0.0 && r.seconds >= e.limit) {
        o.passed = false;
        o.detail << "; runtime " << fmt(r.seconds) << " s exceeds " << fmt(e.limit) << " s";
    }
    r.passed = o.passed;
    r.detail = o.detail.str();
    return r;
}

std::string format_result(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-30s (%.2f s) ", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds);
    return head + r.detail;
}

}  // namespace modfront::acceptance
