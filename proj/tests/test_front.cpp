#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modfront/errors.hpp"
#include "modfront/front.hpp"
#include "modfront/pdesim.hpp"
#include "modfront/wave.hpp"

using namespace modfront;

namespace {

struct Built {
    ModelParams p;
    Scenario sc;
    ReducedVectorField f;
    HeteroclinicData data;
};

Built scenario_one(double c, bool reverse, double eps = 0.1) {
    Built b;
    b.p.epsilon = eps;
    b.sc.c = c;
    validate_scenario(b.p, b.sc);
    b.f = build_for_shooting(b.p, b.sc);
    ShootOptions so;
    so.reverse = reverse;
    const HeteroclinicResult h = shoot_heteroclinic(b.f, b.f.invading, 1e-7, 200.0, 1e-10, so);
    b.data = heteroclinic_data(b.f, h.trajectory);
    return b;
}

double row_max(const Mat& M, Eigen::Index i) { return M.row(i).cwiseAbs().maxCoeff(); }

std::vector<double> uniform(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
    return x;
}

}  // namespace

TEST_CASE("heteroclinic data is centred on the half-amplitude crossing") {
    const Built b = scenario_one(4.0, false);
    const auto& d = b.data;
    CHECK(d.B1.empty());
    double at0 = 0.0;
    for (std::size_t i = 0; i + 1 < d.s_grid.size(); ++i)
        if (d.s_grid[i] <= 0.0 && d.s_grid[i + 1] > 0.0) {
            const double w = -d.s_grid[i] / (d.s_grid[i + 1] - d.s_grid[i]);
            at0 = (1 - w) * std::abs(d.A[i]) + w * std::abs(d.A[i + 1]);
        }
    CHECK(at0 == doctest::Approx(0.5 * d.A_star).epsilon(1e-3));
}

TEST_CASE("boundary limits for forward and reversed fronts") {
    for (auto [c, rev] : {std::pair{4.0, false}, std::pair{2.0, true}}) {
        const Built b = scenario_one(c, rev);
        const FrontProfile fp = reconstruct(b.sc, b.data, b.p);
        const double eps = b.p.epsilon;
        const Eigen::Index last = fp.u.rows() - 1;
        const double lo = row_max(fp.u, 0), hi = row_max(fp.u, last);
        const double pat = std::max(lo, hi), rest = std::min(lo, hi);
        CHECK(pat == doctest::Approx(2.0 * eps * b.data.A_star).epsilon(0.05));
        CHECK(rest < 1e-3 * eps);
        CHECK(fp.c == doctest::Approx(c));
        CHECK(fp.cp == doctest::Approx(b.p.cu + eps * eps * b.data.omega0));
        // Pattern side sits behind a forward front and ahead of a reversed one.
        CHECK((hi > lo) == rev);
    }
}

TEST_CASE("pattern end matches the periodic wave") {
    const Built b = scenario_one(4.0, false);
    const double eps = b.p.epsilon;
    const FrontProfile fp = reconstruct(b.sc, b.data, b.p, {}, 128);
    const Eigen::Index row = std::abs(b.data.A.front()) > std::abs(b.data.A.back()) ? 0 : fp.u.rows() - 1;
    const cplx A = row == 0 ? b.data.A.front() : b.data.A.back();
    const WaveSolution w = leading_order(b.p);
    std::vector<double> shifted;
    for (double ph : fp.p_grid) shifted.push_back(ph + std::arg(A));
    const auto ref = wave_profile(w, b.p, shifted);
    double err = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) err = std::max(err, std::abs(fp.u(row, j) - ref[j].u));
    CHECK(err < 10.0 * eps * eps);
}

TEST_CASE("v mean vanishes without v coupling in scenario I") {
    const Built b = scenario_one(4.0, false);
    const FrontProfile fp = reconstruct(b.sc, b.data, b.p);
    CHECK(fp.v.rowwise().mean().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("scenario IV v mean at the invading end") {
    ModelParams p;
    p.cv = -4.0;
    p.gamma1 = 0.01;
    p.epsilon = 0.05;
    const double g20 = 0.5;
    p.gamma2 = p.epsilon * g20;
    Scenario sc;
    sc.tag = ScenarioTag::IV;
    sc.c0 = 1.0;
    sc.gamma2_0 = g20;
    const ReducedVectorField f = build_for_shooting(p, sc);
    const HeteroclinicResult h = shoot_heteroclinic(f, f.invading, 1e-6, 500.0, 1e-10);
    const HeteroclinicData d = heteroclinic_data(f, h.trajectory);
    CHECK(d.B1.size() == d.s_grid.size());
    const FrontProfile fp = reconstruct(sc, d, p);
    const auto means = fp.v.rowwise().mean();
    const double want = -2.0 * g20 * f.amplitude * f.amplitude / sc.c0;
    const Eigen::Index inv = std::abs(d.A.front()) > std::abs(d.A.back()) ? 0 : means.size() - 1;
    CHECK(means(inv) / (p.epsilon * p.epsilon) == doctest::Approx(want).epsilon(0.01));
    CHECK(std::abs(means(means.size() - 1 - inv)) < 1e-4 * p.epsilon * p.epsilon);
}

TEST_CASE("translating the data translates the profile") {
    const Built b = scenario_one(4.0, false);
    const double scale = b.p.epsilon * b.p.epsilon;
    const double h = 0.5;
    const auto xi = uniform(-400.0, 400.0, 1601);
    HeteroclinicData moved = b.data;
    for (double& s : moved.s_grid) s += scale * 4.0 * h;
    const FrontProfile a = reconstruct(b.sc, b.data, b.p, xi);
    const FrontProfile m = reconstruct(b.sc, moved, b.p, xi);
    double err = 0.0;
    for (Eigen::Index i = 4; i < a.u.rows(); ++i) err = std::max(err, (m.u.row(i) - a.u.row(i - 4)).cwiseAbs().maxCoeff());
    CHECK(err < 1e-12);
}

TEST_CASE("snapshot at t = 0 samples the profile on the diagonal") {
    const Built b = scenario_one(4.0, false);
    const double eps = b.p.epsilon;
    const auto xi = uniform(-300.0, 300.0, 6001);
    const FrontProfile fp = reconstruct(b.sc, b.data, b.p, xi, 256);
    std::vector<double> xs;
    for (int i = 0; i < 6001; i += 37) xs.push_back(xi[i]);
    const auto snap = physical_snapshot(fp, 0.0, xs);
    const cplx hu = second_harmonic_u(b.p);
    double err = 0.0;
    for (const auto& s : snap) {
        const double q = eps * eps * s.x;
        std::size_t k = 0;
        while (k + 2 < b.data.s_grid.size() && b.data.s_grid[k + 1] < q) ++k;
        const double w = std::clamp((q - b.data.s_grid[k]) / (b.data.s_grid[k + 1] - b.data.s_grid[k]), 0.0, 1.0);
        const cplx A = (1 - w) * b.data.A[k] + w * b.data.A[k + 1];
        const cplx e = std::exp(cplx(0.0, s.x));
        const double u = 2.0 * eps * std::real(A * e) + 2.0 * eps * eps * std::real(hu * A * A * e * e);
        err = std::max(err, std::abs(s.u - u));
    }
    CHECK(err < 1e-4);
}

TEST_CASE("snapshots move with the front speed") {
    const Built b = scenario_one(4.0, false);
    const double L = 2.0 * M_PI * 64.0;
    const int N = 1024;
    const auto xi = uniform(-L, L, 8 * N + 1);
    const FrontProfile fp = reconstruct(b.sc, b.data, b.p, xi, 128);
    std::vector<PdeState> hist;
    for (int k = 0; k <= 20; ++k) {
        PdeState s;
        s.L = L;
        s.N = N;
        s.t = k;
        std::vector<double> xs(N);
        for (int j = 0; j < N; ++j) xs[j] = L * j / N - L / 2.0;
        for (const auto& smp : physical_snapshot(fp, s.t, xs)) s.u.push_back(smp.u), s.v.push_back(smp.v);
        hist.push_back(s);
    }
    MeasureOptions mo;
    mo.min_span = 10.0;
    mo.discard_fraction = 0.0;
    mo.plateau = 2.0 * b.p.epsilon * b.data.A_star;
    CHECK(measure_front_speed(hist, mo) == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("errors") {
    const Built b = scenario_one(4.0, false);
    HeteroclinicData bad = b.data;
    bad.A.pop_back();
    try {
        reconstruct(b.sc, bad, b.p);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.name() == "GridMismatch");
    }
    try {
        reconstruct(b.sc, b.data, b.p, {1.0, 0.0});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.name() == "GridMismatch");
    }
    const FrontProfile fp = reconstruct(b.sc, b.data, b.p, uniform(-10.0, 10.0, 41));
    CHECK_NOTHROW(physical_snapshot(fp, 0.0, {-10.0, 10.0}));
    try {
        physical_snapshot(fp, 5.0, {0.0});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.name() == "OutOfCoverage");
    }
}
