#include "modfront/front.hpp"

#include <algorithm>
#include <cmath>

#include "modfront/errors.hpp"
#include "modfront/wave.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);

bool slaved(ScenarioTag t) { return t == ScenarioTag::I || t == ScenarioTag::II; }

double s_scale(ScenarioTag t, double eps) {
    return (t == ScenarioTag::II || t == ScenarioTag::V) ? eps : eps * eps;
}

// Linear interpolation on a uniform grid, clamped at the ends.
template <class T>
T sample(const std::vector<double>& s, const std::vector<T>& y, double q) {
    if (q <= s.front()) return y.front();
    if (q >= s.back()) return y.back();
    const double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
    std::size_t i = static_cast<std::size_t>((q - s.front()) / h);
    i = std::min(i, s.size() - 2);
    const double w = (q - s[i]) / (s[i + 1] - s[i]);
    return (1.0 - w) * y[i] + w * y[i + 1];
}

}  // namespace

HeteroclinicData heteroclinic_data(const ReducedVectorField& f, const Trajectory& tr, int n) {
    if (n < 2 || tr.times.size() < 2) fail("GridMismatch", "need at least two samples");
    HeteroclinicData d;
    d.tag = f.scenario;
    d.A_star = f.amplitude;
    d.omega0 = f.omega0;
    const double t0 = tr.t_begin(), t1 = tr.t_end();
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / (n - 1);
        const Vec x = tr.at(t);
        d.s_grid.push_back(t);
        d.A.push_back(f.amplitude_of(x));
        if (!slaved(d.tag)) d.B1.push_back(f.b1_of(x));
    }
    const double half = 0.5 * f.amplitude;
    for (int i = 0; i + 1 < n; ++i) {
        const double a0 = std::abs(d.A[i]) - half, a1 = std::abs(d.A[i + 1]) - half;
        if (a0 == 0.0 || a0 * a1 < 0.0) {
            const double shift = d.s_grid[i] + (d.s_grid[i + 1] - d.s_grid[i]) * a0 / (a0 - a1);
            for (double& s : d.s_grid) s -= shift;
            break;
        }
    }
    return d;
}

FrontProfile reconstruct(const Scenario& sc, const HeteroclinicData& d, const ModelParams& p,
                         std::vector<double> xi_grid, int p_points) {
    const std::size_t n = d.s_grid.size();
    if (n < 2 || d.A.size() != n || (!slaved(sc.tag) && d.B1.size() != n))
        fail("GridMismatch", "heteroclinic arrays disagree in length");
    if (!std::is_sorted(d.s_grid.begin(), d.s_grid.end()) || d.s_grid.front() == d.s_grid.back())
        fail("GridMismatch", "s grid must be increasing");
    if (p_points < 4) fail("GridMismatch", "p grid needs at least four points");
    if (!(p.epsilon > 0.0)) fail("ConfigError", "reconstruction needs epsilon > 0");
    const double eps = p.epsilon;
    const double scale = s_scale(sc.tag, eps);
    if (xi_grid.empty())
        for (double s : d.s_grid) xi_grid.push_back(s / scale);
    if (!std::is_sorted(xi_grid.begin(), xi_grid.end())) fail("GridMismatch", "xi grid must be sorted");

    FrontProfile fp;
    fp.scenario = sc;
    fp.c = front_speed(p, sc);
    fp.cp = p.cu + eps * eps * d.omega0;
    fp.epsilon = eps;
    fp.xi_grid = xi_grid;
    for (int j = 0; j < p_points; ++j) fp.p_grid.push_back(2.0 * M_PI * j / p_points);

    std::function<double(double)> b_of;
    if (slaved(sc.tag)) b_of = slaved_B(sc.tag, p, fp.c).B_of_A;
    const cplx hu = second_harmonic_u(p), hv = second_harmonic_v(p);
    const int m = static_cast<int>(xi_grid.size());
    fp.u.resize(m, p_points);
    fp.v.resize(m, p_points);
    for (int i = 0; i < m; ++i) {
        const double s = scale * xi_grid[i];
        const cplx A = sample(d.s_grid, d.A, s);
        const double Bpart = slaved(sc.tag) ? b_of(std::norm(A)) : sample(d.s_grid, d.B1, s);
        for (int j = 0; j < p_points; ++j) {
            const cplx e1 = std::exp(I * fp.p_grid[j]);
            const cplx e2 = e1 * e1;
            fp.u(i, j) = 2.0 * eps * std::real(A * e1) + 2.0 * eps * eps * std::real(hu * A * A * e2);
            fp.v(i, j) = eps * eps * (Bpart + 2.0 * std::real(hv * A * A * e2));
        }
    }
    return fp;
}

std::vector<SnapshotSample> physical_snapshot(const FrontProfile& f, double t,
                                              const std::vector<double>& x_grid) {
    const auto& xg = f.xi_grid;
    if (xg.size() < 2) fail("OutOfCoverage", "profile has no xi extent");
    const int np = static_cast<int>(f.p_grid.size());
    const double dp = 2.0 * M_PI / np;
    const double slack = 1e-9 * std::max(1.0, xg.back() - xg.front());
    std::vector<SnapshotSample> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        double xi = x - f.c * t;
        if (xi < xg.front() - slack || xi > xg.back() + slack)
            fail("OutOfCoverage", "x - c t = " + std::to_string(xi) + " outside the profile");
        xi = std::clamp(xi, xg.front(), xg.back());
        std::size_t i = static_cast<std::size_t>(std::upper_bound(xg.begin(), xg.end(), xi) - xg.begin());
        i = std::clamp<std::size_t>(i, 1, xg.size() - 1) - 1;
        const double wx = (xi - xg[i]) / (xg[i + 1] - xg[i]);
        double ph = std::fmod(x - f.cp * t, 2.0 * M_PI);
        if (ph < 0.0) ph += 2.0 * M_PI;
        const double q = ph / dp;
        int j = static_cast<int>(std::floor(q));
        const double wp = q - j;
        j %= np;
        const int j1 = (j + 1) % np;
        auto bil = [&](const Mat& M) {
            const int r = static_cast<int>(i);
            return (1.0 - wx) * ((1.0 - wp) * M(r, j) + wp * M(r, j1)) +
                   wx * ((1.0 - wp) * M(r + 1, j) + wp * M(r + 1, j1));
        };
        out.push_back({x, bil(f.u), bil(f.v)});
    }
    return out;
}

}  // namespace modfront
