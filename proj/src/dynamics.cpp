#include "modfront/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "modfront/errors.hpp"

namespace modfront {

namespace odeint = boost::numeric::odeint;

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ReachedTmax: return "ReachedTmax";
        case Termination::ConvergedToPoint: return "ConvergedToPoint";
        case Termination::Diverged: return "Diverged";
    }
    return "?";
}

std::string to_string(OmegaLimit c) {
    switch (c) {
        case OmegaLimit::Origin: return "Origin";
        case OmegaLimit::PeriodicOrbit: return "PeriodicOrbit";
        case OmegaLimit::Quasiperiodic: return "Quasiperiodic";
        case OmegaLimit::Divergent: return "Divergent";
    }
    return "?";
}

Vec Trajectory::at(double t) const {
    if (times.empty()) fail("OutOfCoverage", "empty trajectory");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
    const double h = times[i + 1] - times[i];
    const double s = (t - times[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * states[i] + h10 * h * derivatives[i] + h01 * states[i + 1] +
           h11 * h * derivatives[i + 1];
}

Trajectory integrate(const ReducedVectorField& f, const Vec& x0, double t_end, double tol,
                     const IntegrateOptions& o) {
    if (!(tol >= 1e-12 && tol <= 1e-3)) fail("InvalidTolerance", "tol must lie in [1e-12, 1e-3]");
    using State = std::vector<double>;
    const int n = f.dim;
    auto sys = [&f, n](const State& x, State& dx, double) {
        const Vec y = f.rhs(Eigen::Map<const Vec>(x.data(), n));
        dx.assign(y.data(), y.data() + n);
    };
    auto to_vec = [n](const State& s) { return Vec(Eigen::Map<const Vec>(s.data(), n)); };

    Trajectory tr;
    auto record = [&](double t, const Vec& x) {
        tr.times.push_back(t);
        tr.states.push_back(x);
        tr.derivatives.push_back(f.rhs(x));
    };
    auto finite = [](const Vec& x) { return x.allFinite(); };

    record(0.0, x0);
    if (t_end <= 0.0) return tr;
    if (o.converge_radius > 0.0 && f.norm(x0) < o.converge_radius) {
        tr.termination = Termination::ConvergedToPoint;
        return tr;
    }

    auto stepper = odeint::make_dense_output(tol, tol, o.max_step,
                                             odeint::runge_kutta_dopri5<State>());
    State xs(x0.data(), x0.data() + n), tmp(n);
    stepper.initialize(xs, 0.0, std::min(o.initial_step, t_end));
    double next_sample = o.sample_dt;
    try {
        while (true) {
            const auto [t0, t1] = stepper.do_step(sys);
            (void)t0;
            const bool last = t1 >= t_end;
            if (o.sample_dt > 0.0) {
                while (next_sample <= std::min(t1, t_end) + 1e-12 * o.sample_dt) {
                    stepper.calc_state(next_sample, tmp);
                    record(next_sample, to_vec(tmp));
                    next_sample = o.sample_dt * (std::round(next_sample / o.sample_dt) + 1.0);
                }
            }
            Vec x;
            double t_now = t1;
            if (last) {
                stepper.calc_state(t_end, tmp);
                x = to_vec(tmp);
                t_now = t_end;
            } else {
                x = to_vec(stepper.current_state());
            }
            const bool store = o.sample_dt <= 0.0 || tr.times.back() < t_now - 1e-12;
            if (!finite(x) || f.norm(x) > o.diverge_radius) {
                if (store && finite(x)) record(t_now, x);
                tr.termination = Termination::Diverged;
                return tr;
            }
            if (store) record(t_now, x);
            if (o.converge_radius > 0.0 && f.norm(x) < o.converge_radius) {
                tr.termination = Termination::ConvergedToPoint;
                return tr;
            }
            if (last) break;
            if (stepper.current_time_step() < 1e-14 * std::max(1.0, std::abs(t1))) {
                tr.termination = Termination::Diverged;
                return tr;
            }
        }
    } catch (const odeint::odeint_error&) {
        tr.termination = Termination::Diverged;
        return tr;
    }
    tr.termination = Termination::ReachedTmax;
    return tr;
}

ReducedVectorField time_reversed(const ReducedVectorField& f) {
    ReducedVectorField g = f;
    auto rhs = f.rhs;
    auto jac = f.jac;
    g.rhs = [rhs](const Vec& x) { return Vec(-rhs(x)); };
    g.jac = [jac](const Vec& x) { return Mat(-jac(x)); };
    return g;
}

FixedPointSpectrum fixed_point_eigens(const ReducedVectorField& f, const Vec& x, double center_tol) {
    const double r = f.norm(f.rhs(x));
    if (!(r < 1e-8)) fail("NotAFixedPoint", "|rhs| = " + std::to_string(r));
    Eigen::EigenSolver<Mat> es(f.jac(x), true);
    if (es.info() != Eigen::Success) fail("NoConvergence", "eigen-decomposition failed");
    const int n = f.dim;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const Eigen::VectorXcd ev = es.eigenvalues();
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return ev(i).real() > ev(j).real(); });
    FixedPointSpectrum s;
    s.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const cplx z = ev(idx[k]);
        s.values.push_back(z);
        s.vectors.col(k) = es.eigenvectors().col(idx[k]);
        if (z.real() > center_tol) ++s.unstable;
        else if (z.real() < -center_tol) ++s.stable;
        else ++s.center;
    }
    return s;
}

Vec gauge_direction(const ReducedVectorField& f, const Vec& x) {
    Vec g = Vec::Zero(f.dim);
    for (int i = 0; i + 1 < static_cast<int>(f.labels.size()); ++i) {
        const std::string& a = f.labels[i];
        if ((a == "A_r" && f.labels[i + 1] == "A_i") || (a == "At_r" && f.labels[i + 1] == "At_i")) {
            g(i) = -x(i + 1);
            g(i + 1) = x(i);
        }
    }
    for (int i = 0; i < f.dim; ++i)
        if (i < static_cast<int>(f.angular.size()) && f.angular[i]) g(i) = 1.0;
    return g;
}

namespace {

Vec masked(const ReducedVectorField& f, const Vec& x) {
    std::vector<double> v;
    for (int i = 0; i < x.size(); ++i)
        if (i >= static_cast<int>(f.angular.size()) || !f.angular[i]) v.push_back(x(i));
    return Eigen::Map<Vec>(v.data(), static_cast<int>(v.size()));
}

}  // namespace

OmegaLimitReport classify_omega_limit(const Trajectory& tr, const ReducedVectorField& f,
                                      const ClassifyOmegaOptions& o) {
    OmegaLimitReport rep;
    OmegaDiagnostics& d = rep.diagnostics;
    if (tr.states.size() < 2) fail("Inconclusive", "trajectory too short");
    d.final_norm = f.norm(tr.states.back());
    if (d.final_norm < o.origin_tol) {
        rep.cls = OmegaLimit::Origin;
        return rep;
    }
    const double big = o.diverge_factor * std::max(f.amplitude, 1e-12);
    if (tr.termination == Termination::Diverged || d.final_norm > big) {
        rep.cls = OmegaLimit::Divergent;
        return rep;
    }
    const double t1 = tr.t_end(), t0 = t1 - o.tail_fraction * (t1 - tr.t_begin());
    std::size_t first = static_cast<std::size_t>(
        std::lower_bound(tr.times.begin(), tr.times.end(), t0) - tr.times.begin());
    if (tr.states.size() - first < 8) fail("Inconclusive", "tail has too few samples");

    const int m = static_cast<int>(masked(f, tr.states.back()).size());
    Vec mean = Vec::Zero(m), sq = Vec::Zero(m);
    d.tail_min_amplitude = std::numeric_limits<double>::infinity();
    for (std::size_t i = first; i < tr.states.size(); ++i) {
        const Vec y = masked(f, tr.states[i]);
        mean += y;
        sq += y.cwiseProduct(y);
        const double amp = std::abs(f.amplitude_of(tr.states[i]));
        d.tail_min_amplitude = std::min(d.tail_min_amplitude, amp);
        d.tail_max_amplitude = std::max(d.tail_max_amplitude, amp);
    }
    const double cnt = static_cast<double>(tr.states.size() - first);
    mean /= cnt;
    const Vec var = sq / cnt - mean.cwiseProduct(mean);
    int k = 0;
    var.maxCoeff(&k);
    d.section_coordinate = k;
    if (var(k) < o.spread_tol * o.spread_tol)
        fail("Inconclusive", "trajectory settles at a point other than the origin");

    // Upward crossings of the hyperplane y_k = mean_k, refined on the Hermite interpolant.
    std::vector<Vec> returns;
    auto h = [&](double t) { return masked(f, tr.at(t))(k) - mean(k); };
    for (std::size_t i = first; i + 1 < tr.states.size(); ++i) {
        const double a = masked(f, tr.states[i])(k) - mean(k);
        const double b = masked(f, tr.states[i + 1])(k) - mean(k);
        if (!(a < 0.0 && b >= 0.0)) continue;
        double lo = tr.times[i], hi = tr.times[i + 1];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) < 0.0 ? lo : hi) = mid;
        }
        returns.push_back(masked(f, tr.at(0.5 * (lo + hi))));
    }
    d.section_returns = static_cast<int>(returns.size());
    if (returns.size() < 3) fail("Inconclusive", "fewer than three section returns");

    double spread = 0.0;
    for (const Vec& r : returns) spread = std::max(spread, (r - returns.back()).norm());
    d.section_spread = spread;
    const int nr = static_cast<int>(returns.size());
    for (int q = 1; q <= o.max_period_multiple && 2 * q < nr; ++q) {
        double dq = 0.0;
        for (int j = 0; j + q < nr; ++j) dq = std::max(dq, (returns[j + q] - returns[j]).norm());
        if (dq < o.spread_tol) {
            d.period_multiple = q;
            rep.cls = OmegaLimit::PeriodicOrbit;
            return rep;
        }
    }
    if (nr < o.min_returns) fail("Inconclusive", "too few returns to resolve an invariant curve");

    Vec centroid = Vec::Zero(m);
    for (const Vec& r : returns) centroid += r;
    centroid /= nr;
    Mat cov = Mat::Zero(m, m);
    for (const Vec& r : returns) cov += (r - centroid) * (r - centroid).transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    const Vec e1 = es.eigenvectors().col(m - 1), e2 = es.eigenvectors().col(m - 2);
    std::vector<double> ang;
    std::vector<double> rad;
    for (const Vec& r : returns) {
        const double x = (r - centroid).dot(e1), y = (r - centroid).dot(e2);
        ang.push_back(std::atan2(y, x));
        rad.push_back(std::hypot(x, y));
    }
    std::vector<double> sorted = ang;
    std::sort(sorted.begin(), sorted.end());
    double gap = sorted.front() + 2.0 * M_PI - sorted.back();
    for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::max(gap, sorted[i] - sorted[i - 1]);
    d.angular_gap = gap;
    const int third = nr / 3;
    const double r_early = std::accumulate(rad.begin(), rad.begin() + third, 0.0) / third;
    const double r_late = std::accumulate(rad.end() - third, rad.end(), 0.0) / third;
    if (gap < o.max_angular_gap && r_late > 0.5 * r_early) {
        rep.cls = OmegaLimit::Quasiperiodic;
        return rep;
    }
    fail("Inconclusive", "section returns neither repeat nor fill a closed curve");
}

HeteroclinicResult shoot_heteroclinic(const ReducedVectorField& f0, const Vec& from_fp, double offset,
                                      double t_max, double tol, const ShootOptions& o) {
    if (!(offset >= 1e-8 && offset <= 1e-2)) fail("InvalidOffset", "offset must lie in [1e-8, 1e-2]");
    const ReducedVectorField f = o.reverse ? time_reversed(f0) : f0;
    const FixedPointSpectrum sp = fixed_point_eigens(f, from_fp);
    if (sp.unstable != 1)
        fail("NoUnstableDirection",
             "expected one unstable direction, found " + std::to_string(sp.unstable));
    HeteroclinicResult res;
    res.source = from_fp;
    res.offset = offset;
    res.unstable_eigenvalue = sp.values[0].real();
    Vec v = sp.vectors.col(0).real();
    if (v.norm() < 1e-12) v = sp.vectors.col(0).imag();
    const Vec g = gauge_direction(f, from_fp);
    if (g.norm() > 0.0) v -= (v.dot(g) / g.squaredNorm()) * g;
    if (v.norm() < 1e-12) fail("NoUnstableDirection", "unstable direction is a gauge direction");
    v.normalize();
    if (std::abs(f.amplitude_of(from_fp + offset * v)) > std::abs(f.amplitude_of(from_fp - offset * v)))
        v = -v;
    res.direction = v;

    IntegrateOptions io;
    io.converge_radius = o.classify.origin_tol;
    io.diverge_radius = o.classify.diverge_factor * std::max(f.amplitude, 1e-12);
    io.sample_dt = o.sample_dt;
    io.max_step = o.max_step;
    Trajectory tr = integrate(f, from_fp + offset * v, t_max, tol, io);
    const OmegaLimitReport rep = classify_omega_limit(tr, f, o.classify);
    res.target_class = rep.cls;
    res.diagnostics = rep.diagnostics;

    if (o.integrate_opposite) {
        const Trajectory op = integrate(f, from_fp - offset * v, t_max, tol, io);
        try {
            res.opposite_class = to_string(classify_omega_limit(op, f, o.classify).cls);
        } catch (const Error& e) {
            res.opposite_class = e.name();
        }
    }
    if (o.reverse) {
        std::reverse(tr.times.begin(), tr.times.end());
        std::reverse(tr.states.begin(), tr.states.end());
        std::reverse(tr.derivatives.begin(), tr.derivatives.end());
        for (double& t : tr.times) t = -t;
        for (Vec& dv : tr.derivatives) dv = -dv;
    }
    res.trajectory = std::move(tr);
    return res;
}

double AnalyticS1::operator()(double xi) const {
    const double K = a / (r0 * r0) - b;
    return std::sqrt(a / (b + K * std::exp(-2.0 * a * xi)));
}

double AnalyticS1::derivative(double xi) const {
    const double r = (*this)(xi);
    return a * r - b * r * r * r;
}

AnalyticS1 analytic_s1_heteroclinic(const ModelParams& p, double c) {
    const double s = 3.0 * p.cu - c;
    if (std::abs(s) < 1e-12) fail("DegenerateScenario", "3c_u - c vanishes");
    AnalyticS1 h;
    h.a = (p.alpha0 + p.B) / s;
    h.b = (3.0 + 1.0 / (9.0 + 4.0 * p.cu * p.cu)) / s;
    h.A_star = std::sqrt(h.a / h.b);
    h.r0 = h.A_star / std::sqrt(2.0);
    return h;
}

}  // namespace modfront
