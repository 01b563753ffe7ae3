#include "modfront/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "modfront/dynamics.hpp"
#include "modfront/errors.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);

struct FlowResult {
    Vec phi;
    Mat M;
    double trace_integral = 0.0;
    Trajectory path;
};

// Flow map with its state-transition matrix and integrated trace.
FlowResult flow_with_variational(const ReducedVectorField& f, const Vec& x0, double T, double tol) {
    const int n = f.dim;
    ReducedVectorField g;
    g.dim = n + n * n + 1;
    g.form = "variational";
    g.rhs = [&f, n](const Vec& y) {
        const Vec x = y.head(n);
        const Mat J = f.jac(x);
        const Eigen::Map<const Mat> P(y.data() + n, n, n);
        Vec out(n + n * n + 1);
        out.head(n) = f.rhs(x);
        Eigen::Map<Mat>(out.data() + n, n, n) = J * P;
        out(n + n * n) = J.trace();
        return out;
    };
    Vec y0 = Vec::Zero(g.dim);
    y0.head(n) = x0;
    Eigen::Map<Mat>(y0.data() + n, n, n).setIdentity();
    Trajectory tr = integrate(g, y0, T, tol);
    if (tr.termination == Termination::Diverged) fail("OrbitNewtonDiverged", "flow diverged");
    const Vec& y = tr.states.back();
    FlowResult r;
    r.phi = y.head(n);
    r.M = Eigen::Map<const Mat>(y.data() + n, n, n);
    r.trace_integral = y(n + n * n);
    r.path = std::move(tr);
    return r;
}

Vec flow_only(const ReducedVectorField& f, const Vec& x0, double T, double tol) {
    return integrate(f, x0, T, tol).states.back();
}

double orbit_amplitude(const ReducedVectorField& f, const Trajectory& path) {
    double a = 0.0;
    for (const Vec& y : path.states) a = std::max(a, f.norm(y.head(f.dim)));
    return a;
}

double max_real(const Mat& J) {
    Eigen::EigenSolver<Mat> es(J, false);
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) m = std::max(m, es.eigenvalues()(i).real());
    return m;
}

std::vector<cplx> eigenvalues_of(const Mat& J) {
    Eigen::EigenSolver<Mat> es(J, false);
    std::vector<cplx> v;
    for (int i = 0; i < es.eigenvalues().size(); ++i) v.push_back(es.eigenvalues()(i));
    return v;
}

}  // namespace

Mat origin_jacobian(const ModelParams& p, double c0, ScenarioTag tag) {
    if (tag == ScenarioTag::V) {
        const ReducedVectorField f = build_s5(p, c0);
        return f.jac(f.origin).topLeftCorner(4, 4);
    }
    if (tag != ScenarioTag::II) fail("DegenerateScenario", "origin scan needs scenario II or V");
    const ReducedVectorField f = build_s2(p, c0);
    return f.jac(f.origin);
}

std::vector<SpectrumSample> origin_spectrum_scan(const ModelParams& p, double lo, double hi, int n,
                                                 ScenarioTag tag) {
    std::vector<SpectrumSample> out;
    Eigen::MatrixXcd prev;
    for (int i = 0; i < n; ++i) {
        const double c0 = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        Eigen::EigenSolver<Mat> es(origin_jacobian(p, c0, tag), true);
        Eigen::VectorXcd vals = es.eigenvalues();
        Eigen::MatrixXcd vecs = es.eigenvectors();
        const int m = static_cast<int>(vals.size());
        if (prev.size() > 0) {
            std::vector<int> perm(m, -1);
            std::vector<bool> used(m, false);
            for (int a = 0; a < m; ++a) {
                int best = -1;
                double bestv = -1.0;
                for (int b = 0; b < m; ++b) {
                    if (used[b]) continue;
                    const double ov = std::abs(prev.col(a).dot(vecs.col(b)));
                    if (ov > bestv) bestv = ov, best = b;
                }
                perm[a] = best;
                used[best] = true;
            }
            Eigen::VectorXcd v2(m);
            Eigen::MatrixXcd V2(m, m);
            for (int a = 0; a < m; ++a) {
                v2(a) = vals(perm[a]);
                V2.col(a) = vecs.col(perm[a]);
            }
            vals = v2;
            vecs = V2;
        }
        prev = vecs;
        SpectrumSample s;
        s.c0 = c0;
        for (int a = 0; a < m; ++a) s.eigenvalues.push_back(vals(a));
        out.push_back(s);
    }
    return out;
}

BifurcationPoint find_hopf(const ModelParams& p, double lo, double hi, ScenarioTag tag) {
    BifurcationPoint bp;
    bp.kind = BifurcationKind::Hopf;
    auto g = [&](double c0) {
        ++bp.evaluations;
        return max_real(origin_jacobian(p, c0, tag));
    };
    double glo = g(lo), ghi = g(hi);
    if (!(glo * ghi < 0.0)) fail("NoSignChange", "max Re does not change sign on the bracket");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) lo = mid, glo = gm;
        else hi = mid, ghi = gm;
    }
    double x0 = lo, x1 = hi, g0 = glo, g1 = ghi;
    for (int it = 0; it < 50 && std::abs(g1) >= 1e-10; ++it) {
        if (g1 == g0) break;
        const double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        x0 = x1, g0 = g1;
        x1 = x2, g1 = g(x1);
    }
    if (std::abs(g1) >= 1e-10) fail("NoSignChange", "secant polish failed");
    bp.c0 = x1;
    bp.residual = std::abs(g1);
    auto ev = eigenvalues_of(origin_jacobian(p, x1, tag));
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
    bp.certificate = {ev[0], ev[1]};
    return bp;
}

PeriodicOrbit rotating_wave_seed(const ModelParams& p, double c0) {
    const ReducedVectorField f = build_s2(p, c0);
    const cplx a = f.coeffs.at("a"), b = f.coeffs.at("b"), c = f.coeffs.at("c");
    // rho = (-Omega^2 - i Omega b - a)/c must be real and positive.
    const double qa = -std::imag(1.0 / c), qb = -std::real(b / c), qc = -std::imag(a / c);
    std::vector<double> roots;
    if (std::abs(qa) < 1e-14) {
        roots.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) fail("OrbitNewtonDiverged", "no rotating wave at this c0");
        roots.push_back((-qb + std::sqrt(disc)) / (2.0 * qa));
        roots.push_back((-qb - std::sqrt(disc)) / (2.0 * qa));
    }
    auto ev = eigenvalues_of(f.jac(f.origin));
    std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() > y.real(); });
    double omega_h = 0.0;
    for (const cplx& z : ev)
        if (std::abs(z.real() - ev[0].real()) < 1e-9 && z.imag() * c0 > 0.0) omega_h = z.imag();
    if (omega_h == 0.0) omega_h = ev[0].imag();
    double best = std::numeric_limits<double>::infinity();
    PeriodicOrbit o;
    for (double W : roots) {
        const double rho = std::real((-W * W - I * W * b - a) / c);
        if (!(rho > 0.0) || W == 0.0) continue;
        if (std::abs(W - omega_h) < best) {
            best = std::abs(W - omega_h);
            const double R = std::sqrt(rho);
            o.c0 = c0;
            o.period = 2.0 * M_PI / std::abs(W);
            o.anchor = Vec::Zero(4);
            o.anchor << R, 0.0, 0.0, W * R;
        }
    }
    if (!std::isfinite(best)) fail("OrbitNewtonDiverged", "no rotating wave with positive amplitude");
    o.section_normal = f.rhs(o.anchor).normalized();
    o.amplitude = o.anchor.norm();
    return o;
}

PeriodicOrbit continue_periodic_orbit(const ModelParams& p, double c0, const PeriodicOrbit& seed,
                                      const OrbitOptions& o) {
    const ReducedVectorField f = build_s2(p, c0);
    const int n = f.dim;
    Vec x = seed.anchor;
    double T = seed.period;
    const Vec xhat = seed.anchor;
    const Vec fhat = f.rhs(xhat);
    PeriodicOrbit orb;
    for (int it = 0; it <= o.max_iterations; ++it) {
        FlowResult fr = flow_with_variational(f, x, T, o.integration_tol);
        const Vec r = fr.phi - x;
        const double phase = fhat.dot(x - xhat);
        const double res = std::sqrt(r.squaredNorm() + phase * phase);
        if (res < o.newton_tol) {
            orb.c0 = c0;
            orb.period = T;
            orb.anchor = x;
            orb.section_normal = f.rhs(x).normalized();
            orb.amplitude = orbit_amplitude(f, fr.path);
            orb.residual = r.norm();
            orb.newton_iterations = it;
            return orb;
        }
        if (it == o.max_iterations) break;
        Mat J = Mat::Zero(n + 1, n + 1);
        J.topLeftCorner(n, n) = fr.M - Mat::Identity(n, n);
        J.block(0, n, n, 1) = f.rhs(fr.phi);
        J.block(n, 0, 1, n) = fhat.transpose();
        Vec rhs(n + 1);
        rhs << -r, -phase;
        const Vec d = J.fullPivLu().solve(rhs);
        if (!d.allFinite()) break;
        x += d.head(n);
        T += d(n);
        if (!(T > 0.0)) break;
    }
    fail("OrbitNewtonDiverged", "shooting Newton did not converge at c0 = " + std::to_string(c0));
}

std::vector<PeriodicOrbit> continue_branch(const ModelParams& p, double c0_start, double c0_stop,
                                           const BranchOptions& o) {
    std::vector<PeriodicOrbit> branch;
    const double dir = c0_stop >= c0_start ? 1.0 : -1.0;
    branch.push_back(continue_periodic_orbit(p, c0_start, rotating_wave_seed(p, c0_start), o.orbit));
    double h = o.initial_step;
    for (;;) {
        try {
            branch.push_back(continue_periodic_orbit(p, c0_start + dir * h, branch.back(), o.orbit));
            break;
        } catch (const Error&) {
            h *= 0.5;
            if (h < o.min_step) throw;
        }
    }
    const int n = 4;
    auto pack = [n](const PeriodicOrbit& q) {
        Vec Y(n + 2);
        Y << q.anchor, q.period, q.c0;
        return Y;
    };
    while (static_cast<int>(branch.size()) < o.max_points) {
        const PeriodicOrbit& last = branch.back();
        if ((last.c0 - c0_stop) * dir >= 0.0) break;
        const Vec Y0 = pack(branch[branch.size() - 2]), Y1 = pack(last);
        const Vec t = (Y1 - Y0).normalized();
        bool ok = false;
        while (!ok && h >= o.min_step) {
            const Vec Yp = Y1 + h * t;
            Vec Y = Yp;
            const ReducedVectorField fp = build_s2(p, Yp(n + 1));
            const Vec fhat = fp.rhs(Yp.head(n));
            for (int it = 0; it < 10; ++it) {
                const double c0 = Y(n + 1);
                const ReducedVectorField f = build_s2(p, c0);
                FlowResult fr = flow_with_variational(f, Y.head(n), Y(n), o.orbit.integration_tol);
                const Vec r = fr.phi - Y.head(n);
                const double phase = fhat.dot(Y.head(n) - Yp.head(n));
                const double arc = t.dot(Y - Yp);
                if (std::sqrt(r.squaredNorm() + phase * phase + arc * arc) < o.orbit.newton_tol) {
                    PeriodicOrbit q;
                    q.c0 = c0;
                    q.period = Y(n);
                    q.anchor = Y.head(n);
                    q.section_normal = f.rhs(q.anchor).normalized();
                    q.amplitude = orbit_amplitude(f, fr.path);
                    q.residual = r.norm();
                    q.newton_iterations = it;
                    branch.push_back(q);
                    ok = true;
                    break;
                }
                const double dc = 1e-6;
                const Vec dphi = (flow_only(build_s2(p, c0 + dc), Y.head(n), Y(n), o.orbit.integration_tol) -
                                  flow_only(build_s2(p, c0 - dc), Y.head(n), Y(n), o.orbit.integration_tol)) /
                                 (2.0 * dc);
                Mat J = Mat::Zero(n + 2, n + 2);
                J.topLeftCorner(n, n) = fr.M - Mat::Identity(n, n);
                J.block(0, n, n, 1) = f.rhs(fr.phi);
                J.block(0, n + 1, n, 1) = dphi;
                J.block(n, 0, 1, n) = fhat.transpose();
                J.row(n + 1) = t.transpose();
                Vec rhs(n + 2);
                rhs << -r, -phase, -arc;
                const Vec d = J.fullPivLu().solve(rhs);
                if (!d.allFinite()) break;
                Y += d;
                if (!(Y(n) > 0.0)) break;
            }
            if (!ok) h *= 0.5;
        }
        if (!ok) break;
        h = std::min(o.max_step, 1.5 * h);
    }
    return branch;
}

FloquetResult floquet_multipliers(const PeriodicOrbit& orb, const ModelParams& p,
                                  const OrbitOptions& o) {
    const ReducedVectorField f = build_s2(p, orb.c0);
    const FlowResult fr = flow_with_variational(f, orb.anchor, orb.period, o.integration_tol);
    Eigen::JacobiSVD<Mat> svd(fr.M);
    const auto& sv = svd.singularValues();
    FloquetResult res;
    res.condition = sv(0) / sv(sv.size() - 1);
    if (!(res.condition <= 1e12)) fail("MonodromyIllConditioned", "condition number above 1e12");
    Eigen::EigenSolver<Mat> es(fr.M, false);
    for (int i = 0; i < es.eigenvalues().size(); ++i) res.multipliers.push_back(es.eigenvalues()(i));
    std::sort(res.multipliers.begin(), res.multipliers.end(),
              [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    std::size_t k = 0;
    for (std::size_t i = 1; i < res.multipliers.size(); ++i)
        if (std::abs(res.multipliers[i] - 1.0) < std::abs(res.multipliers[k] - 1.0)) k = i;
    res.trivial = res.multipliers[k];
    for (std::size_t i = 0; i < res.multipliers.size(); ++i)
        if (i != k) res.nontrivial.push_back(res.multipliers[i]);
    res.determinant = fr.M.determinant();
    res.liouville = std::exp(fr.trace_integral);
    return res;
}

BifurcationPoint find_torus_bifurcation(const ModelParams& p, double lo, double hi,
                                        const OrbitOptions& o) {
    BifurcationPoint bp;
    bp.kind = BifurcationKind::Torus;
    std::vector<cplx> critical;
    auto g = [&](double c0) {
        ++bp.evaluations;
        const PeriodicOrbit orb = continue_periodic_orbit(p, c0, rotating_wave_seed(p, c0), o);
        const FloquetResult fl = floquet_multipliers(orb, p, o);
        critical = {fl.nontrivial[0]};
        for (std::size_t i = 1; i < fl.nontrivial.size(); ++i)
            if (std::abs(std::abs(fl.nontrivial[i]) - std::abs(fl.nontrivial[0])) < 1e-8)
                critical.push_back(fl.nontrivial[i]);
        return std::abs(fl.nontrivial[0]) - 1.0;
    };
    double glo = g(lo);
    const double ghi = g(hi);
    if (!(glo * ghi < 0.0)) fail("NoSignChange", "max nontrivial |mu| - 1 does not change sign");
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) lo = mid, glo = gm;
        else hi = mid;
    }
    bp.c0 = 0.5 * (lo + hi);
    bp.residual = std::abs(g(bp.c0));
    bp.certificate = critical;
    if (std::abs(critical[0].imag()) < 1e-6)
        fail("FoldOrFlip", "critical multiplier is real");
    return bp;
}

}  // namespace modfront
