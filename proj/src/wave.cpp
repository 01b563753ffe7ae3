#include "modfront/wave.hpp"

#include <array>
#include <cmath>

#include "modfront/errors.hpp"

namespace modfront {

namespace {
const cplx I(0.0, 1.0);

double residual_norm(const StationaryResidual& g, double A, double w) { return std::abs(g(A, w)); }
}  // namespace

cplx second_harmonic_u(const ModelParams& p) { return I / (9.0 + 6.0 * I * p.cu); }

cplx second_harmonic_v(const ModelParams& p) {
    return (-2.0 * p.gamma1 + I * p.gamma2) / (2.0 - I * (p.cu + p.cv));
}

cplx cubic_coefficient(const ModelParams& p) {
    return -3.0 - 1.0 / (9.0 + 6.0 * I * p.cu) + second_harmonic_v(p);
}

WaveSolution leading_order(const ModelParams& p) {
    const double s = p.B + p.alpha0;
    if (!(s > 0.0)) fail("NoWave", "B + alpha0 must be positive");
    const double q = 7.0 + 3.0 * p.cu * p.cu;
    WaveSolution w;
    w.A_star = std::sqrt((9.0 + 4.0 * p.cu * p.cu) * s / (4.0 * q));
    w.omega0_star = -p.cu * s / (6.0 * q);
    w.cp = p.cu + p.epsilon * p.epsilon * w.omega0_star;
    w.h2_u = second_harmonic_u(p);
    w.h2_v = second_harmonic_v(p);
    w.B = p.B;
    return w;
}

StationaryResidual temporal_residual(const ModelParams& p) {
    const cplx kappa = cubic_coefficient(p);
    const double s = p.alpha0 + p.B;
    return [kappa, s](double A, double w) { return (s + I * w) * A + kappa * A * A * A; };
}

std::array<std::array<double, 2>, 2> residual_jacobian(const StationaryResidual& g, double A,
                                                       double w, double h) {
    const cplx dA = (g(A + h, w) - g(A - h, w)) / (2.0 * h);
    const cplx dw = (g(A, w + h) - g(A, w - h)) / (2.0 * h);
    return {{{dA.real(), dw.real()}, {dA.imag(), dw.imag()}}};
}

WaveSolution refine_fixed_point(const ModelParams& p, const StationaryResidual& g,
                                const NewtonOptions& o) {
    WaveSolution w = leading_order(p);
    double A = w.A_star, om = w.omega0_star;
    double res = residual_norm(g, A, om);
    int it = 0;
    while (res >= o.tolerance) {
        if (it == o.max_iterations)
            fail("NewtonDiverged", "no convergence after " + std::to_string(it) + " iterations");
        ++it;
        const auto J = residual_jacobian(g, A, om, o.fd_step * std::max(1.0, std::abs(A)));
        const cplx r = g(A, om);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) fail("NewtonDiverged", "singular Jacobian");
        const double dA = -(J[1][1] * r.real() - J[0][1] * r.imag()) / det;
        const double dw = -(-J[1][0] * r.real() + J[0][0] * r.imag()) / det;
        double lambda = 1.0;
        double trial = residual_norm(g, A + dA, om + dw);
        while (trial > res && lambda > 1e-6) {
            lambda *= 0.5;
            trial = residual_norm(g, A + lambda * dA, om + lambda * dw);
        }
        if (trial > res) {
            if (res < 1e3 * o.tolerance) break;
            fail("NewtonDiverged", "residual does not decrease");
        }
        A += lambda * dA;
        om += lambda * dw;
        res = trial;
        if (!std::isfinite(A) || !std::isfinite(om)) fail("NewtonDiverged", "non-finite iterate");
    }
    if (A < 0.0) A = -A;
    w.A_star = A;
    w.omega0_star = om;
    w.cp = p.cu + p.epsilon * p.epsilon * om;
    w.newton_iterations = it;
    w.residual = residual_norm(g, A, om);
    return w;
}

std::vector<WaveSample> wave_profile(const WaveSolution& w, const ModelParams& p,
                                     const std::vector<double>& p_grid) {
    const double e = p.epsilon, A = w.A_star;
    std::vector<WaveSample> out;
    out.reserve(p_grid.size());
    for (double ph : p_grid) {
        const cplx e2 = std::exp(2.0 * I * ph);
        WaveSample s;
        s.p = ph;
        s.u = 2.0 * e * A * std::cos(ph) + 2.0 * e * e * std::real(w.h2_u * A * A * e2);
        s.v = e * e * w.B + 2.0 * e * e * std::real(w.h2_v * A * A * e2);
        out.push_back(s);
    }
    return out;
}

}  // namespace modfront
