#pragma once

#include <array>
#include <functional>
#include <vector>

#include "modfront/model.hpp"

namespace modfront {

// Bifurcating periodic traveling wave u = eps A e^{ip} + c.c. + eps^2 (h2_u A^2 e^{2ip} + c.c.).
struct WaveSolution {
    double A_star = 0.0;
    double omega0_star = 0.0;
    double cp = 0.0;  // c_u + eps^2 omega0_star
    cplx h2_u;
    cplx h2_v;
    double B = 0.0;
    int newton_iterations = 0;
    double residual = 0.0;
};

struct WaveSample {
    double p = 0.0;
    double u = 0.0;
    double v = 0.0;
};

WaveSolution leading_order(const ModelParams& params);

// -3 - 1/(9+6ic_u) + (-2 gamma1 + i gamma2)/(2 - i(c_u+c_v)).
cplx cubic_coefficient(const ModelParams& params);

cplx second_harmonic_u(const ModelParams& params);
cplx second_harmonic_v(const ModelParams& params);

// Stationary amplitude residual g(A, omega) for a real amplitude A; G1 = Re g, G2 = Im g.
using StationaryResidual = std::function<cplx(double A, double omega)>;

// (alpha0 + B + i omega) A + kappa A^3 with the wave cubic coefficient.
StationaryResidual temporal_residual(const ModelParams& params);

struct NewtonOptions {
    int max_iterations = 50;
    double tolerance = 1e-12;
    double fd_step = 1e-7;
};

// Jacobian of (Re g, Im g) with respect to (A, omega), central differences.
std::array<std::array<double, 2>, 2> residual_jacobian(const StationaryResidual& g, double A,
                                                       double omega, double h = 1e-7);

// Damped Newton on (A, omega), seeded from leading_order. Throws NewtonDiverged.
WaveSolution refine_fixed_point(const ModelParams& params, const StationaryResidual& g,
                                const NewtonOptions& options = {});

std::vector<WaveSample> wave_profile(const WaveSolution& sol, const ModelParams& params,
                                     const std::vector<double>& p_grid);

}  // namespace modfront
