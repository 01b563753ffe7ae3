#pragma once

#include <vector>

#include "modfront/reduced.hpp"

namespace modfront {

struct SpectrumSample {
    double c0 = 0.0;
    std::vector<cplx> eigenvalues;
};

// Jacobian of the Scenario II field at the origin; for V the B1 = 0 restriction.
Mat origin_jacobian(const ModelParams& params, double c0, ScenarioTag tag = ScenarioTag::II);

// Eigenvalues on a uniform c0 grid, ordered continuously by eigenvector matching.
std::vector<SpectrumSample> origin_spectrum_scan(const ModelParams& params, double c0_lo,
                                                 double c0_hi, int n_samples,
                                                 ScenarioTag tag = ScenarioTag::II);

enum class BifurcationKind { Hopf, Torus };

struct BifurcationPoint {
    BifurcationKind kind = BifurcationKind::Hopf;
    double c0 = 0.0;
    std::vector<cplx> certificate;  // critical eigenvalue or multiplier pair
    double residual = 0.0;          // |Re| (Hopf) or ||mu| - 1| (torus)
    int evaluations = 0;
};

BifurcationPoint find_hopf(const ModelParams& params, double lo, double hi,
                           ScenarioTag tag = ScenarioTag::II);

struct PeriodicOrbit {
    double c0 = 0.0;
    double period = 0.0;
    Vec anchor;
    Vec section_normal;
    double amplitude = 0.0;
    double residual = 0.0;
    int newton_iterations = 0;
};

struct OrbitOptions {
    double integration_tol = 1e-11;
    double newton_tol = 1e-9;
    int max_iterations = 30;
};

// Rotating-wave solution A = R e^{i Omega xi} of the Scenario II field (exact periodic orbit).
PeriodicOrbit rotating_wave_seed(const ModelParams& params, double c0);

// Single-shooting Newton on (anchor, period) with the phase condition <f(seed), x - seed> = 0.
PeriodicOrbit continue_periodic_orbit(const ModelParams& params, double c0,
                                      const PeriodicOrbit& seed, const OrbitOptions& options = {});

struct BranchOptions {
    double initial_step = 1e-2;
    double min_step = 1e-6;
    double max_step = 5e-2;
    int max_points = 400;
    OrbitOptions orbit;
};

// Pseudo-arclength continuation in (anchor, period, c0) from c0_start toward c0_stop.
std::vector<PeriodicOrbit> continue_branch(const ModelParams& params, double c0_start,
                                           double c0_stop, const BranchOptions& options = {});

struct FloquetResult {
    std::vector<cplx> multipliers;  // all, sorted by modulus descending
    cplx trivial;
    std::vector<cplx> nontrivial;
    double determinant = 0.0;
    double liouville = 0.0;  // exp of the integrated trace
    double condition = 0.0;
};

FloquetResult floquet_multipliers(const PeriodicOrbit& orbit, const ModelParams& params,
                                  const OrbitOptions& options = {});

BifurcationPoint find_torus_bifurcation(const ModelParams& params, double lo, double hi,
                                        const OrbitOptions& options = {});

}  // namespace modfront
