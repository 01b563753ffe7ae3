#pragma once

#include <vector>

#include "modfront/dynamics.hpp"

namespace modfront {

// Heteroclinic amplitude data on the reduced (slow) variable s.
struct HeteroclinicData {
    ScenarioTag tag = ScenarioTag::I;
    std::vector<double> s_grid;
    std::vector<cplx> A;
    std::vector<double> B1;  // empty for the slaved scenarios I and II
    double A_star = 0.0;
    double omega0 = 0.0;
};

// Resamples a trajectory uniformly and shifts s so that |A| crosses A_star/2 at s = 0.
HeteroclinicData heteroclinic_data(const ReducedVectorField& field, const Trajectory& traj,
                                   int n_samples = 2001);

struct FrontProfile {
    Scenario scenario;
    std::vector<double> xi_grid;
    std::vector<double> p_grid;
    Mat u;  // rows: xi, columns: p
    Mat v;
    double c = 0.0;
    double cp = 0.0;
    double epsilon = 0.0;
};

struct SnapshotSample {
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;
};

// Leading plus second-harmonic front profile. Data outside its s-range is held at the end values.
// An empty xi_grid inherits the data grid.
FrontProfile reconstruct(const Scenario& scenario, const HeteroclinicData& data,
                         const ModelParams& params, std::vector<double> xi_grid = {},
                         int p_points = 64);

// Samples (U, V)(x - c t, x - c_p t) by bilinear interpolation, periodic in p.
std::vector<SnapshotSample> physical_snapshot(const FrontProfile& profile, double t,
                                              const std::vector<double>& x_grid);

}  // namespace modfront
