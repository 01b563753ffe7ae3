#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "modfront/reduced.hpp"

namespace modfront {

enum class Termination { ReachedTmax, ConvergedToPoint, Diverged };
enum class OmegaLimit { Origin, PeriodicOrbit, Quasiperiodic, Divergent };

std::string to_string(Termination t);
std::string to_string(OmegaLimit c);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<Vec> derivatives;
    Termination termination = Termination::ReachedTmax;

    // Cubic Hermite interpolation between stored samples.
    Vec at(double t) const;
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }
};

struct IntegrateOptions {
    double converge_radius = 0.0;  // stop when field norm of the state drops below this
    double diverge_radius = 1e300;
    double sample_dt = 0.0;        // > 0: store uniformly spaced dense-output samples
    double initial_step = 1e-3;
    double max_step = 0.0;         // 0: unlimited
};

// Dormand-Prince 5(4) with dense output; tol is used as absolute and relative tolerance.
Trajectory integrate(const ReducedVectorField& f, const Vec& x0, double t_end, double tol,
                     const IntegrateOptions& options = {});

// Field with reversed time direction.
ReducedVectorField time_reversed(const ReducedVectorField& f);

struct FixedPointSpectrum {
    std::vector<cplx> values;      // sorted by real part, descending
    Eigen::MatrixXcd vectors;      // columns match values
    int unstable = 0;
    int center = 0;
    int stable = 0;
};

FixedPointSpectrum fixed_point_eigens(const ReducedVectorField& f, const Vec& x_fp,
                                      double center_tol = 1e-8);

// Infinitesimal generator of the gauge action A -> A e^{i phi} at x (zero if the field has none).
Vec gauge_direction(const ReducedVectorField& f, const Vec& x);

struct ClassifyOmegaOptions {
    double origin_tol = 1e-6;
    double diverge_factor = 1e3;   // times the invading amplitude
    double spread_tol = 1e-4;
    double tail_fraction = 0.25;
    int max_period_multiple = 8;
    double max_angular_gap = M_PI / 4.0;
    int min_returns = 16;
};

struct OmegaDiagnostics {
    double final_norm = 0.0;
    double tail_min_amplitude = 0.0;
    double tail_max_amplitude = 0.0;
    int section_returns = 0;
    double section_spread = 0.0;
    int period_multiple = 0;
    double angular_gap = 0.0;
    int section_coordinate = -1;
};

struct OmegaLimitReport {
    OmegaLimit cls = OmegaLimit::Origin;
    OmegaDiagnostics diagnostics;
};

// Throws Inconclusive when no class applies.
OmegaLimitReport classify_omega_limit(const Trajectory& traj, const ReducedVectorField& f,
                                      const ClassifyOmegaOptions& options = {});

struct ShootOptions {
    bool reverse = false;       // shoot the time-reversed field and reflect the trajectory
    bool integrate_opposite = false;
    double sample_dt = 0.0;
    double max_step = 0.0;
    ClassifyOmegaOptions classify;
};

struct HeteroclinicResult {
    Trajectory trajectory;
    Vec source;
    Vec direction;
    double unstable_eigenvalue = 0.0;
    OmegaLimit target_class = OmegaLimit::Origin;
    double offset = 0.0;
    OmegaDiagnostics diagnostics;
    std::optional<std::string> opposite_class;
};

HeteroclinicResult shoot_heteroclinic(const ReducedVectorField& f, const Vec& from_fp,
                                      double offset, double t_max, double tol,
                                      const ShootOptions& options = {});

// Closed-form Bernoulli solution of the Scenario I radius equation r' = a r - b r^3.
struct AnalyticS1 {
    double a = 0.0;
    double b = 0.0;
    double r0 = 0.0;  // value at xi = 0
    double A_star = 0.0;
    double operator()(double xi) const;
    double derivative(double xi) const;
};

AnalyticS1 analytic_s1_heteroclinic(const ModelParams& params, double c);

}  // namespace modfront
