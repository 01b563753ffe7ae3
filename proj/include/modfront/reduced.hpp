#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modfront/model.hpp"

namespace modfront {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Real first-order ODE on the center manifold. Complex amplitudes are stored as (Re z, Im z).
struct ReducedVectorField {
    ScenarioTag scenario = ScenarioTag::I;
    std::string form;  // "cartesian", "polar", "slow", "fast"
    int dim = 0;
    std::vector<std::string> labels;
    std::map<std::string, cplx> coeffs;
    std::function<Vec(const Vec&)> rhs;
    std::function<Mat(const Vec&)> jac;
    Vec origin;
    Vec invading;
    std::vector<bool> angular;  // phase coordinates, excluded from norms
    double amplitude = 0.0;     // |A| at the invading state
    double omega0 = 0.0;
    double c = 0.0;

    // Euclidean norm over non-angular coordinates.
    double norm(const Vec& x) const;
    // Distance over non-angular coordinates.
    double distance(const Vec& x, const Vec& y) const;
    // Complex amplitude A encoded in a state.
    cplx amplitude_of(const Vec& x) const;
    // Dynamic conserved-mode value B1 (0 when absent).
    double b1_of(const Vec& x) const;
};

// Named constants of a scenario for the coefficient table.
struct ScenarioCoefficients {
    ScenarioTag tag = ScenarioTag::I;
    double c = 0.0;
    double c0 = 0.0;
    double s = 0.0;  // 3c_u - c
    double omega0 = 0.0;
    double A_star = 0.0;
    double B1_star = 0.0;
    cplx kappa;  // cubic coefficient in the first-order amplitude equation (I, III, IV)
    cplx a, b, c_cub, Delta, delta_plus, delta_minus, a_cub;  // II, V
};

ReducedVectorField build_s1(const ModelParams& params, double c);
ReducedVectorField build_s1_polar(const ModelParams& params, double c);
ReducedVectorField build_s2(const ModelParams& params, double c0);
ReducedVectorField build_s3(const ModelParams& params, double c0);
ReducedVectorField build_s3_polar(const ModelParams& params, double c0);

struct S4System {
    ReducedVectorField full;  // (r, phi, B1) with eps dB1 = ...
    ReducedVectorField slow;  // (r, phi) on C0, eps = 0
    ReducedVectorField fast;  // (r, B1), r frozen
    std::function<double(double)> critical_manifold;
    double gamma2_0 = 0.0;
    double c0 = 0.0;
};

S4System build_s4(const ModelParams& params, double c0, double gamma2_0);
ReducedVectorField build_s5(const ModelParams& params, double c0);

// Builds the field for a scenario in the coordinates used for shooting (polar for I, III, IV).
ReducedVectorField build_for_shooting(const ModelParams& params, const Scenario& scenario);

ScenarioCoefficients scenario_coefficients(const ModelParams& params, const Scenario& scenario);

// d(r')/dr at the slow invading state, exact.
double slow_linearization_at_invading(const S4System& sys);
// Same quantity evaluated at the wave amplitude: -(2 alpha0 + 6 A*^2 gamma2_0/c0)/(3c_u - c).
double slow_linearization_at_invading_approx(const ModelParams& params, double c0, double gamma2_0);
// gamma2_0 > -c0 (1 + 1/(3(9+4c_u^2))).
bool gamma2_condition(const ModelParams& params, double c0, double gamma2_0);

struct SlavedMode {
    ScenarioTag scenario = ScenarioTag::I;
    std::function<double(double)> B_of_A;  // argument |A|^2
};

SlavedMode slaved_B(ScenarioTag scenario, const ModelParams& params, double c);

struct SecondHarmonics {
    cplx hu2;
    cplx hv2;
};

SecondHarmonics second_harmonics(const ModelParams& params, cplx S);

// Central finite-difference Jacobian.
Mat finite_difference_jacobian(const ReducedVectorField& f, const Vec& x, double h = 1e-6);

}  // namespace modfront
