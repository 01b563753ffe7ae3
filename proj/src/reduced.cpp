#include "modfront/reduced.hpp"

#include <cmath>

#include "modfront/errors.hpp"
#include "modfront/wave.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);
constexpr double kDegenerate = 1e-12;

cplx zof(const Vec& x, int i) { return {x(i), x(i + 1)}; }

void put(Vec& y, int i, cplx v) {
    y(i) = v.real();
    y(i + 1) = v.imag();
}

// Adds the real 2x2 block of a map with complex derivatives dg/dz and dg/dzbar.
void put_block(Mat& J, int row, int col, cplx gz, cplx gzb) {
    const cplx dx = gz + gzb, dy = I * (gz - gzb);
    J(row, col) += dx.real();
    J(row, col + 1) += dy.real();
    J(row + 1, col) += dx.imag();
    J(row + 1, col + 1) += dy.imag();
}

void put_column(Mat& J, int row, int col, cplx d) {
    J(row, col) += d.real();
    J(row + 1, col) += d.imag();
}

cplx h2v(const ModelParams& p) { return second_harmonic_v(p); }

// -3 - 1/(9+6ic_u) - 2 gamma1/(2 - i(c_u+c_v)), shared by III, IV and V.
cplx kappa_dynamic(const ModelParams& p) {
    return -3.0 - 1.0 / (9.0 + 6.0 * I * p.cu) - 2.0 * p.gamma1 / (2.0 - I * (p.cu + p.cv));
}

struct Invading {
    double A = 0.0;
    double omega = 0.0;
};

Invading polish(const ModelParams& p, const StationaryResidual& g) {
    const WaveSolution w = refine_fixed_point(p, g);
    return {w.A_star, w.omega0_star};
}

void require_speed(double s, double cpcv) {
    if (std::abs(s) < kDegenerate) fail("DegenerateScenario", "3c_u - c vanishes");
    if (std::abs(cpcv) < kDegenerate) fail("DegenerateScenario", "c + c_v vanishes");
}

std::vector<bool> mask(int dim, int angular_index = -1) {
    std::vector<bool> m(dim, false);
    if (angular_index >= 0) m[angular_index] = true;
    return m;
}

Vec vec(std::initializer_list<double> v) {
    Vec x(static_cast<int>(v.size()));
    int i = 0;
    for (double d : v) x(i++) = d;
    return x;
}

}  // namespace

double ReducedVectorField::norm(const Vec& x) const {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i)
        if (i >= static_cast<int>(angular.size()) || !angular[i]) s += x(i) * x(i);
    return std::sqrt(s);
}

double ReducedVectorField::distance(const Vec& x, const Vec& y) const { return norm(x - y); }

cplx ReducedVectorField::amplitude_of(const Vec& x) const {
    if (form == "polar" || form == "slow") return std::polar(x(0), x(1));
    if (form == "fast") return {x(0), 0.0};
    return {x(0), x(1)};
}

double ReducedVectorField::b1_of(const Vec& x) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == "B1") return x(static_cast<int>(i));
    return 0.0;
}

ReducedVectorField build_s1(const ModelParams& p, double c) {
    const double s = 3.0 * p.cu - c;
    require_speed(s, c + p.cv);
    const cplx kappa = 2.0 * p.gamma2 / (p.cv + c) - 3.0 - 1.0 / (9.0 + 6.0 * I * p.cu) + h2v(p);
    const double base = p.alpha0 + p.B;
    const Invading inv = polish(p, [=](double A, double w) {
        return (base + I * w) * A + kappa * A * A * A;
    });
    const cplx lam = base + I * inv.omega;

    ReducedVectorField f;
    f.scenario = ScenarioTag::I;
    f.form = "cartesian";
    f.dim = 2;
    f.labels = {"A_r", "A_i"};
    f.coeffs = {{"kappa", kappa}, {"lambda", lam}, {"s", s}};
    f.rhs = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        Vec y(2);
        put(y, 0, (lam * z + kappa * z * std::norm(z)) / s);
        return y;
    };
    f.jac = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        Mat J = Mat::Zero(2, 2);
        put_block(J, 0, 0, (lam + 2.0 * kappa * std::norm(z)) / s, kappa * z * z / s);
        return J;
    };
    f.origin = Vec::Zero(2);
    f.invading = vec({inv.A, 0.0});
    f.angular = mask(2);
    f.amplitude = inv.A;
    f.omega0 = inv.omega;
    f.c = c;
    return f;
}

ReducedVectorField build_s1_polar(const ModelParams& p, double c) {
    ReducedVectorField f = build_s1(p, c);
    const cplx kappa = f.coeffs["kappa"];
    const double s = 3.0 * p.cu - c, base = p.alpha0 + p.B, w = f.omega0;
    f.form = "polar";
    f.labels = {"r", "phi"};
    f.rhs = [=](const Vec& x) {
        const double r = x(0);
        return vec({(base * r + kappa.real() * r * r * r) / s, (w + kappa.imag() * r * r) / s});
    };
    f.jac = [=](const Vec& x) {
        const double r = x(0);
        Mat J = Mat::Zero(2, 2);
        J(0, 0) = (base + 3.0 * kappa.real() * r * r) / s;
        J(1, 0) = 2.0 * kappa.imag() * r / s;
        return J;
    };
    f.origin = Vec::Zero(2);
    f.invading = vec({f.amplitude, 0.0});
    f.angular = mask(2, 1);
    return f;
}

namespace {

struct SecondOrder {
    cplx a, b, c_cub, Delta, dplus, dminus;
};

SecondOrder second_order_coeffs(const ModelParams& p, double c0, cplx lam, cplx a_cub) {
    SecondOrder q;
    const cplx den = 8.0 + 6.0 * I * p.cu;
    q.Delta = std::sqrt(cplx(c0 * c0) - 4.0 * (3.0 * I * p.cu + 4.0) * lam);
    if (std::abs(q.Delta) < kDegenerate) fail("DegenerateScenario", "Delta vanishes");
    q.a = (q.Delta * q.Delta - c0 * c0) / (den * den);
    q.b = -2.0 * c0 / den;
    q.c_cub = -2.0 * a_cub / den;
    q.dplus = (-c0 + q.Delta) / den;
    q.dminus = (-c0 - q.Delta) / den;
    return q;
}

}  // namespace

ReducedVectorField build_s2(const ModelParams& p, double c0) {
    if (c0 == 0.0) fail("DegenerateScenario", "c0 must be nonzero");
    const double c = 3.0 * p.cu + p.epsilon * c0;
    require_speed(1.0, c + p.cv);
    const cplx a_cub =
        2.0 * p.gamma1 / (c + p.cv) - 3.0 - 1.0 / (9.0 + 6.0 * I * p.cu) + h2v(p);
    const double base = p.alpha0 + p.B;
    const Invading inv = polish(p, [=](double A, double w) {
        return (base + I * w) * A + a_cub * A * A * A;
    });
    const SecondOrder q = second_order_coeffs(p, c0, base + I * inv.omega, a_cub);
    const cplx a = q.a, b = q.b, cc = q.c_cub;

    ReducedVectorField f;
    f.scenario = ScenarioTag::II;
    f.form = "cartesian";
    f.dim = 4;
    f.labels = {"A_r", "A_i", "At_r", "At_i"};
    f.coeffs = {{"a", a},           {"b", b},          {"c", cc},          {"a_cub", a_cub},
                {"Delta", q.Delta}, {"delta_plus", q.dplus}, {"delta_minus", q.dminus},
                {"c0", c0}};
    f.rhs = [=](const Vec& x) {
        const cplx z = zof(x, 0), w = zof(x, 2);
        Vec y(4);
        put(y, 0, w);
        put(y, 2, b * w + a * z + cc * z * std::norm(z));
        return y;
    };
    f.jac = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        Mat J = Mat::Zero(4, 4);
        put_block(J, 0, 2, 1.0, 0.0);
        put_block(J, 2, 0, a + 2.0 * cc * std::norm(z), cc * z * z);
        put_block(J, 2, 2, b, 0.0);
        return J;
    };
    f.origin = Vec::Zero(4);
    f.invading = vec({inv.A, 0.0, 0.0, 0.0});
    f.angular = mask(4);
    f.amplitude = inv.A;
    f.omega0 = inv.omega;
    f.c = c;
    return f;
}

ReducedVectorField build_s3(const ModelParams& p, double c0) {
    if (p.gamma2 != 0.0) fail("Gamma2NotZero", "scenario III requires gamma2 = 0");
    if (c0 == 0.0) fail("DegenerateScenario", "c0 must be nonzero");
    const double c = -p.cv + p.epsilon * p.epsilon * c0;
    const double s = 3.0 * p.cu - c;
    require_speed(s, 1.0);
    const cplx kappa = kappa_dynamic(p);
    const double base = p.alpha0 + p.B;
    const double q = 4.0 * p.gamma1 * p.alpha0 / s;  // B1' = -c0 B1 - q |A|^2
    const Invading inv = polish(p, [=](double A, double w) {
        const double b1 = -q * A * A / c0;
        return (base + b1 + I * w) * A + kappa * A * A * A;
    });
    const cplx lam = base + I * inv.omega;

    ReducedVectorField f;
    f.scenario = ScenarioTag::III;
    f.form = "cartesian";
    f.dim = 3;
    f.labels = {"A_r", "A_i", "B1"};
    f.coeffs = {{"kappa", kappa}, {"lambda", lam}, {"s", s}, {"c0", c0}, {"q", q}};
    f.rhs = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        const double b1 = x(2);
        Vec y(3);
        put(y, 0, ((lam + b1) * z + kappa * z * std::norm(z)) / s);
        y(2) = -c0 * b1 - q * std::norm(z);
        return y;
    };
    f.jac = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        const double b1 = x(2);
        Mat J = Mat::Zero(3, 3);
        put_block(J, 0, 0, (lam + b1 + 2.0 * kappa * std::norm(z)) / s, kappa * z * z / s);
        put_column(J, 0, 2, z / s);
        J(2, 0) = -2.0 * q * x(0);
        J(2, 1) = -2.0 * q * x(1);
        J(2, 2) = -c0;
        return J;
    };
    f.origin = Vec::Zero(3);
    f.invading = vec({inv.A, 0.0, -q * inv.A * inv.A / c0});
    f.angular = mask(3);
    f.amplitude = inv.A;
    f.omega0 = inv.omega;
    f.c = c;
    return f;
}

ReducedVectorField build_s3_polar(const ModelParams& p, double c0) {
    ReducedVectorField f = build_s3(p, c0);
    const cplx kappa = f.coeffs["kappa"];
    const double s = f.coeffs["s"].real(), q = f.coeffs["q"].real();
    const double base = p.alpha0 + p.B, w = f.omega0;
    f.form = "polar";
    f.labels = {"r", "phi", "B1"};
    f.rhs = [=](const Vec& x) {
        const double r = x(0), b1 = x(2);
        return vec({((base + b1) * r + kappa.real() * r * r * r) / s,
                    (w + kappa.imag() * r * r) / s, -c0 * b1 - q * r * r});
    };
    f.jac = [=](const Vec& x) {
        const double r = x(0), b1 = x(2);
        Mat J = Mat::Zero(3, 3);
        J(0, 0) = (base + b1 + 3.0 * kappa.real() * r * r) / s;
        J(0, 2) = r / s;
        J(1, 0) = 2.0 * kappa.imag() * r / s;
        J(2, 0) = -2.0 * q * r;
        J(2, 2) = -c0;
        return J;
    };
    f.origin = Vec::Zero(3);
    f.invading = vec({f.amplitude, 0.0, f.invading(2)});
    f.angular = mask(3, 1);
    return f;
}

S4System build_s4(const ModelParams& p, double c0, double g20) {
    if (c0 == 0.0) fail("DegenerateScenario", "c0 must be nonzero");
    const double e = p.epsilon;
    const double c = -p.cv + e * c0;
    const double s = 3.0 * p.cu - c;
    const double s0 = 3.0 * p.cu + p.cv;
    require_speed(s, 1.0);
    require_speed(s0, 1.0);
    const cplx kappa = kappa_dynamic(p);
    const double base = p.alpha0 + p.B;
    const double qe = 2.0 * g20 + 4.0 * e * p.gamma1 * p.alpha0 / s;

    S4System sys;
    sys.gamma2_0 = g20;
    sys.c0 = c0;
    sys.critical_manifold = [=](double r) { return -2.0 * g20 * r * r / c0; };

    // Slow subsystem on C0 at eps = 0.
    {
        const Invading inv = polish(p, [=](double A, double w) {
            return (base - 2.0 * g20 * A * A / c0 + I * w) * A + kappa * A * A * A;
        });
        const double w = inv.omega;
        const double k3 = kappa.real() - 2.0 * g20 / c0;
        ReducedVectorField f;
        f.scenario = ScenarioTag::IV;
        f.form = "slow";
        f.dim = 2;
        f.labels = {"r", "phi"};
        f.coeffs = {{"kappa", kappa}, {"s", s0}, {"c0", c0}, {"gamma2_0", g20}};
        f.rhs = [=](const Vec& x) {
            const double r = x(0);
            return vec({(base * r + k3 * r * r * r) / s0, (w + kappa.imag() * r * r) / s0});
        };
        f.jac = [=](const Vec& x) {
            const double r = x(0);
            Mat J = Mat::Zero(2, 2);
            J(0, 0) = (base + 3.0 * k3 * r * r) / s0;
            J(1, 0) = 2.0 * kappa.imag() * r / s0;
            return J;
        };
        f.origin = Vec::Zero(2);
        f.invading = vec({inv.A, 0.0});
        f.angular = mask(2, 1);
        f.amplitude = inv.A;
        f.omega0 = w;
        f.c = -p.cv;
        sys.slow = f;
    }
    // Fast subsystem: r frozen.
    {
        ReducedVectorField f;
        f.scenario = ScenarioTag::IV;
        f.form = "fast";
        f.dim = 2;
        f.labels = {"r", "B1"};
        f.coeffs = {{"c0", c0}, {"gamma2_0", g20}};
        f.rhs = [=](const Vec& x) { return vec({0.0, -c0 * x(1) - 2.0 * g20 * x(0) * x(0)}); };
        f.jac = [=](const Vec& x) {
            Mat J = Mat::Zero(2, 2);
            J(1, 0) = -4.0 * g20 * x(0);
            J(1, 1) = -c0;
            return J;
        };
        f.origin = Vec::Zero(2);
        f.invading = vec({sys.slow.amplitude, sys.critical_manifold(sys.slow.amplitude)});
        f.angular = mask(2);
        f.amplitude = sys.slow.amplitude;
        f.c = -p.cv;
        sys.fast = f;
    }
    // Full system with explicit eps.
    if (e > 0.0) {
        const Invading inv = polish(p, [=](double A, double w) {
            return (base - qe * A * A / c0 + I * w) * A + kappa * A * A * A;
        });
        const double w = inv.omega;
        ReducedVectorField f;
        f.scenario = ScenarioTag::IV;
        f.form = "polar";
        f.dim = 3;
        f.labels = {"r", "phi", "B1"};
        f.coeffs = {{"kappa", kappa}, {"s", s}, {"c0", c0}, {"gamma2_0", g20}, {"epsilon", e}};
        f.rhs = [=](const Vec& x) {
            const double r = x(0), b1 = x(2);
            return vec({((base + b1) * r + kappa.real() * r * r * r) / s,
                        (w + kappa.imag() * r * r) / s, (-c0 * b1 - qe * r * r) / e});
        };
        f.jac = [=](const Vec& x) {
            const double r = x(0), b1 = x(2);
            Mat J = Mat::Zero(3, 3);
            J(0, 0) = (base + b1 + 3.0 * kappa.real() * r * r) / s;
            J(0, 2) = r / s;
            J(1, 0) = 2.0 * kappa.imag() * r / s;
            J(2, 0) = -2.0 * qe * r / e;
            J(2, 2) = -c0 / e;
            return J;
        };
        f.origin = Vec::Zero(3);
        f.invading = vec({inv.A, 0.0, -qe * inv.A * inv.A / c0});
        f.angular = mask(3, 1);
        f.amplitude = inv.A;
        f.omega0 = w;
        f.c = c;
        sys.full = f;
    }
    return sys;
}

ReducedVectorField build_s5(const ModelParams& p, double c0) {
    if (p.gamma2 != 0.0) fail("Gamma2NotZero", "scenario V requires gamma2 = 0");
    if (std::abs(p.cv + 3.0 * p.cu) > 1e-8) fail("DegenerateScenario", "scenario V requires c_v = -3c_u");
    if (c0 == 0.0) fail("DegenerateScenario", "c0 must be nonzero");
    const double c = 3.0 * p.cu + p.epsilon * c0;
    const cplx a_hat = kappa_dynamic(p);
    const double base = p.alpha0 + p.B;
    const Invading inv = polish(p, [=](double A, double w) {
        return (base + I * w) * A + a_hat * A * A * A;
    });
    const SecondOrder q = second_order_coeffs(p, c0, base + I * inv.omega, a_hat);
    const cplx a = q.a, b = q.b, cc = q.c_cub;
    const cplx den = 8.0 + 6.0 * I * p.cu;
    const double g4 = 4.0 * p.gamma1;

    ReducedVectorField f;
    f.scenario = ScenarioTag::V;
    f.form = "cartesian";
    f.dim = 5;
    f.labels = {"A_r", "A_i", "At_r", "At_i", "B1"};
    f.coeffs = {{"a", a},           {"b", b},          {"c", cc},          {"a_cub", a_hat},
                {"Delta", q.Delta}, {"delta_plus", q.dplus}, {"delta_minus", q.dminus},
                {"c0", c0}};
    f.rhs = [=](const Vec& x) {
        const cplx z = zof(x, 0), w = zof(x, 2);
        const double b1 = x(4);
        Vec y(5);
        put(y, 0, w);
        put(y, 2, b * w + a * z - 2.0 * z * b1 / den + cc * z * std::norm(z));
        y(4) = -c0 * b1 - g4 * std::real(z * std::conj(w));
        return y;
    };
    f.jac = [=](const Vec& x) {
        const cplx z = zof(x, 0);
        const double b1 = x(4);
        Mat J = Mat::Zero(5, 5);
        put_block(J, 0, 2, 1.0, 0.0);
        put_block(J, 2, 0, a - 2.0 * b1 / den + 2.0 * cc * std::norm(z), cc * z * z);
        put_block(J, 2, 2, b, 0.0);
        put_column(J, 2, 4, -2.0 * z / den);
        J(4, 0) = -g4 * x(2);
        J(4, 1) = -g4 * x(3);
        J(4, 2) = -g4 * x(0);
        J(4, 3) = -g4 * x(1);
        J(4, 4) = -c0;
        return J;
    };
    f.origin = Vec::Zero(5);
    f.invading = vec({inv.A, 0.0, 0.0, 0.0, 0.0});
    f.angular = mask(5);
    f.amplitude = inv.A;
    f.omega0 = inv.omega;
    f.c = c;
    return f;
}

ReducedVectorField build_for_shooting(const ModelParams& p, const Scenario& sc) {
    switch (sc.tag) {
        case ScenarioTag::I: return build_s1_polar(p, sc.c);
        case ScenarioTag::II: return build_s2(p, sc.c0);
        case ScenarioTag::III: return build_s3_polar(p, sc.c0);
        case ScenarioTag::IV: {
            if (p.epsilon <= 0.0) return build_s4(p, sc.c0, sc.gamma2_0).slow;
            return build_s4(p, sc.c0, sc.gamma2_0).full;
        }
        case ScenarioTag::V: return build_s5(p, sc.c0);
    }
    fail("DegenerateScenario", "unknown scenario");
}

ScenarioCoefficients scenario_coefficients(const ModelParams& p, const Scenario& sc) {
    ScenarioCoefficients t;
    t.tag = sc.tag;
    t.c0 = sc.c0;
    t.c = front_speed(p, sc);
    t.s = 3.0 * p.cu - t.c;
    const ReducedVectorField f = build_for_shooting(p, sc);
    t.omega0 = f.omega0;
    t.A_star = f.amplitude;
    t.B1_star = f.b1_of(f.invading);
    if (sc.tag == ScenarioTag::II || sc.tag == ScenarioTag::V) {
        const ReducedVectorField g = sc.tag == ScenarioTag::II ? f : build_s5(p, sc.c0);
        t.a = g.coeffs.at("a");
        t.b = g.coeffs.at("b");
        t.c_cub = g.coeffs.at("c");
        t.Delta = g.coeffs.at("Delta");
        t.delta_plus = g.coeffs.at("delta_plus");
        t.delta_minus = g.coeffs.at("delta_minus");
        t.a_cub = g.coeffs.at("a_cub");
    } else {
        t.kappa = f.coeffs.at("kappa");
    }
    return t;
}

double slow_linearization_at_invading(const S4System& sys) {
    return sys.slow.jac(sys.slow.invading)(0, 0);
}

double slow_linearization_at_invading_approx(const ModelParams& p, double c0, double g20) {
    const double A2 = std::pow(leading_order(p).A_star, 2);
    const double s = 3.0 * p.cu - (-p.cv + p.epsilon * c0);
    return -(2.0 * p.alpha0 + 6.0 * A2 * g20 / c0) / s;
}

bool gamma2_condition(const ModelParams& p, double c0, double g20) {
    return g20 > -c0 * (1.0 + 1.0 / (3.0 * (9.0 + 4.0 * p.cu * p.cu)));
}

SlavedMode slaved_B(ScenarioTag tag, const ModelParams& p, double c) {
    if (tag != ScenarioTag::I && tag != ScenarioTag::II)
        fail("NotSlaved", "B1 is a dynamic variable in scenario " + to_string(tag));
    if (std::abs(c + p.cv) < kDegenerate) fail("DegenerateScenario", "c + c_v vanishes");
    const double g = tag == ScenarioTag::I ? p.gamma2 : p.gamma1;
    const double k = 2.0 * g / (c + p.cv);
    return {tag, [k](double A2) { return k * A2; }};
}

SecondHarmonics second_harmonics(const ModelParams& p, cplx S) {
    return {second_harmonic_u(p) * S * S, second_harmonic_v(p) * S * S};
}

Mat finite_difference_jacobian(const ReducedVectorField& f, const Vec& x, double h) {
    Mat J(f.dim, f.dim);
    for (int j = 0; j < f.dim; ++j) {
        Vec xp = x, xm = x;
        const double hj = h * std::max(1.0, std::abs(x(j)));
        xp(j) += hj;
        xm(j) -= hj;
        J.col(j) = (f.rhs(xp) - f.rhs(xm)) / (2.0 * hj);
    }
    return J;
}

}  // namespace modfront
