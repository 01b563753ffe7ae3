#include "modfront/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fftw3.h>

#include "modfront/errors.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);

// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, series near zero.
void phi_functions(cplx z, cplx& p1, cplx& p2) {
    if (std::abs(z) < 0.5) {
        p1 = 0.0;
        p2 = 0.0;
        cplx term = 1.0;
        double fact1 = 1.0, fact2 = 2.0;
        for (int k = 0; k < 25; ++k) {
            p1 += term / fact1;
            p2 += term / fact2;
            term *= z;
            fact1 *= (k + 2);
            fact2 *= (k + 3);
        }
        return;
    }
    const cplx e = std::exp(z);
    p1 = (e - 1.0) / z;
    p2 = (e - 1.0 - z) / (z * z);
}

double slope(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = static_cast<double>(t.size());
    const double mt = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sty = 0.0, stt = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        sty += (t[i] - mt) * (y[i] - my);
        stt += (t[i] - mt) * (t[i] - mt);
    }
    return sty / stt;
}

}  // namespace

std::vector<double> PdeState::x_grid() const {
    std::vector<double> x(N);
    for (int j = 0; j < N; ++j) x[j] = L * j / N;
    return x;
}

double PdeState::mean_v() const { return std::accumulate(v.begin(), v.end(), 0.0) / N; }

struct PdeSolver::Impl {
    ModelParams p;
    double L, dt;
    int N, M;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> k, mask;
    std::vector<cplx> eu, p1u, p2u, ev, p1v, p2v;
    std::vector<cplx> uh, vh, nu, nv, ua, va, nu2, nv2, tmp;
    std::vector<double> u, v, ux, w;

    Impl(const ModelParams& params, double L_, int N_, double dt_)
        : p(params), L(L_), dt(dt_), N(N_), M(N_ / 2 + 1) {
        rbuf = fftw_alloc_real(N);
        cbuf = fftw_alloc_complex(M);
        fwd = fftw_plan_dft_r2c_1d(N, rbuf, cbuf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(N, cbuf, rbuf, FFTW_ESTIMATE);
        k.resize(M);
        mask.resize(M);
        eu.resize(M), p1u.resize(M), p2u.resize(M), ev.resize(M), p1v.resize(M), p2v.resize(M);
        const double eps2 = p.epsilon * p.epsilon;
        for (int j = 0; j < M; ++j) {
            k[j] = 2.0 * M_PI * j / L;
            mask[j] = (3 * j < N) ? 1.0 : 0.0;
            const double kk = k[j];
            const cplx Lu = -(1.0 - kk * kk) * (1.0 - kk * kk) + eps2 * p.alpha0 - I * p.cu * kk * kk * kk;
            const cplx Lv = -kk * kk + I * p.cv * kk;
            eu[j] = std::exp(Lu * dt);
            ev[j] = std::exp(Lv * dt);
            phi_functions(Lu * dt, p1u[j], p2u[j]);
            phi_functions(Lv * dt, p1v[j], p2v[j]);
        }
        for (auto* vec : {&uh, &vh, &nu, &nv, &ua, &va, &nu2, &nv2, &tmp}) vec->resize(M);
        for (auto* vec : {&u, &v, &ux, &w}) vec->resize(N);
    }

    ~Impl() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }

    void to_spec(const std::vector<double>& in, std::vector<cplx>& out) {
        std::copy(in.begin(), in.end(), rbuf);
        fftw_execute(fwd);
        for (int j = 0; j < M; ++j) out[j] = {cbuf[j][0], cbuf[j][1]};
    }

    void to_phys(const std::vector<cplx>& in, std::vector<double>& out) {
        for (int j = 0; j < M; ++j) {
            cbuf[j][0] = in[j].real();
            cbuf[j][1] = in[j].imag();
        }
        fftw_execute(bwd);
        for (int n = 0; n < N; ++n) out[n] = rbuf[n] / N;
    }

    void nonlinear(const std::vector<cplx>& uh_, const std::vector<cplx>& vh_, std::vector<cplx>& nu_,
                   std::vector<cplx>& nv_) {
        for (int j = 0; j < M; ++j) tmp[j] = uh_[j] * mask[j];
        to_phys(tmp, u);
        for (int j = 0; j < M; ++j) tmp[j] = I * k[j] * uh_[j] * mask[j];
        to_phys(tmp, ux);
        for (int j = 0; j < M; ++j) tmp[j] = vh_[j] * mask[j];
        to_phys(tmp, v);
        for (int n = 0; n < N; ++n) w[n] = u[n] * v[n] + u[n] * ux[n] - u[n] * u[n] * u[n];
        to_spec(w, nu_);
        for (int n = 0; n < N; ++n) w[n] = u[n] * u[n];
        to_spec(w, nv_);
        for (int j = 0; j < M; ++j) {
            nu_[j] *= mask[j];
            nv_[j] *= (-p.gamma1 * k[j] * k[j] + I * p.gamma2 * k[j]) * mask[j];
        }
    }

    void step_once() {
        nonlinear(uh, vh, nu, nv);
        for (int j = 0; j < M; ++j) {
            ua[j] = eu[j] * uh[j] + dt * p1u[j] * nu[j];
            va[j] = ev[j] * vh[j] + dt * p1v[j] * nv[j];
        }
        nonlinear(ua, va, nu2, nv2);
        for (int j = 0; j < M; ++j) {
            uh[j] = ua[j] + dt * p2u[j] * (nu2[j] - nu[j]);
            vh[j] = va[j] + dt * p2v[j] * (nv2[j] - nv[j]);
        }
    }
};

PdeSolver::PdeSolver(const ModelParams& params, double L, int N, double dt) {
    if (N < 8 || (N & (N - 1)) != 0) fail("ConfigError", "N must be a power of two");
    if (!(L > 0.0) || !(dt > 0.0)) fail("ConfigError", "L and dt must be positive");
    impl_ = std::make_unique<Impl>(params, L, N, dt);
}

PdeSolver::~PdeSolver() = default;

double PdeSolver::dt() const { return impl_->dt; }

void PdeSolver::advance(PdeState& s, int steps) {
    Impl& m = *impl_;
    if (s.N != m.N || static_cast<int>(s.u.size()) != m.N || static_cast<int>(s.v.size()) != m.N ||
        std::abs(s.L - m.L) > 1e-12 * m.L)
        fail("ConfigError", "state does not match the solver grid");
    m.to_spec(s.u, m.uh);
    m.to_spec(s.v, m.vh);
    for (int i = 0; i < steps; ++i) m.step_once();
    m.to_phys(m.uh, s.u);
    m.to_phys(m.vh, s.v);
    s.t += steps * m.dt;
    for (int n = 0; n < m.N; ++n)
        if (!std::isfinite(s.u[n]) || !std::isfinite(s.v[n]))
            fail("NaNDetected", "non-finite value at t = " + std::to_string(s.t));
}

PdeState step(const PdeState& state, double dt, const ModelParams& params) {
    PdeSolver solver(params, state.L, state.N, dt);
    PdeState out = state;
    solver.advance(out, 1);
    return out;
}

PdeState initial_state_from_front(const FrontProfile& f, double L, int N, double x_front,
                                  double w) {
    PdeState s;
    s.L = L;
    s.N = N;
    std::vector<double> xs(N);
    for (int j = 0; j < N; ++j) xs[j] = L * j / N - x_front;
    const auto smp = physical_snapshot(f, 0.0, xs);
    s.u.resize(N);
    s.v.resize(N);
    for (int j = 0; j < N; ++j) {
        const double x = L * j / N;
        const double win = 0.5 * (std::tanh((x - 0.05 * L) / w) - std::tanh((x - 0.95 * L) / w));
        s.u[j] = win * smp[j].u;
        s.v[j] = win * smp[j].v;
    }
    return s;
}

std::vector<std::complex<double>> demodulate(const PdeState& s, double carrier, double hw) {
    const int N = s.N;
    fftw_complex* in = fftw_alloc_complex(N);
    fftw_complex* out = fftw_alloc_complex(N);
    fftw_plan fw = fftw_plan_dft_1d(N, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bw = fftw_plan_dft_1d(N, out, in, FFTW_BACKWARD, FFTW_ESTIMATE);
    for (int n = 0; n < N; ++n) {
        in[n][0] = s.u[n];
        in[n][1] = 0.0;
    }
    fftw_execute(fw);
    for (int j = 0; j < N; ++j) {
        const double kk = 2.0 * M_PI * j / s.L;
        const bool keep = j < N / 2 && std::abs(kk - carrier) < hw;
        const double g = keep ? 2.0 / N : 0.0;
        out[j][0] *= g;
        out[j][1] *= g;
    }
    fftw_execute(bw);
    std::vector<std::complex<double>> Z(N);
    for (int n = 0; n < N; ++n) Z[n] = {in[n][0], in[n][1]};
    fftw_destroy_plan(fw);
    fftw_destroy_plan(bw);
    fftw_free(in);
    fftw_free(out);
    return Z;
}

namespace {

std::vector<double> envelope(const PdeState& s, const MeasureOptions& o) {
    const auto Z = demodulate(s, o.carrier, o.half_width);
    std::vector<double> e(Z.size());
    for (std::size_t i = 0; i < Z.size(); ++i) e[i] = std::abs(Z[i]);
    return e;
}

double estimate_plateau(const std::vector<double>& e) {
    const double mx = *std::max_element(e.begin(), e.end());
    if (!(mx > 0.0)) return 0.0;
    std::vector<double> top;
    for (double x : e)
        if (x > 0.5 * mx) top.push_back(x);
    std::nth_element(top.begin(), top.begin() + top.size() / 2, top.end());
    return top[top.size() / 2];
}

struct Crossing {
    double x;
    bool up;
};

std::vector<Crossing> crossings(const std::vector<double>& e, double thr, double L) {
    const int N = static_cast<int>(e.size());
    std::vector<Crossing> c;
    for (int i = 0; i < N; ++i) {
        const double a = e[i] - thr, b = e[(i + 1) % N] - thr;
        if ((a < 0.0) != (b < 0.0)) c.push_back({(i + a / (a - b)) * L / N, a < 0.0});
    }
    return c;
}

double periodic_delta(double a, double b, double L) {
    double d = std::fmod(a - b, L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
    return d;
}

void check_span(const std::vector<PdeState>& h, const MeasureOptions& o, const char* err) {
    if (h.size() < 3 || h.back().t - h.front().t < o.min_span)
        fail(err, "history must span at least " + std::to_string(o.min_span) + " time units");
}

}  // namespace

FrontTrack track_front(const std::vector<PdeState>& h, const MeasureOptions& o) {
    check_span(h, o, "NoFrontDetected");
    FrontTrack tr;
    const double L = h.front().L;
    const auto e0 = envelope(h.front(), o);
    tr.plateau = o.plateau > 0.0 ? o.plateau : estimate_plateau(e0);
    if (!(tr.plateau > 0.0)) fail("NoFrontDetected", "no pattern amplitude");
    const double thr = 0.5 * tr.plateau;
    double pos = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const auto cr = crossings(k == 0 ? e0 : envelope(h[k], o), thr, L);
        const Crossing* best = nullptr;
        double bd = 0.0;
        const double ref = k == 0 ? 0.5 * L : pos;
        for (const Crossing& c : cr) {
            if (k > 0 && c.up != tr.reversed) continue;
            const double d = std::abs(periodic_delta(c.x, ref, L));
            if (!best || d < bd) best = &c, bd = d;
        }
        if (!best) fail("NoFrontDetected", "no half-plateau crossing at t = " + std::to_string(h[k].t));
        if (k == 0) {
            tr.reversed = best->up;
            pos = best->x;
        } else {
            pos += periodic_delta(best->x, pos, L);
        }
        tr.times.push_back(h[k].t);
        tr.positions.push_back(pos);
    }
    const double t_cut = h.front().t + o.discard_fraction * (h.back().t - h.front().t);
    std::vector<double> t, y;
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        if (tr.times[k] >= t_cut) t.push_back(tr.times[k]), y.push_back(tr.positions[k]);
    if (t.size() < 2) fail("NoFrontDetected", "too few samples after the transient");
    tr.speed = slope(t, y);
    return tr;
}

double measure_front_speed(const std::vector<PdeState>& h, const MeasureOptions& o) {
    return track_front(h, o).speed;
}

double measure_phase_speed(const std::vector<PdeState>& h, const MeasureOptions& o) {
    check_span(h, o, "NoPattern");
    const double L = h.front().L;
    const int N = h.front().N;
    const double t_cut = h.front().t + o.discard_fraction * (h.back().t - h.front().t);
    std::vector<std::vector<std::complex<double>>> Z;
    std::vector<double> times;
    for (const PdeState& s : h)
        if (s.t >= t_cut) Z.push_back(demodulate(s, o.carrier, o.half_width)), times.push_back(s.t);
    if (Z.size() < 2) fail("NoPattern", "too few samples after the transient");

    double plateau = o.plateau;
    std::vector<double> e0(N);
    for (int n = 0; n < N; ++n) e0[n] = std::abs(Z.front()[n]);
    if (!(plateau > 0.0)) plateau = estimate_plateau(e0);
    if (!(plateau > 0.0)) fail("NoPattern", "no pattern amplitude");

    std::vector<bool> ok(N, true);
    for (const auto& z : Z) {
        std::vector<double> e(N);
        for (int n = 0; n < N; ++n) e[n] = std::abs(z[n]);
        for (const Crossing& c : crossings(e, 0.5 * plateau, L))
            for (int n = 0; n < N; ++n)
                if (std::abs(periodic_delta(L * n / N, c.x, L)) < o.front_margin) ok[n] = false;
        for (int n = 0; n < N; ++n)
            if (e[n] < o.plateau_fraction * plateau) ok[n] = false;
    }
    double sum = 0.0;
    int count = 0;
    for (int n = 0; n < N; ++n) {
        if (!ok[n]) continue;
        std::vector<double> ph(Z.size());
        ph[0] = std::arg(Z[0][n]);
        for (std::size_t k = 1; k < Z.size(); ++k) {
            double d = std::arg(Z[k][n]) - std::arg(Z[k - 1][n]);
            d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
            ph[k] = ph[k - 1] + d;
        }
        sum += -slope(times, ph);
        ++count;
    }
    if (count == 0) fail("NoPattern", "no plateau region persists through the history");
    return sum / count;
}

}  // namespace modfront
