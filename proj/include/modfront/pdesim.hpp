#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "modfront/front.hpp"
#include "modfront/model.hpp"

namespace modfront {

struct PdeState {
    double L = 0.0;
    int N = 0;
    std::vector<double> u;
    std::vector<double> v;
    double t = 0.0;

    std::vector<double> x_grid() const;
    double mean_v() const;
};

// Exponential time differencing (ETDRK2) with an exact linear part and 2/3 dealiasing.
class PdeSolver {
public:
    PdeSolver(const ModelParams& params, double L, int N, double dt);
    ~PdeSolver();
    PdeSolver(const PdeSolver&) = delete;
    PdeSolver& operator=(const PdeSolver&) = delete;

    // Advances in place; throws NaNDetected.
    void advance(PdeState& state, int steps);
    double dt() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

PdeState step(const PdeState& state, double dt, const ModelParams& params);

// Samples a front profile with its centre at x_front and tapers both domain ends with a tanh
// window of the given width so the data is periodic. v starts at the profile's v.
PdeState initial_state_from_front(const FrontProfile& profile, double L, int N, double x_front,
                                  double taper_width);

// Band-limited analytic signal around the carrier: u ~ Re Z, |Z| = envelope.
std::vector<std::complex<double>> demodulate(const PdeState& state, double carrier = 1.0,
                                             double half_width = 0.5);

struct MeasureOptions {
    double carrier = 1.0;
    double half_width = 0.5;
    double plateau = 0.0;           // envelope plateau; <= 0 estimates it from the first snapshot
    double min_span = 50.0;         // required time span of the history
    double discard_fraction = 0.2;  // initial transient excluded from the fit
    double plateau_fraction = 0.8;  // probes must stay above this fraction of the plateau
    double front_margin = 20.0;     // probes keep this distance from the front
};

struct FrontTrack {
    std::vector<double> times;
    std::vector<double> positions;  // unwrapped
    double plateau = 0.0;
    bool reversed = false;  // pattern lies ahead of the front (envelope rises across it)
    double speed = 0.0;
};

// Tracks the half-plateau crossing nearest the domain centre. Throws NoFrontDetected.
FrontTrack track_front(const std::vector<PdeState>& history, const MeasureOptions& options = {});
double measure_front_speed(const std::vector<PdeState>& history, const MeasureOptions& options = {});

// -d(arg Z)/dt averaged over plateau probes. Throws NoPattern.
double measure_phase_speed(const std::vector<PdeState>& history, const MeasureOptions& options = {});

}  // namespace modfront
