#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "beamball/controller.hpp"
#include "beamball/linearization.hpp"
#include "beamball/plant.hpp"
#include "beamball/types.hpp"

namespace beamball {

struct SimSettings {
    double h = 1e-4;        // step (s)
    double t_max = 60.0;    // horizon (s)
    double eps_conv = 1e-4; // convergence threshold on ||x||_inf
    double hold = 1.0;      // time ||x||_inf must stay below eps_conv (s)
    int record_every = 100; // row decimation

    void validate() const;
};

enum class Outcome { Converged, Diverged, ContactLost, TimedOut };

const char* to_string(Outcome o);

struct TraceRow {
    double t, theta, phi, dtheta, dphi, s, u, F, kinetic, potential, energy;
};

struct Trace {
    std::vector<TraceRow> rows;
    Outcome outcome = Outcome::TimedOut;
    double t_end = 0;
    State final_state;
    std::string diagnostic;
};

// Classical 4-stage Runge-Kutta update; f(t, x) returns dx/dt.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& x,
                               double h) {
    const auto k1 = f(t, x);
    std::array<double, N> xa;
    for (std::size_t i = 0; i < N; ++i) xa[i] = x[i] + 0.5 * h * k1[i];
    const auto k2 = f(t + 0.5 * h, xa);
    for (std::size_t i = 0; i < N; ++i) xa[i] = x[i] + 0.5 * h * k2[i];
    const auto k3 = f(t + 0.5 * h, xa);
    for (std::size_t i = 0; i < N; ++i) xa[i] = x[i] + h * k3[i];
    const auto k4 = f(t + h, xa);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Bisects a sign change of f on [lo, hi] (f(lo) > 0 >= f(hi)) down to
// interval width tol; returns the midpoint of the final bracket.
double bisect_zero(const std::function<double(double)>& f, double lo,
                   double hi, double tol);

// Per-step outcome classification. Divergence when |theta| > pi/2 or
// ||x||_inf > 1e3 or non-finite; contact loss when F <= 0; convergence
// when ||x||_inf < eps_conv sustained for `hold` seconds.
class OutcomeDetector {
  public:
    explicit OutcomeDetector(const SimSettings& s) : s_(s) {}
    std::optional<Outcome> step(const State& x, double F, double h);

  private:
    SimSettings s_;
    double held_ = 0;
};

using ControlLaw = std::function<double(const State&)>;

enum class PlantModel { Nonlinear, Linear };

// Steps the nonlinear (or linear) dynamics under the given control law,
// re-evaluating the law at every RK4 stage. Evaluates the contact force
// at sample times; the contact-loss instant is refined by bisection on
// the bracketing step (to 1e-9 s) and reported in t_end.
Trace integrate_closed_loop(const PlantParams& p, const ControlLaw& law,
                            const State& x0, const SimSettings& s,
                            PlantModel model = PlantModel::Nonlinear);

// Controller overload; null controller means open loop (u = 0).
Trace integrate_closed_loop(const PlantParams& p, const SatController* c,
                            const State& x0, const SimSettings& s,
                            PlantModel model = PlantModel::Nonlinear);

}  // namespace beamball
