#include "beamball/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace beamball {

void SimSettings::validate() const {
    if (!(h > 0)) throw std::invalid_argument("h must be > 0");
    if (!(t_max > h)) throw std::invalid_argument("t_max must be > h");
    if (!(hold >= 0)) throw std::invalid_argument("hold must be >= 0");
    if (!(eps_conv > 0)) throw std::invalid_argument("eps_conv must be > 0");
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Converged: return "Converged";
        case Outcome::Diverged: return "Diverged";
        case Outcome::ContactLost: return "ContactLost";
        case Outcome::TimedOut: return "TimedOut";
    }
    return "?";
}

double bisect_zero(const std::function<double(double)>& f, double lo,
                   double hi, double tol) {
    double flo = f(lo);
    if (!(flo > 0)) return lo;
    if (f(hi) > 0) throw std::invalid_argument("bisect_zero: no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at double resolution
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<Outcome> OutcomeDetector::step(const State& x, double F,
                                             double h) {
    if (!x.finite()) return Outcome::Diverged;
    if (F <= 0.0) return Outcome::ContactLost;
    if (std::abs(x.theta) > M_PI / 2 || x.max_abs() > 1e3)
        return Outcome::Diverged;
    if (x.max_abs() < s_.eps_conv) {
        held_ += h;
        if (held_ >= s_.hold) return Outcome::Converged;
    } else {
        held_ = 0;
    }
    return std::nullopt;
}

namespace {

// Both reaction-force formulas need only the theta acceleration.
double force_from_acc(const PlantParams& p, const State& x, double ddtheta) {
    if (p.variant == Variant::Straight)
        return p.m2 * (p.g * std::cos(x.theta) -
                       (p.l + p.r) * x.dtheta * x.dtheta -
                       2.0 * p.r * x.dphi * x.dtheta -
                       p.r * x.phi * ddtheta);
    const double beta = p.r * x.phi / p.R;
    const double dpsi = p.r * x.dphi / p.R;
    return p.m2 * (p.g * std::cos(x.theta + beta) -
                   (p.R + p.r) * (x.dtheta + dpsi) * (x.dtheta + dpsi) +
                   (p.R - p.l) * x.dtheta * x.dtheta * std::cos(beta) -
                   (p.R - p.l) * ddtheta * std::sin(beta));
}

}  // namespace

Trace integrate_closed_loop(const PlantParams& p, const ControlLaw& law,
                            const State& x0, const SimSettings& s,
                            PlantModel model) {
    s.validate();
    LinearModel lm;
    if (model == PlantModel::Linear) lm = build_state_space(p);

    const auto rhs = [&](const State& x, double u) -> StateDeriv {
        return model == PlantModel::Linear ? linear_rhs(lm, x, u)
                                           : dynamics_rhs(p, x, u);
    };
    const auto f = [&](double, const std::array<double, 4>& v) {
        const State x = State::from_array(v);
        return rhs(x, law ? law(x) : 0.0).as_array();
    };

    Trace tr;
    OutcomeDetector detector(s);
    const long n_steps = std::lround(s.t_max / s.h);

    State x = x0;
    double t = 0;

    const auto sample = [&](double tt, const State& xx) {
        const double u = law ? law(xx) : 0.0;
        const StateDeriv d = rhs(xx, u);
        const double F = force_from_acc(p, xx, d.ddtheta);
        const Energies e = mechanical_energy(p, xx);
        return TraceRow{tt, xx.theta, xx.phi, xx.dtheta, xx.dphi, xx.s(p),
                        u, F, e.kinetic, e.potential, e.total()};
    };
    const auto record = [&](const TraceRow& row) {
        if (tr.rows.empty() || row.t > tr.rows.back().t) tr.rows.push_back(row);
    };

    TraceRow row = sample(t, x);
    record(row);
    if (auto o = detector.step(x, row.F, 0.0)) {
        tr.outcome = *o;
        tr.t_end = t;
        tr.final_state = x;
        return tr;
    }

    for (long n = 0; n < n_steps; ++n) {
        const State x_prev = x;
        const double t_prev = t;
        try {
            x = State::from_array(rk4_step(f, t, x.as_array(), s.h));
        } catch (const std::runtime_error& err) {
            tr.outcome = Outcome::Diverged;
            tr.diagnostic = err.what();
            tr.t_end = t;
            tr.final_state = x;
            return tr;
        }
        t = t_prev + s.h;

        if (!x.finite()) {
            tr.outcome = Outcome::Diverged;
            tr.diagnostic = "non-finite state";
            tr.t_end = t;
            tr.final_state = x;
            return tr;
        }

        row = sample(t, x);
        const auto o = detector.step(x, row.F, s.h);
        if ((n + 1) % s.record_every == 0 || o) record(row);

        if (o) {
            tr.outcome = *o;
            tr.t_end = t;
            tr.final_state = x;
            if (*o == Outcome::ContactLost && row.F <= 0.0) {
                // refine the crossing instant inside the bracketing step
                const auto F_at = [&](double tau) {
                    if (tau <= 0) return sample(t_prev, x_prev).F;
                    const State xm = State::from_array(
                        rk4_step(f, t_prev, x_prev.as_array(), tau));
                    const double u = law ? law(xm) : 0.0;
                    return force_from_acc(p, xm, rhs(xm, u).ddtheta);
                };
                if (F_at(0) > 0)
                    tr.t_end = t_prev + bisect_zero(F_at, 0.0, s.h, 1e-9);
            }
            return tr;
        }
    }

    tr.outcome = Outcome::TimedOut;
    tr.t_end = t;
    tr.final_state = x;
    if (tr.rows.empty() || tr.rows.back().t < t) record(sample(t, x));
    return tr;
}

Trace integrate_closed_loop(const PlantParams& p, const SatController* c,
                            const State& x0, const SimSettings& s,
                            PlantModel model) {
    if (!c) return integrate_closed_loop(p, ControlLaw{}, x0, s, model);
    const SatController ctrl = *c;
    return integrate_closed_loop(
        p, [ctrl](const State& x) { return control_output(ctrl, x); }, x0, s,
        model);
}

}  // namespace beamball
