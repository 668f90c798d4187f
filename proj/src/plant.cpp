#include "beamball/plant.hpp"

#include <cmath>

namespace beamball {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0))
        throw std::invalid_argument(std::string(name) + " must be > 0");
}

void require_admissible(const PlantParams& p, double u) {
    if (std::abs(u) > p.u0 * (1.0 + 1e-12))
        throw std::invalid_argument("control exceeds voltage limit u0");
}

}  // namespace

void PlantParams::validate() const {
    require_positive(m1, "m1");
    require_positive(m2, "m2");
    require_positive(r, "r");
    require_positive(l, "l");
    require_positive(a, "a");
    require_positive(rho1, "rho1");
    if (rho2 < 0) throw std::invalid_argument("rho2 must be >= 0");
    require_positive(cu, "cu");
    require_positive(cv, "cv");
    if (f < 0) throw std::invalid_argument("f must be >= 0");
    require_positive(u0, "u0");
    require_positive(g, "g");
    if (variant == Variant::Circular) require_positive(R, "R");
}

double motor_torque(const PlantParams& p, double dtheta, double u) {
    require_admissible(p, u);
    return p.cu * u - p.cv_eff() * dtheta;
}

namespace detail {

std::array<double, 2> solve2x2(double a, double b, double c, double d,
                               double e, double f) {
    if (std::abs(a) < std::abs(c)) {
        std::swap(a, c);
        std::swap(b, d);
        std::swap(e, f);
    }
    if (a == 0.0) throw std::runtime_error("singular 2x2 system");
    const double m = c / a;
    const double d2 = d - m * b;
    const double f2 = f - m * e;
    if (d2 == 0.0) throw std::runtime_error("singular 2x2 system");
    const double x1 = f2 / d2;
    const double x0 = (e - b * x1) / a;
    return {x0, x1};
}

}  // namespace detail

StateDeriv dynamics_rhs(const PlantParams& p, const State& x, double u) {
    require_admissible(p, u);
    const double th = x.theta, ph = x.phi, dth = x.dtheta, dph = x.dphi;
    const double torque = p.cu * u - p.cv_eff() * dth;

    double M11, M12, M21, M22, q1, q2;
    if (p.variant == Variant::Straight) {
        M11 = p.m1 * p.rho1 * p.rho1 + p.m2 * (p.r + p.l) * (p.r + p.l) +
              p.m2 * p.r * p.r * ph * ph;
        M12 = p.m2 * p.r * (p.r + p.l);
        M21 = p.r * (p.r + p.l);
        M22 = p.r * p.r + p.rho2 * p.rho2;
        q1 = -2.0 * p.m2 * p.r * p.r * ph * dph * dth +
             p.g * (p.m1 * p.a + p.m2 * (p.r + p.l)) * std::sin(th) +
             p.m2 * p.g * p.r * ph * std::cos(th) + torque;
        q2 = p.r * p.r * ph * dth * dth + p.g * p.r * std::sin(th);
    } else {
        const double k = 1.0 + p.r / p.R;       // (R+r)/R
        const double beta = p.r * ph / p.R;     // ball arc angle psi
        const double cb = std::cos(beta), sb = std::sin(beta);
        const double Rr = p.R + p.r;
        M11 = p.m1 * p.rho1 * p.rho1 +
              p.m2 * (Rr * Rr + (p.l - p.R) * (p.l - p.R) +
                      2.0 * Rr * (p.l - p.R) * cb);
        M12 = p.m2 * p.r * k * (Rr + (p.l - p.R) * cb);
        M21 = p.r * k * (Rr + (p.l - p.R) * cb);
        M22 = p.rho2 * p.rho2 + p.r * k * p.r * k;
        q1 = -p.m2 * p.r * k * (p.R - p.l) * (2.0 * dth + p.r * dph / p.R) *
                 dph * sb +
             p.g * (p.m1 * p.a + p.m2 * (p.l - p.R)) * std::sin(th) +
             p.m2 * p.g * Rr * std::sin(th + beta) + torque;
        q2 = -p.r * k * (p.l - p.R) * dth * dth * sb +
             p.g * p.r * k * std::sin(th + beta);
    }

    const auto acc = detail::solve2x2(M11, M12, M21, M22, q1, q2);
    return StateDeriv{dth, dph, acc[0], acc[1]};
}

Energies mechanical_energy(const PlantParams& p, const State& x) {
    const double th = x.theta, ph = x.phi, dth = x.dtheta, dph = x.dphi;
    Energies e;
    if (p.variant == Variant::Straight) {
        e.kinetic = 0.5 * (p.m1 * p.rho1 * p.rho1 * dth * dth +
                           p.m2 * (p.r * p.r * ph * ph + (p.r + p.l) * (p.r + p.l)) *
                               dth * dth +
                           2.0 * p.m2 * p.r * (p.l + p.r) * dph * dth +
                           p.m2 * (p.r * p.r + p.rho2 * p.rho2) * dph * dph);
        e.potential = p.m1 * p.g * p.a * std::cos(th) +
                      p.m2 * p.g * (-p.r * ph * std::sin(th) +
                                    (p.l + p.r) * std::cos(th));
    } else {
        const double Rr = p.R + p.r;
        const double beta = p.r * ph / p.R;
        const double cb = std::cos(beta);
        const double v = p.r * dph / p.R;  // dpsi
        e.kinetic = 0.5 * ((p.m1 * p.rho1 * p.rho1 +
                            p.m2 * (Rr * Rr + (p.l - p.R) * (p.l - p.R) +
                                    2.0 * Rr * (p.l - p.R) * cb)) *
                               dth * dth +
                           p.m2 * (Rr * Rr +
                                   (p.rho2 * p.R / p.r) * (p.rho2 * p.R / p.r)) *
                               v * v +
                           2.0 * p.m2 * (Rr * Rr + Rr * (p.l - p.R) * cb) * dth * v);
        e.potential = (p.m1 * p.a + p.m2 * (p.l - p.R)) * p.g * std::cos(th) +
                      p.m2 * p.g * Rr * std::cos(th + beta);
    }
    return e;
}

double contact_force(const PlantParams& p, const State& x, double u) {
    const StateDeriv d = dynamics_rhs(p, x, u);
    const double th = x.theta, ph = x.phi, dth = x.dtheta, dph = x.dphi;
    if (p.variant == Variant::Straight) {
        return p.m2 * (p.g * std::cos(th) - (p.l + p.r) * dth * dth -
                       2.0 * p.r * dph * dth - p.r * ph * d.ddtheta);
    }
    const double beta = p.r * ph / p.R;
    const double dpsi = p.r * dph / p.R;
    return p.m2 * (p.g * std::cos(th + beta) -
                   (p.R + p.r) * (dth + dpsi) * (dth + dpsi) +
                   (p.R - p.l) * dth * dth * std::cos(beta) -
                   (p.R - p.l) * d.ddtheta * std::sin(beta));
}

std::optional<std::array<SaturationEquilibrium, 2>> saturation_equilibria(
    const PlantParams& p) {
    if (p.variant == Variant::Straight) {
        // theta = 0; balance m2*g*r*phi against the stalled motor torque.
        const double phi_mag = p.cu * p.u0 / (p.m2 * p.g * p.r);
        SaturationEquilibrium plus{State(0, -phi_mag, 0, 0), +p.u0};
        SaturationEquilibrium minus{State(0, +phi_mag, 0, 0), -p.u0};
        return std::array<SaturationEquilibrium, 2>{plus, minus};
    }
    // Ball at the highest beam point (theta + r*phi/R = 0), beam held
    // tilted by the saturated torque.
    const double denom = p.g * (p.m1 * p.a + p.m2 * (p.l - p.R));
    const double arg = p.cu * p.u0 / denom;
    if (!(std::abs(arg) <= 1.0)) return std::nullopt;
    const double theta_mag = std::asin(arg);
    SaturationEquilibrium plus{
        State(-theta_mag, p.R / p.r * theta_mag, 0, 0), +p.u0};
    SaturationEquilibrium minus{
        State(+theta_mag, -p.R / p.r * theta_mag, 0, 0), -p.u0};
    return std::array<SaturationEquilibrium, 2>{plus, minus};
}

}  // namespace beamball
