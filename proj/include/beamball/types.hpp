#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace beamball {

enum class Variant { Straight, Circular };

// Physical constants of one beam-and-ball device. Immutable after
// construction; all plant/analysis operations are pure functions of a
// PlantParams value, so sharing across threads is safe.
struct PlantParams {
    Variant variant = Variant::Straight;
    double m1 = 0;    // mass of beam + holder (kg)
    double m2 = 0;    // mass of ball (kg)
    double r = 0;     // ball radius (m)
    double l = 0;     // holder length OA (m)
    double a = 0;     // distance O to beam center of mass (m)
    double R = 0;     // circular-beam radius (m), unused for Straight
    double rho1 = 0;  // beam radius of inertia about O (m)
    double rho2 = 0;  // ball radius of inertia about its center (m)
    double cu = 0;    // motor torque constant (N·m/V)
    double cv = 0;    // back-EMF torque coefficient (N·m·s)
    double f = 0;     // viscous friction in joint O (N·m·s), additive to cv
    double u0 = 0;    // voltage limit (V)
    double g = 9.81;  // gravity (m/s^2)

    // Effective velocity-proportional torque coefficient.
    double cv_eff() const { return cv + f; }

    // Throws std::invalid_argument on the first violated range.
    // rho2 == 0 is allowed (point-mass ball): it is the degenerate
    // controllability case and must remain representable.
    void validate() const;
};

// Generalized coordinates and velocities (theta, phi, dtheta, dphi).
// theta: beam joint angle (rad), phi: ball rotation angle (rad).
struct State {
    double theta = 0;
    double phi = 0;
    double dtheta = 0;
    double dphi = 0;

    State() = default;
    State(double th, double ph, double dth, double dph)
        : theta(th), phi(ph), dtheta(dth), dphi(dph) {}

    // Ball position along the beam, s = r*phi (both variants).
    double s(const PlantParams& p) const { return p.r * phi; }
    // Arc angle of the ball center on the circular beam, r*phi = R*psi.
    double psi(const PlantParams& p) const { return p.r * phi / p.R; }

    std::array<double, 4> as_array() const { return {theta, phi, dtheta, dphi}; }
    static State from_array(const std::array<double, 4>& v) {
        return State(v[0], v[1], v[2], v[3]);
    }

    State operator-() const { return State(-theta, -phi, -dtheta, -dphi); }

    double max_abs() const {
        return std::max(std::max(std::abs(theta), std::abs(phi)),
                        std::max(std::abs(dtheta), std::abs(dphi)));
    }
    bool finite() const {
        return std::isfinite(theta) && std::isfinite(phi) &&
               std::isfinite(dtheta) && std::isfinite(dphi);
    }
};

// Time derivative of a State; the first two components repeat the
// velocity components of the input state.
struct StateDeriv {
    double dtheta = 0;
    double dphi = 0;
    double ddtheta = 0;
    double ddphi = 0;

    std::array<double, 4> as_array() const { return {dtheta, dphi, ddtheta, ddphi}; }
    StateDeriv operator-() const { return {-dtheta, -dphi, -ddtheta, -ddphi}; }
};

}  // namespace beamball
