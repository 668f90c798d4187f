#pragma once

#include <array>
#include <optional>

#include "beamball/types.hpp"

namespace beamball {

// Kinetic and potential energy, returned separately.
struct Energies {
    double kinetic = 0;
    double potential = 0;
    double total() const { return kinetic + potential; }
};

// Equilibrium state held by a constant saturated control u = +u0 or -u0.
struct SaturationEquilibrium {
    State state;
    double u = 0;  // the constant control that holds it
};

// Net torque delivered to the joint: cu*u - (cv+f)*dtheta.
// Throws std::invalid_argument if |u| exceeds u0 (controller bug).
double motor_torque(const PlantParams& p, double dtheta, double u);

// Exact nonlinear dynamics. Accelerations come from a 2x2 linear solve
// of the two Lagrange equations with partial pivoting.
// Throws std::invalid_argument on |u| > u0, std::runtime_error if the
// generalized mass matrix is singular.
StateDeriv dynamics_rhs(const PlantParams& p, const State& x, double u);

// Kinetic energy K >= 0 and potential energy Pi at the given state.
Energies mechanical_energy(const PlantParams& p, const State& x);

// Normal reaction force between ball and beam, using accelerations from
// dynamics_rhs at (x, u). F <= 0 means the ball lifts off.
double contact_force(const PlantParams& p, const State& x, double u);

// The two equilibria held by u = +u0 and u = -u0. For the circular
// variant these exist only while |cu*u0 / (g*(m1*a + m2*(l-R)))| <= 1;
// otherwise returns nullopt.
std::optional<std::array<SaturationEquilibrium, 2>> saturation_equilibria(
    const PlantParams& p);

namespace detail {
// Solves [[a,b],[c,d]] (x0,x1)^T = (e,f)^T with row pivoting.
// Throws std::runtime_error on a singular matrix.
std::array<double, 2> solve2x2(double a, double b, double c, double d,
                               double e, double f);
}  // namespace detail

}  // namespace beamball
