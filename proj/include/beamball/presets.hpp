#pragma once

#include <cmath>

#include "beamball/types.hpp"

namespace beamball {

// Reference data sets used throughout the tests and docs. The inertia
// radii are stored as exact square roots (rho1^2 = 0.0475 / 0.07,
// rho2^2 = 0.02) so the published spectra are reproduced tightly.
inline PlantParams straight_reference(double friction = 0.0) {
    PlantParams p;
    p.variant = Variant::Straight;
    p.m1 = 1.0;
    p.m2 = 0.2;
    p.r = 0.05;
    p.l = 0.2;
    p.a = 0.15;
    p.rho1 = std::sqrt(0.0475);
    p.rho2 = std::sqrt(0.02);
    p.cu = 0.007;
    p.cv = 0.0001;
    p.f = friction;
    p.u0 = 19.0;
    p.g = 9.81;
    return p;
}

inline PlantParams circular_reference() {
    PlantParams p;
    p.variant = Variant::Circular;
    p.m1 = 1.0;
    p.m2 = 0.2;
    p.r = 0.05;
    p.l = 0.2;
    p.a = 0.15;
    p.R = 0.8;
    p.rho1 = std::sqrt(0.07);
    p.rho2 = std::sqrt(0.02);
    p.cu = 0.007;
    p.cv = 0.0001;
    p.f = 0.0;
    p.u0 = 19.0;
    p.g = 9.81;
    return p;
}

}  // namespace beamball
