#pragma once

#include <Eigen/Dense>

#include "beamball/types.hpp"

namespace beamball {

// Linear model near the upright equilibrium, in state order
// x = (theta, phi, dtheta, dphi):
//
//   D qdd + diag(cv+f, 0) qd - E q = (cu u, 0)^T
//   xdot = A x + b u,   A = [0 I; D^-1 E  D^-1 diag(-(cv+f), 0)],
//   b = (0, 0, D^-1 (cu, 0)^T).
struct LinearModel {
    Eigen::Matrix2d D;  // generalized mass matrix (row 2 scaled by 1/m2)
    Eigen::Matrix2d E;  // stiffness matrix
    Eigen::Matrix4d A;
    Eigen::Vector4d b;
};

// Closed-form D and E for the selected variant.
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> build_DE(const PlantParams& p);

// Assembles the full state-space pair. Throws std::runtime_error if D is
// singular.
LinearModel build_state_space(const PlantParams& p);

// Right-hand side of the linear model, xdot = A x + b u, as a StateDeriv.
StateDeriv linear_rhs(const LinearModel& lm, const State& x, double u);

}  // namespace beamball
