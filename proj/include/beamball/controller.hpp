#pragma once

#include <Eigen/Dense>

#include "beamball/analysis.hpp"
#include "beamball/types.hpp"

namespace beamball {

enum class ControlMode { Single, Dual };

// Saturated modal feedback law. Immutable after construction; evaluation
// is pure.
//
// Single (one unstable mode):  u = clamp(gamma * w1.x, +-u0)
// Dual (two unstable modes):   u = clamp(gamma * (k1 w1.x + k2 w2.x), +-u0)
// with k1 = -d2/lambda2, k2 = d1/lambda1.
struct SatController {
    ControlMode mode = ControlMode::Single;
    Eigen::RowVector4d w1 = Eigen::RowVector4d::Zero();
    Eigen::RowVector4d w2 = Eigen::RowVector4d::Zero();
    double lambda1 = 0, lambda2 = 0;
    double d1 = 1, d2 = 1;
    double k1 = 0, k2 = 0;  // Dual only
    double gamma = 0;
    double u0 = 0;
};

// Requires exactly one unstable mode and lambda1 + d1*gamma < 0.
// Throws std::invalid_argument otherwise.
SatController make_single(const ModalData& md, double gamma, double u0);

// Requires exactly two distinct real unstable modes, gamma != 0 and
// sign(gamma) == sign(d1 d2 (lambda1 - lambda2)).
SatController make_dual(const ModalData& md, double gamma, double u0);

// Saturated control value at state x; |result| <= u0 always, ties at the
// limits map to the saturated value.
double control_output(const SatController& c, const State& x);

// Unsaturated modal projections y_i = w_i . x.
double modal_y1(const SatController& c, const State& x);
double modal_y2(const SatController& c, const State& x);

// Dual-mode switching function sigma = k1 y1 + k2 y2 in modal coordinates.
double switching_sigma(const SatController& c, double y1, double y2);

// Control value of the planar modal closed loop at (y1, y2) (Dual only).
double control_output_planar(const SatController& c, double y1, double y2);

}  // namespace beamball
