#include "beamball/controller.hpp"

#include <stdexcept>

namespace beamball {

namespace {

double clamp_u(double v, double u0) {
    if (v >= u0) return u0;
    if (v <= -u0) return -u0;
    return v;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

SatController make_single(const ModalData& md, double gamma, double u0) {
    if (md.unstable.size() != 1)
        throw std::invalid_argument("single-mode law needs exactly one unstable mode");
    if (!(u0 > 0)) throw std::invalid_argument("u0 must be > 0");
    const Mode& m = md.unstable[0];
    if (!(m.lambda + m.d * gamma < 0))
        throw std::invalid_argument(
            "gamma violates lambda1 + d1*gamma < 0; closed loop stays unstable");
    SatController c;
    c.mode = ControlMode::Single;
    c.w1 = m.w;
    c.lambda1 = m.lambda;
    c.d1 = m.d;
    c.gamma = gamma;
    c.u0 = u0;
    return c;
}

SatController make_dual(const ModalData& md, double gamma, double u0) {
    if (md.unstable.size() != 2)
        throw std::invalid_argument("dual-mode law needs exactly two unstable modes");
    if (!(u0 > 0)) throw std::invalid_argument("u0 must be > 0");
    const Mode& m1 = md.unstable[0];
    const Mode& m2 = md.unstable[1];
    if (m1.lambda == m2.lambda)
        throw std::invalid_argument("repeated unstable eigenvalue");
    if (gamma == 0 ||
        sign_of(gamma) != sign_of(m1.d * m2.d * (m1.lambda - m2.lambda)))
        throw std::invalid_argument(
            "gamma must be nonzero with sign(d1 d2 (lambda1 - lambda2))");
    SatController c;
    c.mode = ControlMode::Dual;
    c.w1 = m1.w;
    c.w2 = m2.w;
    c.lambda1 = m1.lambda;
    c.lambda2 = m2.lambda;
    c.d1 = m1.d;
    c.d2 = m2.d;
    c.k1 = -m2.d / m2.lambda;
    c.k2 = m1.d / m1.lambda;
    c.gamma = gamma;
    c.u0 = u0;
    return c;
}

double modal_y1(const SatController& c, const State& x) {
    const Eigen::Vector4d v(x.theta, x.phi, x.dtheta, x.dphi);
    return c.w1 * v;
}

double modal_y2(const SatController& c, const State& x) {
    const Eigen::Vector4d v(x.theta, x.phi, x.dtheta, x.dphi);
    return c.w2 * v;
}

double switching_sigma(const SatController& c, double y1, double y2) {
    return c.k1 * y1 + c.k2 * y2;
}

double control_output_planar(const SatController& c, double y1, double y2) {
    return clamp_u(c.gamma * switching_sigma(c, y1, y2), c.u0);
}

double control_output(const SatController& c, const State& x) {
    if (c.mode == ControlMode::Single)
        return clamp_u(c.gamma * modal_y1(c, x), c.u0);
    return clamp_u(c.gamma * (c.k1 * modal_y1(c, x) + c.k2 * modal_y2(c, x)),
                   c.u0);
}

}  // namespace beamball
