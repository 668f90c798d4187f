#include "beamball/linearization.hpp"

#include <stdexcept>

namespace beamball {

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> build_DE(const PlantParams& p) {
    Eigen::Matrix2d D, E;
    if (p.variant == Variant::Straight) {
        D << p.m1 * p.rho1 * p.rho1 + p.m2 * (p.r + p.l) * (p.r + p.l),
            p.m2 * p.r * (p.r + p.l),
            p.r * (p.r + p.l), p.r * p.r + p.rho2 * p.rho2;
        E << p.g * (p.m1 * p.a + p.m2 * (p.r + p.l)), p.g * p.m2 * p.r,
            p.g * p.r, 0.0;
    } else {
        const double k = 1.0 + p.r / p.R;
        D << p.m1 * p.rho1 * p.rho1 + p.m2 * (p.r + p.l) * (p.r + p.l),
            p.m2 * p.r * k * (p.r + p.l),
            p.r * k * (p.r + p.l), p.rho2 * p.rho2 + p.r * k * p.r * k;
        E << p.g * (p.m1 * p.a + p.m2 * (p.r + p.l)), p.g * p.m2 * p.r * k,
            p.g * p.r * k, p.g * p.r * k * p.r / p.R;
    }
    return {D, E};
}

LinearModel build_state_space(const PlantParams& p) {
    LinearModel lm;
    std::tie(lm.D, lm.E) = build_DE(p);
    const double det = lm.D.determinant();
    if (det == 0.0 || !std::isfinite(det))
        throw std::runtime_error("singular mass matrix D");

    const Eigen::Matrix2d Dinv = lm.D.inverse();
    Eigen::Matrix2d C;
    C << -p.cv_eff(), 0.0, 0.0, 0.0;

    lm.A.setZero();
    lm.A.topRightCorner<2, 2>().setIdentity();
    lm.A.bottomLeftCorner<2, 2>() = Dinv * lm.E;
    lm.A.bottomRightCorner<2, 2>() = Dinv * C;

    lm.b.setZero();
    lm.b.tail<2>() = Dinv * Eigen::Vector2d(p.cu, 0.0);
    return lm;
}

StateDeriv linear_rhs(const LinearModel& lm, const State& x, double u) {
    const Eigen::Vector4d v(x.theta, x.phi, x.dtheta, x.dphi);
    const Eigen::Vector4d dv = lm.A * v + lm.b * u;
    return StateDeriv{dv[0], dv[1], dv[2], dv[3]};
}

}  // namespace beamball
