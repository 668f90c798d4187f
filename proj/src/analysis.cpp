#include "beamball/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace beamball {

double controllability_indicator(const PlantParams& p) {
    const double r2 = p.r * p.r;
    const double rho22 = p.rho2 * p.rho2;
    if (p.variant == Variant::Straight)
        return r2 * p.g * p.g * ((2.0 * r2 + rho22) * rho22 + r2 * r2);
    return p.R * r2 * (p.R - p.l) + p.R * p.R * rho22 +
           r2 * p.r * (p.R - p.l);
}

Eigen::Matrix4d kalman_matrix(const LinearModel& lm) {
    Eigen::Matrix4d K;
    Eigen::Vector4d v = lm.b;
    for (int i = 0; i < 4; ++i) {
        K.col(i) = v;
        v = lm.A * v;
    }
    return K;
}

int kalman_rank(const LinearModel& lm) {
    // Columns span decades of magnitude; scale each before ranking.
    Eigen::Matrix4d K = kalman_matrix(lm);
    for (int i = 0; i < 4; ++i) {
        const double n = K.col(i).norm();
        if (n > 0) K.col(i) /= n;
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(K);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

std::array<double, 5> characteristic_coefficients(const PlantParams& p) {
    const auto [D, E] = build_DE(p);
    const double cve = p.cv_eff();
    return {
        D.determinant(),
        cve * D(1, 1),
        -D(0, 0) * E(1, 1) - E(0, 0) * D(1, 1) + D(0, 1) * E(1, 0) +
            D(1, 0) * E(0, 1),
        -cve * E(1, 1),
        E.determinant(),
    };
}

std::complex<double> quartic_eval(const std::array<double, 5>& c,
                                  const std::complex<double>& z) {
    std::complex<double> v = c[0];
    for (int i = 1; i < 5; ++i) v = v * z + c[i];
    return v;
}

bool is_real_root(const std::complex<double>& z) {
    return std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z.real()));
}

Spectrum quartic_roots(const std::array<double, 5>& c) {
    if (c[0] == 0.0) throw std::invalid_argument("leading coefficient is zero");

    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 3; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -c[4 - i] / c[0];

    Eigen::EigenSolver<Eigen::Matrix4d> es(comp);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue iteration failed");

    std::array<std::complex<double>, 4> roots;
    for (int i = 0; i < 4; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        // One Newton polish step; skip when the derivative underflows.
        std::complex<double> dp = 4.0 * c[0];
        for (int k = 1; k < 4; ++k) dp = dp * z + double(4 - k) * c[k];
        if (std::abs(dp) > 0) z -= quartic_eval(c, z) / dp;
        roots[i] = z;
    }

    // Snap near-real roots and symmetrize conjugate pairs.
    for (auto& z : roots)
        if (is_real_root(z)) z = {z.real(), 0.0};
    std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    for (int i = 0; i + 1 < 4; ++i) {
        if (roots[i].imag() > 0 &&
            std::abs(roots[i + 1] - std::conj(roots[i])) <
                1e-8 * std::max(1.0, std::abs(roots[i]))) {
            const double re = 0.5 * (roots[i].real() + roots[i + 1].real());
            const double im = 0.5 * (roots[i].imag() - roots[i + 1].imag());
            roots[i] = {re, im};
            roots[i + 1] = {re, -im};
        }
    }

    Spectrum s;
    s.roots = roots;
    s.n_unstable = static_cast<int>(
        std::count_if(roots.begin(), roots.end(),
                      [](const auto& z) { return z.real() > 0.0; }));
    return s;
}

StabilityClass classify_spectrum(const Spectrum& s) {
    if (s.n_unstable == 1) {
        for (const auto& z : s.roots)
            if (z.real() > 0.0 && !is_real_root(z)) return StabilityClass::Other;
        return StabilityClass::OneUnstable;
    }
    if (s.n_unstable == 2) return StabilityClass::TwoUnstable;
    return StabilityClass::Other;
}

ModalData modal_decomposition(const LinearModel& lm, const Spectrum& s) {
    if (kalman_rank(lm) < 4)
        throw std::runtime_error("linear model is not Kalman controllable");

    std::vector<double> lams;
    for (const auto& z : s.roots) {
        if (z.real() <= 0.0) continue;
        if (!is_real_root(z))
            throw std::runtime_error("complex unstable eigenvalue unsupported");
        lams.push_back(z.real());
    }
    for (size_t i = 0; i + 1 < lams.size(); ++i)
        if (std::abs(lams[i] - lams[i + 1]) <
            1e-8 * std::max(1.0, std::abs(lams[i])))
            throw std::runtime_error("repeated unstable eigenvalue");

    ModalData md;
    for (double lam : lams) {
        // Left eigenvector: kernel of (A^T - lam I).
        Eigen::Matrix4d M = lm.A.transpose() - lam * Eigen::Matrix4d::Identity();
        Eigen::FullPivLU<Eigen::Matrix4d> lu(M);
        lu.setThreshold(1e-8);
        if (lu.dimensionOfKernel() != 1)
            throw std::runtime_error("defective unstable eigenvalue");
        Eigen::Vector4d w = lu.kernel().col(0).normalized();
        const double d = w.dot(lm.b);
        if (std::abs(d) < 1e-12)
            throw std::runtime_error(
                "w . b vanishes for an unstable mode (uncontrollable)");
        w /= d;  // normalization convention: d_i = 1
        md.unstable.push_back(Mode{lam, w.transpose(), 1.0});
    }

    Eigen::EigenSolver<Eigen::Matrix4d> es(lm.A);
    md.eigenvalues = es.eigenvalues();
    md.eigenvectors = es.eigenvectors();
    return md;
}

ModalData modal_decomposition(const PlantParams& p) {
    const LinearModel lm = build_state_space(p);
    return modal_decomposition(lm, quartic_roots(characteristic_coefficients(p)));
}

}  // namespace beamball
