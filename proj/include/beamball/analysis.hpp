#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "beamball/linearization.hpp"
#include "beamball/types.hpp"

namespace beamball {

// Roots of the characteristic quartic, sorted by descending real part
// (descending imaginary part on ties). Complex roots come in conjugate
// pairs; n_unstable counts strictly positive real parts.
struct Spectrum {
    std::array<std::complex<double>, 4> roots;
    int n_unstable = 0;
};

enum class StabilityClass { OneUnstable, TwoUnstable, Other };

// One unstable real mode: left eigenvector w with w A = lambda w,
// scaled so that d = w . b = 1.
struct Mode {
    double lambda = 0;
    Eigen::RowVector4d w;
    double d = 1.0;
};

// Modal data of the unstable subsystem plus the full eigen-basis kept
// for diagnostics only.
struct ModalData {
    std::vector<Mode> unstable;  // sorted by descending lambda
    Eigen::Vector4cd eigenvalues;
    Eigen::Matrix4cd eigenvectors;  // right eigenvectors, column-wise
};

// Closed-form controllability indicator; nonzero iff the Kalman test
// passes. Straight: r^2 g^2 [(2r^2+rho2^2) rho2^2 + r^4].
// Circular: R r^2 (R-l) + R^2 rho2^2 + r^3 (R-l).
double controllability_indicator(const PlantParams& p);

// Kalman controllability matrix [b, Ab, A^2 b, A^3 b] and its rank.
Eigen::Matrix4d kalman_matrix(const LinearModel& lm);
int kalman_rank(const LinearModel& lm);

// Coefficients (a0..a4) of det(D s^2 + diag(cv+f,0) s - E), i.e. the
// characteristic polynomial of A multiplied by det D.
std::array<double, 5> characteristic_coefficients(const PlantParams& p);

// Companion-matrix QR eigenvalues polished by one Newton step.
// Throws std::invalid_argument if a0 == 0.
Spectrum quartic_roots(const std::array<double, 5>& coeffs);

// An eigenvalue counts as real when |Im| < 1e-8 * max(1, |Re|).
bool is_real_root(const std::complex<double>& z);

// OneUnstable requires the single RHP root to be real.
StabilityClass classify_spectrum(const Spectrum& s);

// Left eigenvectors and d-scalars of the unstable modes, normalized to
// d_i = 1. Requires all unstable roots real and simple and the Kalman
// test to pass; throws std::runtime_error otherwise.
ModalData modal_decomposition(const LinearModel& lm, const Spectrum& s);

// Convenience: coefficients -> roots -> modes for a parameter set.
ModalData modal_decomposition(const PlantParams& p);

// Polynomial value at z for coefficients ordered a0 z^4 + ... + a4.
std::complex<double> quartic_eval(const std::array<double, 5>& c,
                                  const std::complex<double>& z);

}  // namespace beamball
