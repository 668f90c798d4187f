#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "beamball/analysis.hpp"
#include "beamball/controller.hpp"
#include "beamball/simulate.hpp"
#include "beamball/types.hpp"

namespace beamball {

// Closed polyline in the unstable modal plane (y1, y2), point-symmetric
// about the origin. For the controllability domain Q the corners are the
// equilibria under u = +-u0; for a basin cycle they are the two
// Poincare anchor points on the switching line.
struct PlanarBoundary {
    std::vector<Eigen::Vector2d> points;
    bool closed = true;
    std::array<Eigen::Vector2d, 2> corners;
};

// Controllability bound |y1| < |d1| u0 / lambda1 of the scalar unstable
// mode. Throws std::invalid_argument when lambda1 <= 0 or d1 == 0.
double scalar_q_bound(double lambda1, double d1, double u0);

// Boundary of Q for two real unstable modes: the two parametric branches
// y_i(tau) = +-(d_i u0/lambda_i)(2 e^{-lambda_i tau} - 1), sampled on a
// log-spaced tau grid, truncated within 1e-6 (relative) of the corner
// and closed by symmetry.
PlanarBoundary planar_q_boundary(const std::array<double, 2>& lambdas,
                                 const std::array<double, 2>& ds, double u0,
                                 int n_per_branch = 400);

struct BasinSettings {
    double eps0 = 1e-6;     // start distance from origin
    double h = 1e-4;        // reversed-time RK4 step
    double rel_tol = 1e-6;  // successive Poincare-crossing tolerance
    int max_crossings = 5000;
    int n_samples = 2000;   // points recorded on the returned cycle
};

// Limit cycle of the time-reversed planar closed loop
// (dy_i/dt = -lambda_i y_i - d_i u(y)), which bounds the basin of
// attraction of the dual-mode law. Requires a Dual controller whose
// linear closed loop is asymptotically stable at the origin; throws
// std::runtime_error if no cycle is found within max_crossings.
PlanarBoundary basin_boundary_backward(const SatController& c,
                                       const BasinSettings& bs = {});

// Ray of initial conditions x(eta) = eta * direction; bisection runs on
// eta in [lo, hi] where lo must converge and hi must fail.
struct RaySpec {
    State direction;
    double lo = 0;
    double hi = 1;
    double tol = 1e-4;
};

// Largest certified-stabilizable eta along the ray (the success side of
// the final bracket). Throws std::runtime_error if the bracket does not
// straddle the basin boundary.
double max_stabilizable_ic(const PlantParams& p, const SatController& c,
                           const RaySpec& ray, const SimSettings& sim,
                           PlantModel model = PlantModel::Nonlinear);

// Bisection bounds for a ladder of gains, run concurrently (capped by
// the BEAMBALL_THREADS environment variable). sims must match gammas in
// size; the controller for each entry is make_dual(md, gamma, u0).
std::vector<double> basin_bound_ladder(const PlantParams& p,
                                       const ModalData& md, double u0,
                                       const std::vector<double>& gammas,
                                       const std::vector<SimSettings>& sims,
                                       const RaySpec& ray,
                                       PlantModel model = PlantModel::Nonlinear);

// Even-odd test against the polygon dilated about the origin by
// (1 + slack); suits the origin-symmetric convex boundaries used here.
bool point_in_polygon(const Eigen::Vector2d& pt,
                      const std::vector<Eigen::Vector2d>& polygon,
                      double slack = 1e-9);

// Shoelace area of a closed polyline.
double polygon_area(const std::vector<Eigen::Vector2d>& polygon);

// Max worker threads for sweeps: BEAMBALL_THREADS if set, else
// hardware_concurrency, at least 1.
int sweep_thread_cap();

}  // namespace beamball
