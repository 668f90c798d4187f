#include "beamball/domains.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace beamball {

double scalar_q_bound(double lambda1, double d1, double u0) {
    if (!(lambda1 > 0))
        throw std::invalid_argument("scalar_q_bound needs lambda1 > 0");
    if (d1 == 0.0)
        throw std::invalid_argument("scalar_q_bound needs d1 != 0");
    return std::abs(d1) * u0 / lambda1;
}

PlanarBoundary planar_q_boundary(const std::array<double, 2>& lambdas,
                                 const std::array<double, 2>& ds, double u0,
                                 int n_per_branch) {
    if (!(lambdas[0] > 0) || !(lambdas[1] > 0))
        throw std::invalid_argument("planar Q needs two positive eigenvalues");
    if (ds[0] == 0.0 || ds[1] == 0.0)
        throw std::invalid_argument("planar Q needs nonzero d1, d2");
    if (n_per_branch < 3) throw std::invalid_argument("n_per_branch too small");

    const Eigen::Vector2d corner(ds[0] * u0 / lambdas[0],
                                 ds[1] * u0 / lambdas[1]);
    const double lam_min = std::min(lambdas[0], lambdas[1]);
    const double lam_max = std::max(lambdas[0], lambdas[1]);
    const double tau_max = std::log(2e6) / lam_min;  // 2 e^{-lam tau} <= 1e-6
    const double tau_min = 1e-3 / lam_max;

    const auto at = [&](double tau) {
        return Eigen::Vector2d(
            corner[0] * (2.0 * std::exp(-lambdas[0] * tau) - 1.0),
            corner[1] * (2.0 * std::exp(-lambdas[1] * tau) - 1.0));
    };

    std::vector<Eigen::Vector2d> plus;
    plus.reserve(static_cast<size_t>(n_per_branch));
    plus.push_back(corner);  // tau = 0
    const double ratio = std::pow(tau_max / tau_min, 1.0 / (n_per_branch - 3));
    double tau = tau_min;
    for (int i = 0; i < n_per_branch - 2; ++i, tau *= ratio)
        plus.push_back(at(std::min(tau, tau_max)));
    plus.push_back(-corner);  // tau -> infinity

    PlanarBoundary q;
    q.points = plus;
    // minus branch continues from -corner back to +corner
    for (int i = 1; i + 1 < static_cast<int>(plus.size()); ++i)
        q.points.push_back(-plus[static_cast<size_t>(i)]);
    q.closed = true;
    q.corners = {corner, -corner};
    return q;
}

namespace {

// Planar closed-loop matrix of the dual law at the origin.
Eigen::Matrix2d planar_closed_loop(const SatController& c) {
    Eigen::Matrix2d A;
    A << c.lambda1 + c.gamma * c.k1 * c.d1, c.gamma * c.k2 * c.d1,
        c.gamma * c.k1 * c.d2, c.lambda2 + c.gamma * c.k2 * c.d2;
    return A;
}

}  // namespace

PlanarBoundary basin_boundary_backward(const SatController& c,
                                       const BasinSettings& bs) {
    if (c.mode != ControlMode::Dual)
        throw std::invalid_argument("basin boundary needs a dual-mode controller");
    const Eigen::Matrix2d Acl = planar_closed_loop(c);
    if (!(Acl.trace() < 0 && Acl.determinant() > 0))
        throw std::invalid_argument(
            "closed loop is not asymptotically stable at the origin");

    // Start eps0 along the dominant unstable direction of the reversed
    // linearization -Acl (= slowest stable direction of Acl).
    Eigen::Vector2d dir(1.0, 0.0);
    const double tr = -Acl.trace(), det = Acl.determinant();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0) {
        const double mu = 0.5 * (tr + std::sqrt(disc));  // largest reversed eig
        const Eigen::Matrix2d M = -Acl - mu * Eigen::Matrix2d::Identity();
        // kernel direction of a rank-1 2x2 matrix
        if (std::abs(M(0, 0)) + std::abs(M(0, 1)) >
            std::abs(M(1, 0)) + std::abs(M(1, 1)))
            dir = Eigen::Vector2d(-M(0, 1), M(0, 0)).normalized();
        else
            dir = Eigen::Vector2d(-M(1, 1), M(1, 0)).normalized();
    }

    const auto f = [&](double, const std::array<double, 2>& y) {
        const double u = control_output_planar(c, y[0], y[1]);
        return std::array<double, 2>{-c.lambda1 * y[0] - c.d1 * u,
                                     -c.lambda2 * y[1] - c.d2 * u};
    };
    const auto sigma = [&](const std::array<double, 2>& y) {
        return switching_sigma(c, y[0], y[1]);
    };

    std::array<double, 2> y{bs.eps0 * dir[0], bs.eps0 * dir[1]};
    double s_prev = sigma(y);
    Eigen::Vector2d anchor = Eigen::Vector2d::Zero();
    bool have_anchor = false, converged = false;
    long steps_per_lap = 0, lap_steps = 0;

    const auto refine_crossing = [&](const std::array<double, 2>& y0) {
        const auto s_at = [&](double tau) {
            if (tau <= 0) return -sigma(y0);
            return -sigma(rk4_step(f, 0.0, y0, tau));
        };
        const double tau = bisect_zero(s_at, 0.0, bs.h, bs.h * 1e-10);
        return rk4_step(f, 0.0, y0, tau);
    };

    for (int crossing = 0; crossing < bs.max_crossings && !converged;) {
        const std::array<double, 2> y0 = y;
        y = rk4_step(f, 0.0, y, bs.h);
        ++lap_steps;
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
            throw std::runtime_error("backward motion diverged");
        const double s_now = sigma(y);
        if (s_prev < 0 && s_now >= 0) {  // up-crossing
            ++crossing;
            const auto yc = refine_crossing(y0);
            const Eigen::Vector2d pt(yc[0], yc[1]);
            if (have_anchor) {
                const double change = (pt - anchor).norm();
                if (change <= bs.rel_tol * std::max(pt.norm(), 1e-300)) {
                    converged = true;
                    steps_per_lap = lap_steps;
                }
            }
            anchor = pt;
            have_anchor = true;
            lap_steps = 0;
        }
        s_prev = s_now;
    }
    if (!converged)
        throw std::runtime_error(
            "no limit cycle found (gamma too small or misconfiguration)");

    // Record one full lap starting from the converged anchor.
    PlanarBoundary cycle;
    cycle.closed = true;
    cycle.corners = {anchor, -anchor};
    const long stride = std::max(1L, steps_per_lap / bs.n_samples);
    y = {anchor[0], anchor[1]};
    cycle.points.emplace_back(anchor);
    s_prev = sigma(y);
    // step off the section before watching for the return
    for (long n = 0; n < 8 * steps_per_lap + 16; ++n) {
        const double s_before = s_prev;
        y = rk4_step(f, 0.0, y, bs.h);
        s_prev = sigma(y);
        if (n > steps_per_lap / 2 && s_before < 0 && s_prev >= 0) break;
        if (n % stride == 0) cycle.points.emplace_back(y[0], y[1]);
    }
    return cycle;
}

double max_stabilizable_ic(const PlantParams& p, const SatController& c,
                           const RaySpec& ray, const SimSettings& sim,
                           PlantModel model) {
    if (!(ray.tol > 0)) throw std::invalid_argument("ray tol must be > 0");
    const auto converges = [&](double eta) {
        const State x0(eta * ray.direction.theta, eta * ray.direction.phi,
                       eta * ray.direction.dtheta, eta * ray.direction.dphi);
        return integrate_closed_loop(p, &c, x0, sim, model).outcome ==
               Outcome::Converged;
    };
    double lo = ray.lo, hi = ray.hi;
    if (!converges(lo))
        throw std::runtime_error("bracket lower end does not converge");
    if (converges(hi))
        throw std::runtime_error("bracket upper end converges; widen bracket");
    while (hi - lo > ray.tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (converges(mid) ? lo : hi) = mid;
    }
    return lo;
}

int sweep_thread_cap() {
    if (const char* env = std::getenv("BEAMBALL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<double> basin_bound_ladder(const PlantParams& p,
                                       const ModalData& md, double u0,
                                       const std::vector<double>& gammas,
                                       const std::vector<SimSettings>& sims,
                                       const RaySpec& ray, PlantModel model) {
    if (gammas.size() != sims.size())
        throw std::invalid_argument("gammas and sims must have equal size");
    std::vector<double> bounds(gammas.size(), 0.0);
    std::vector<std::exception_ptr> errors(gammas.size());

    std::atomic<size_t> next{0};
    const auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < gammas.size();
             i = next.fetch_add(1)) {
            try {
                const SatController c = make_dual(md, gammas[i], u0);
                bounds[i] = max_stabilizable_ic(p, c, ray, sims[i], model);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int n_threads = std::min<int>(sweep_thread_cap(),
                                        static_cast<int>(gammas.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return bounds;
}

bool point_in_polygon(const Eigen::Vector2d& pt,
                      const std::vector<Eigen::Vector2d>& polygon,
                      double slack) {
    const double scale = 1.0 + slack;
    bool inside = false;
    const size_t n = polygon.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Eigen::Vector2d a = polygon[i] * scale;
        const Eigen::Vector2d b = polygon[j] * scale;
        if ((a.y() > pt.y()) != (b.y() > pt.y())) {
            const double x_int =
                a.x() + (pt.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (pt.x() < x_int) inside = !inside;
        }
    }
    return inside;
}

double polygon_area(const std::vector<Eigen::Vector2d>& polygon) {
    double twice = 0;
    const size_t n = polygon.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        twice += polygon[j].x() * polygon[i].y() -
                 polygon[i].x() * polygon[j].y();
    return 0.5 * std::abs(twice);
}

}  // namespace beamball
