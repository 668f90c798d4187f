#include "beamball/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "beamball/analysis.hpp"
#include "beamball/config.hpp"
#include "beamball/controller.hpp"
#include "beamball/domains.hpp"
#include "beamball/io.hpp"
#include "beamball/plant.hpp"
#include "beamball/simulate.hpp"

namespace beamball {

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_override;
    std::optional<double> gamma_override;
    bool linear = false;
    std::string variant_override;
};

RunConfig load_config(const CliOptions& opt) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError(0, "cannot open config: " + opt.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig c = parse_config(buf.str());

    if (!opt.variant_override.empty()) {
        if (opt.variant_override == "straight")
            c.plant.variant = Variant::Straight;
        else if (opt.variant_override == "circular")
            c.plant.variant = Variant::Circular;
        else
            throw ConfigError(0, "--variant must be straight or circular");
        c.plant.validate();
    }
    if (opt.gamma_override) c.controller.gamma = opt.gamma_override;
    if (!opt.out_override.empty()) c.outputs.out = opt.out_override;
    return c;
}

ControllerMode effective_mode(const RunConfig& c) {
    if (c.controller.mode != ControllerMode::Auto) return c.controller.mode;
    return c.plant.variant == Variant::Straight ? ControllerMode::Single
                                                : ControllerMode::Dual;
}

std::optional<SatController> build_controller(const RunConfig& c) {
    const ControllerMode mode = effective_mode(c);
    if (mode == ControllerMode::None) return std::nullopt;
    if (!c.controller.gamma)
        throw ConfigError(0, "[controller] gamma is required for this command");
    const ModalData md = modal_decomposition(c.plant);
    if (mode == ControllerMode::Single)
        return make_single(md, *c.controller.gamma, c.plant.u0);
    return make_dual(md, *c.controller.gamma, c.plant.u0);
}

// Writes via `sink` to the configured file, or to stdout if none.
int emit(const RunConfig& c, const std::function<void(std::ostream&)>& sink) {
    if (c.outputs.out.empty()) {
        sink(std::cout);
        return 0;
    }
    std::ofstream os(c.outputs.out);
    if (!os) throw ConfigError(0, "cannot write output: " + c.outputs.out);
    sink(os);
    return 0;
}

std::string fmt(double v) { return format_number(v); }

std::string fmt_complex(const std::complex<double>& z) {
    std::ostringstream os;
    os << fmt(z.real());
    if (z.imag() != 0)
        os << (z.imag() > 0 ? " + " : " - ") << fmt(std::abs(z.imag())) << "i";
    return os.str();
}

int cmd_analyze(const RunConfig& c) {
    const LinearModel lm = build_state_space(c.plant);
    const auto coeffs = characteristic_coefficients(c.plant);
    const Spectrum spec = quartic_roots(coeffs);
    const StabilityClass cls = classify_spectrum(spec);

    std::cout << "variant = "
              << (c.plant.variant == Variant::Straight ? "straight" : "circular")
              << "\n";
    std::cout << "D = [[" << fmt(lm.D(0, 0)) << ", " << fmt(lm.D(0, 1)) << "], ["
              << fmt(lm.D(1, 0)) << ", " << fmt(lm.D(1, 1)) << "]]\n";
    std::cout << "E = [[" << fmt(lm.E(0, 0)) << ", " << fmt(lm.E(0, 1)) << "], ["
              << fmt(lm.E(1, 0)) << ", " << fmt(lm.E(1, 1)) << "]]\n";
    for (int i = 0; i < 5; ++i)
        std::cout << "a" << i << " = " << fmt(coeffs[static_cast<size_t>(i)])
                  << "\n";
    for (int i = 0; i < 4; ++i)
        std::cout << "lambda" << i + 1 << " = "
                  << fmt_complex(spec.roots[static_cast<size_t>(i)]) << "\n";
    std::cout << "n_unstable = " << spec.n_unstable << "\n";
    std::cout << "class = "
              << (cls == StabilityClass::OneUnstable   ? "OneUnstable"
                  : cls == StabilityClass::TwoUnstable ? "TwoUnstable"
                                                       : "Other")
              << "\n";
    std::cout << "controllability_indicator = "
              << fmt(controllability_indicator(c.plant)) << "\n";
    std::cout << "kalman_rank = " << kalman_rank(lm) << "\n";

    if (const auto eq = saturation_equilibria(c.plant)) {
        for (const auto& e : *eq)
            std::cout << "equilibrium u = " << fmt(e.u)
                      << ": theta = " << fmt(e.state.theta)
                      << ", phi = " << fmt(e.state.phi)
                      << ", s = " << fmt(e.state.s(c.plant)) << "\n";
    } else {
        std::cout << "equilibrium: none (saturation torque exceeds gravity "
                     "range)\n";
    }
    return 0;
}

int cmd_simulate(const RunConfig& c, bool linear) {
    const auto ctrl = build_controller(c);
    const Trace tr = integrate_closed_loop(
        c.plant, ctrl ? &*ctrl : nullptr, c.x0, c.sim,
        linear ? PlantModel::Linear : PlantModel::Nonlinear);
    emit(c, [&](std::ostream& os) { write_trace_csv(os, tr); });
    if (!c.outputs.out.empty())
        std::cout << "outcome = " << to_string(tr.outcome)
                  << "\nt_end = " << fmt(tr.t_end)
                  << "\nrows = " << tr.rows.size() << "\n";
    return 0;
}

int cmd_domain(const RunConfig& c) {
    const ModalData md = modal_decomposition(c.plant);
    if (md.unstable.size() == 1) {
        const double bound =
            scalar_q_bound(md.unstable[0].lambda, md.unstable[0].d, c.plant.u0);
        PlanarBoundary segment;
        segment.points = {{-bound, 0.0}, {bound, 0.0}};
        segment.closed = false;
        segment.corners = {segment.points[1], segment.points[0]};
        emit(c, [&](std::ostream& os) { write_boundary_csv(os, segment); });
        if (!c.outputs.out.empty())
            std::cout << "q_bound_y1 = " << fmt(bound) << "\n";
        return 0;
    }
    const PlanarBoundary q = planar_q_boundary(
        {md.unstable[0].lambda, md.unstable[1].lambda},
        {md.unstable[0].d, md.unstable[1].d}, c.plant.u0);
    emit(c, [&](std::ostream& os) { write_boundary_csv(os, q); });
    if (!c.outputs.out.empty())
        std::cout << "corner = (" << fmt(q.corners[0].x()) << ", "
                  << fmt(q.corners[0].y()) << ")\n";
    return 0;
}

int cmd_basin(const RunConfig& c) {
    const auto ctrl = build_controller(c);
    if (!ctrl || ctrl->mode != ControlMode::Dual)
        throw ConfigError(0, "basin requires a dual-mode controller");
    const PlanarBoundary cycle = basin_boundary_backward(*ctrl);
    emit(c, [&](std::ostream& os) { write_boundary_csv(os, cycle); });
    if (!c.outputs.out.empty()) {
        std::cout << "anchor = (" << fmt(cycle.corners[0].x()) << ", "
                  << fmt(cycle.corners[0].y()) << ")\n";
        std::cout << "area = " << fmt(polygon_area(cycle.points)) << "\n";
    }
    return 0;
}

int cmd_search(const RunConfig& c, bool linear) {
    if (!c.search) throw ConfigError(0, "search requires a [search] section");
    const auto ctrl = build_controller(c);
    if (!ctrl) throw ConfigError(0, "search requires a controller");

    RaySpec ray;
    switch (c.search->ray) {
        case RayKind::Theta: ray.direction = State(1, 0, 0, 0); break;
        case RayKind::Phi: ray.direction = State(0, 1, 0, 0); break;
        case RayKind::S: ray.direction = State(0, 1.0 / c.plant.r, 0, 0); break;
        case RayKind::Coupled:
            if (c.plant.variant != Variant::Circular)
                throw ConfigError(0, "coupled ray needs the circular variant");
            ray.direction = State(1, -c.plant.R / c.plant.r, 0, 0);
            break;
    }
    ray.lo = c.search->lo;
    ray.hi = c.search->hi;
    ray.tol = c.search->tol;

    const double bound = max_stabilizable_ic(
        c.plant, *ctrl, ray, c.sim,
        linear ? PlantModel::Linear : PlantModel::Nonlinear);
    std::cout << "bound = " << fmt(bound) << "\n";
    if (c.search->ray == RayKind::S)
        std::cout << "s0 = " << fmt(bound) << "\n";
    if (c.search->ray == RayKind::Coupled)
        std::cout << "theta0 = " << fmt(bound)
                  << "\ns0 = " << fmt(-c.plant.R * bound) << "\n";
    return 0;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args) {
    CLI::App app{"Saturated-feedback stabilization toolkit for straight and "
                 "circular beam-and-ball systems"};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "key = value config file")
            ->required();
        sub->add_option("--out", opt.out_override, "output file path");
        sub->add_option("--gamma", opt.gamma_override, "override [controller] gamma");
        sub->add_flag("--linear", opt.linear, "use the linear plant model");
        sub->add_option("--variant", opt.variant_override,
                        "override plant variant (straight|circular)");
        return sub;
    };

    auto* analyze = add_common(app.add_subcommand(
        "analyze", "print D, E, spectrum, controllability, equilibria"));
    auto* simulate = add_common(
        app.add_subcommand("simulate", "integrate the closed loop, write trace CSV"));
    auto* domain = add_common(app.add_subcommand(
        "domain", "write the controllability-domain boundary CSV"));
    auto* basin = add_common(app.add_subcommand(
        "basin", "write the basin-of-attraction cycle CSV"));
    auto* search = add_common(app.add_subcommand(
        "search", "bisect the maximal stabilizable initial condition"));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig c = load_config(opt);
        if (analyze->parsed()) return cmd_analyze(c);
        if (simulate->parsed()) return cmd_simulate(c, opt.linear);
        if (domain->parsed()) return cmd_domain(c);
        if (basin->parsed()) return cmd_basin(c);
        if (search->parsed()) return cmd_search(c, opt.linear);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace beamball
