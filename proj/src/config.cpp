#include "beamball/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace beamball {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const Entry& e, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size() || !std::isfinite(v))
            throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(e.line, "invalid number for '" + key + "': " + e.value);
    }
}

class SectionReader {
  public:
    SectionReader(Section& s, std::string name, int line)
        : s_(s), name_(std::move(name)), line_(line) {}

    std::optional<double> number(const std::string& key) {
        auto it = s_.find(key);
        if (it == s_.end()) return std::nullopt;
        it->second.used = true;
        return parse_number(it->second, key);
    }
    double required(const std::string& key) {
        auto v = number(key);
        if (!v)
            throw ConfigError(line_, "[" + name_ + "] missing required key '" +
                                         key + "'");
        return *v;
    }
    double positive(const std::string& key, double fallback) {
        const double v = number(key).value_or(fallback);
        check_positive(key, v);
        return v;
    }
    double required_positive(const std::string& key) {
        const double v = required(key);
        check_positive(key, v);
        return v;
    }
    std::optional<std::string> text(const std::string& key) {
        auto it = s_.find(key);
        if (it == s_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }
    int line_of(const std::string& key) const {
        auto it = s_.find(key);
        return it == s_.end() ? line_ : it->second.line;
    }
    void reject_unused() const {
        for (const auto& [key, e] : s_)
            if (!e.used)
                throw ConfigError(e.line, "unknown key '" + key + "' in [" +
                                              name_ + "]");
    }

  private:
    void check_positive(const std::string& key, double v) const {
        if (!(v > 0))
            throw ConfigError(line_of(key), "'" + key + "' must be > 0");
    }

    Section& s_;
    std::string name_;
    int line_;
};

// Angle given either in radians (key) or degrees (key_deg), not both.
double angle_key(SectionReader& r, const std::string& key, double fallback) {
    const auto rad = r.number(key);
    const auto deg = r.number(key + "_deg");
    if (rad && deg)
        throw ConfigError(r.line_of(key + "_deg"),
                          "give '" + key + "' or '" + key + "_deg', not both");
    if (deg) return *deg * kPi / 180.0;
    return rad.value_or(fallback);
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    const auto plant_eq = [&] {
        const PlantParams &a = plant, &b = o.plant;
        return a.variant == b.variant && a.m1 == b.m1 && a.m2 == b.m2 &&
               a.r == b.r && a.l == b.l && a.a == b.a && a.R == b.R &&
               a.rho1 == b.rho1 && a.rho2 == b.rho2 && a.cu == b.cu &&
               a.cv == b.cv && a.f == b.f && a.u0 == b.u0 && a.g == b.g;
    };
    const auto sim_eq = [&] {
        return sim.h == o.sim.h && sim.t_max == o.sim.t_max &&
               sim.eps_conv == o.sim.eps_conv && sim.hold == o.sim.hold &&
               sim.record_every == o.sim.record_every;
    };
    const auto x0_eq = [&] {
        return x0.theta == o.x0.theta && x0.phi == o.x0.phi &&
               x0.dtheta == o.x0.dtheta && x0.dphi == o.x0.dphi;
    };
    return plant_eq() && controller == o.controller && sim_eq() && x0_eq() &&
           search == o.search && outputs == o.outputs;
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;
    std::istringstream in(text);
    std::string raw, current;
    int lineno = 0, current_line = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find_first_of("#;");
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(lineno, "malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "plant" && current != "controller" &&
                current != "sim" && current != "search" && current != "outputs")
                throw ConfigError(lineno, "unknown section [" + current + "]");
            current_line = lineno;
            sections[current];
            section_lines.emplace(current, current_line);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected 'key = value'");
        if (current.empty())
            throw ConfigError(lineno, "key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(lineno, "expected 'key = value'");
        auto [it, inserted] = sections[current].emplace(key, Entry{value, lineno});
        if (!inserted)
            throw ConfigError(lineno, "duplicate key '" + key + "'");
    }

    if (!sections.count("plant"))
        throw ConfigError(0, "missing [plant] section");

    RunConfig c;

    {
        SectionReader r(sections["plant"], "plant", section_lines["plant"]);
        const auto variant = r.text("variant");
        if (!variant)
            throw ConfigError(section_lines["plant"],
                              "[plant] missing required key 'variant'");
        if (*variant == "straight")
            c.plant.variant = Variant::Straight;
        else if (*variant == "circular")
            c.plant.variant = Variant::Circular;
        else
            throw ConfigError(r.line_of("variant"),
                              "variant must be 'straight' or 'circular'");
        c.plant.m1 = r.required_positive("m1");
        c.plant.m2 = r.required_positive("m2");
        c.plant.r = r.required_positive("r");
        c.plant.l = r.required_positive("l");
        c.plant.a = r.required_positive("a");
        c.plant.rho1 = r.required_positive("rho1");
        c.plant.rho2 = r.required("rho2");
        if (c.plant.rho2 < 0)
            throw ConfigError(r.line_of("rho2"), "'rho2' must be >= 0");
        c.plant.cu = r.required_positive("cu");
        c.plant.cv = r.required_positive("cv");
        c.plant.u0 = r.required_positive("u0");
        c.plant.f = r.number("f").value_or(0.0);
        if (c.plant.f < 0)
            throw ConfigError(r.line_of("f"), "'f' must be >= 0");
        c.plant.g = r.positive("g", 9.81);
        if (c.plant.variant == Variant::Circular)
            c.plant.R = r.required_positive("R");
        else if (auto R = r.number("R"))
            c.plant.R = *R;  // tolerated and ignored for straight
        r.reject_unused();
    }

    if (sections.count("controller")) {
        SectionReader r(sections["controller"], "controller",
                        section_lines["controller"]);
        if (const auto mode = r.text("mode")) {
            if (*mode == "auto")
                c.controller.mode = ControllerMode::Auto;
            else if (*mode == "single")
                c.controller.mode = ControllerMode::Single;
            else if (*mode == "dual")
                c.controller.mode = ControllerMode::Dual;
            else if (*mode == "none")
                c.controller.mode = ControllerMode::None;
            else
                throw ConfigError(r.line_of("mode"),
                                  "mode must be auto|single|dual|none");
        }
        c.controller.gamma = r.number("gamma");
        r.reject_unused();
    }

    if (sections.count("sim")) {
        SectionReader r(sections["sim"], "sim", section_lines["sim"]);
        c.sim.h = r.positive("h", c.sim.h);
        c.sim.t_max = r.positive("t_max", c.sim.t_max);
        c.sim.eps_conv = r.positive("eps_conv", c.sim.eps_conv);
        c.sim.hold = r.number("hold").value_or(c.sim.hold);
        if (c.sim.hold < 0)
            throw ConfigError(r.line_of("hold"), "'hold' must be >= 0");
        if (const auto re = r.number("record_every")) {
            if (*re < 1 || *re != std::floor(*re))
                throw ConfigError(r.line_of("record_every"),
                                  "'record_every' must be a positive integer");
            c.sim.record_every = static_cast<int>(*re);
        }
        c.x0.theta = angle_key(r, "theta0", 0.0);
        const bool has_phi0 = sections["sim"].count("phi0") ||
                              sections["sim"].count("phi0_deg");
        const auto s0 = r.number("s0");
        const double phi0 = angle_key(r, "phi0", 0.0);
        if (s0 && has_phi0)
            throw ConfigError(r.line_of("s0"), "give 'phi0' or 's0', not both");
        c.x0.phi = s0 ? *s0 / c.plant.r : phi0;
        c.x0.dtheta = r.number("dtheta0").value_or(0.0);
        c.x0.dphi = r.number("dphi0").value_or(0.0);
        r.reject_unused();
        if (c.sim.t_max <= c.sim.h)
            throw ConfigError(section_lines["sim"], "'t_max' must exceed 'h'");
    }

    if (sections.count("search")) {
        SearchConfig sc;
        SectionReader r(sections["search"], "search", section_lines["search"]);
        const auto ray = r.text("ray");
        if (!ray)
            throw ConfigError(section_lines["search"],
                              "[search] missing required key 'ray'");
        if (*ray == "theta")
            sc.ray = RayKind::Theta;
        else if (*ray == "phi")
            sc.ray = RayKind::Phi;
        else if (*ray == "s")
            sc.ray = RayKind::S;
        else if (*ray == "coupled")
            sc.ray = RayKind::Coupled;
        else
            throw ConfigError(r.line_of("ray"),
                              "ray must be theta|phi|s|coupled");
        sc.lo = r.required("lo");
        sc.hi = r.required("hi");
        sc.tol = r.positive("tol", sc.tol);
        r.reject_unused();
        c.search = sc;
    }

    if (sections.count("outputs")) {
        SectionReader r(sections["outputs"], "outputs",
                        section_lines["outputs"]);
        c.outputs.out = r.text("out").value_or("");
        r.reject_unused();
    }

    c.plant.validate();
    return c;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_config(const RunConfig& c) {
    std::ostringstream out;
    out << "[plant]\n";
    out << "variant = "
        << (c.plant.variant == Variant::Straight ? "straight" : "circular")
        << "\n";
    out << "m1 = " << num(c.plant.m1) << "\n";
    out << "m2 = " << num(c.plant.m2) << "\n";
    out << "r = " << num(c.plant.r) << "\n";
    out << "l = " << num(c.plant.l) << "\n";
    out << "a = " << num(c.plant.a) << "\n";
    if (c.plant.variant == Variant::Circular || c.plant.R != 0.0)
        out << "R = " << num(c.plant.R) << "\n";
    out << "rho1 = " << num(c.plant.rho1) << "\n";
    out << "rho2 = " << num(c.plant.rho2) << "\n";
    out << "cu = " << num(c.plant.cu) << "\n";
    out << "cv = " << num(c.plant.cv) << "\n";
    out << "f = " << num(c.plant.f) << "\n";
    out << "u0 = " << num(c.plant.u0) << "\n";
    out << "g = " << num(c.plant.g) << "\n";

    out << "\n[controller]\n";
    switch (c.controller.mode) {
        case ControllerMode::Auto: out << "mode = auto\n"; break;
        case ControllerMode::Single: out << "mode = single\n"; break;
        case ControllerMode::Dual: out << "mode = dual\n"; break;
        case ControllerMode::None: out << "mode = none\n"; break;
    }
    if (c.controller.gamma) out << "gamma = " << num(*c.controller.gamma) << "\n";

    out << "\n[sim]\n";
    out << "h = " << num(c.sim.h) << "\n";
    out << "t_max = " << num(c.sim.t_max) << "\n";
    out << "eps_conv = " << num(c.sim.eps_conv) << "\n";
    out << "hold = " << num(c.sim.hold) << "\n";
    out << "record_every = " << c.sim.record_every << "\n";
    out << "theta0 = " << num(c.x0.theta) << "\n";
    out << "phi0 = " << num(c.x0.phi) << "\n";
    out << "dtheta0 = " << num(c.x0.dtheta) << "\n";
    out << "dphi0 = " << num(c.x0.dphi) << "\n";

    if (c.search) {
        out << "\n[search]\n";
        switch (c.search->ray) {
            case RayKind::Theta: out << "ray = theta\n"; break;
            case RayKind::Phi: out << "ray = phi\n"; break;
            case RayKind::S: out << "ray = s\n"; break;
            case RayKind::Coupled: out << "ray = coupled\n"; break;
        }
        out << "lo = " << num(c.search->lo) << "\n";
        out << "hi = " << num(c.search->hi) << "\n";
        out << "tol = " << num(c.search->tol) << "\n";
    }

    if (!c.outputs.out.empty()) {
        out << "\n[outputs]\n";
        out << "out = " << c.outputs.out << "\n";
    }
    return out.str();
}

}  // namespace beamball
