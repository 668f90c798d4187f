#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "beamball/domains.hpp"
#include "beamball/simulate.hpp"
#include "beamball/types.hpp"

namespace beamball {

// Parse failure with the 1-based line it occurred on (0 = whole file).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

enum class ControllerMode { Auto, Single, Dual, None };
enum class RayKind { Theta, Phi, S, Coupled };

struct ControllerConfig {
    ControllerMode mode = ControllerMode::Auto;
    std::optional<double> gamma;

    bool operator==(const ControllerConfig&) const = default;
};

struct SearchConfig {
    RayKind ray = RayKind::Theta;
    double lo = 0;
    double hi = 0;
    double tol = 1e-4;

    bool operator==(const SearchConfig&) const = default;
};

struct OutputConfig {
    std::string out;  // empty = stdout

    bool operator==(const OutputConfig&) const = default;
};

// Full run description parsed from the key = value config format with
// sections [plant], [controller], [sim], [search], [outputs].
struct RunConfig {
    PlantParams plant;
    ControllerConfig controller;
    SimSettings sim;
    State x0;
    std::optional<SearchConfig> search;
    OutputConfig outputs;

    bool operator==(const RunConfig& o) const;
};

// Throws ConfigError (with line number) on unknown key, missing required
// key, or out-of-range value. Angles accept a _deg suffix alternative;
// s0 may replace phi0.
RunConfig parse_config(const std::string& text);

// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& c);

}  // namespace beamball
