#pragma once

#include <ostream>
#include <string>

#include "beamball/domains.hpp"
#include "beamball/simulate.hpp"

namespace beamball {

// One double with 12 significant digits ("%.12g").
std::string format_number(double v);

// Header exactly "t,theta,phi,dtheta,dphi,s,u,F,K,P,E", LF line endings.
void write_trace_csv(std::ostream& os, const Trace& tr);

// Header exactly "y1,y2", LF line endings.
void write_boundary_csv(std::ostream& os, const PlanarBoundary& b);

}  // namespace beamball
