#include "beamball/io.hpp"

#include <cstdio>

namespace beamball {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const Trace& tr) {
    os << "t,theta,phi,dtheta,dphi,s,u,F,K,P,E\n";
    for (const TraceRow& r : tr.rows) {
        os << format_number(r.t) << ',' << format_number(r.theta) << ','
           << format_number(r.phi) << ',' << format_number(r.dtheta) << ','
           << format_number(r.dphi) << ',' << format_number(r.s) << ','
           << format_number(r.u) << ',' << format_number(r.F) << ','
           << format_number(r.kinetic) << ',' << format_number(r.potential)
           << ',' << format_number(r.energy) << '\n';
    }
}

void write_boundary_csv(std::ostream& os, const PlanarBoundary& b) {
    os << "y1,y2\n";
    for (const auto& p : b.points)
        os << format_number(p.x()) << ',' << format_number(p.y()) << '\n';
}

}  // namespace beamball
