#include "pgd/csv.hpp"

#include <cstdio>
#include <sstream>

namespace pgd::csv {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string history_csv(const FrontTracker& tracker, const FrontHistory& history) {
    std::ostringstream out;
    out << "# schema=1\n";
    out << "t,l,x,y,P,I,J,U,V,a_minus,b_minus,a_plus,b_plus\n";
    for (const FrontState& s : history.states) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const FrontMarker& m = s.markers[i];
            const Vec2 uv = tracker.front_velocity(s, i);
            out << num(s.t) << ',' << num(m.l) << ',' << num(m.x) << ',' << num(m.y) << ','
                << num(m.P) << ',' << num(m.I) << ',' << num(m.J) << ',' << num(uv.x()) << ','
                << num(uv.y()) << ',' << num(m.a_minus) << ',' << num(m.b_minus) << ','
                << num(m.a_plus) << ',' << num(m.b_plus) << '\n';
        }
    }
    return out.str();
}

}  // namespace pgd::csv
