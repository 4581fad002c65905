#include "harpack/svg.hpp"

#include <cstdio>

namespace harpack {

void render_svg(std::ostream& out, const std::vector<Placement<double>>& placements,
                double side) {
    const double scale = 1000.0 / side;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
           "viewBox=\"0 0 1000 1000\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\" "
           "stroke=\"black\" stroke-width=\"1\"/>\n";
    char buf[256];
    for (const auto& p : placements) {
        const double x = p.x * scale;
        const double y = (side - p.y - p.h) * scale;  // flip: SVG y grows downward
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" "
                      "fill=\"none\" stroke=\"black\" stroke-width=\"0.3\"/>\n",
                      x, y, p.w * scale, p.h * scale);
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace harpack
