#include "animalab/simlab.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace animalab {

namespace {

constexpr int kUnit = 24; // half of the lattice spacing in SVG user units

std::string color_for(std::size_t index, std::size_t total) {
    // blue (order 0) to red (last dropped), fixed integer interpolation
    const std::size_t t = total <= 1 ? 0 : (255 * index) / (total - 1);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x2a%02x", static_cast<unsigned>(t),
                  static_cast<unsigned>(255 - t));
    return buf;
}

} // namespace

std::string render_svg(const Animal& a, RenderStyle style, bool color_order) {
    const auto& vs = a.vertices();
    std::int64_t min_x = vs[0].x, max_x = vs[0].x, max_y = 0;
    for (const auto& v : vs) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        max_y = std::max(max_y, v.y);
    }
    const std::int64_t w = (max_x - min_x + 4) * kUnit;
    const std::int64_t h = (max_y + 3) * 2 * kUnit;
    auto px = [&](std::int64_t x) { return (x - min_x + 2) * kUnit; };
    auto py = [&](std::int64_t y) { return h - (y + 1) * 2 * kUnit; };

    std::map<Vertex, std::string> colors;
    if (color_order) {
        const auto order = sort_total(a);
        for (std::size_t i = 0; i < order.size(); ++i)
            colors[order[i]] = color_for(i, order.size());
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
    for (const auto& v : vs) {
        const std::string fill = color_order ? colors[v] : "#4a7dbd";
        const std::int64_t cx = px(v.x), cy = py(v.y);
        if (style == RenderStyle::Squares) {
            // unit square of the rotated lattice, drawn as a diamond
            os << "<polygon points=\"" << cx << "," << cy - kUnit << " " << cx + kUnit << ","
               << cy << " " << cx << "," << cy + kUnit << " " << cx - kUnit << "," << cy
               << "\" fill=\"" << fill << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
        } else {
            // domino of height 1 and length slightly smaller than 2
            const std::int64_t half_len = (kUnit * 19) / 10; // 1.9 units
            os << "<rect x=\"" << cx - half_len << "\" y=\"" << cy - kUnit + 2 << "\" width=\""
               << 2 * half_len << "\" height=\"" << 2 * kUnit - 4 << "\" rx=\"4\" fill=\"" << fill
               << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace animalab
