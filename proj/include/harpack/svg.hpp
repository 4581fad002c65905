#pragma once

#include "harpack/geometry.hpp"

#include <ostream>
#include <vector>

namespace harpack {

/// Stroke-outlined rectangles in a 1000-unit viewport, y flipped so the
/// packing's origin is the bottom-left. `side` is the container side length
/// (1 for the unit square, 1+1/n for the glued layout).
void render_svg(std::ostream& out, const std::vector<Placement<double>>& placements,
                double side = 1.0);

template <class S>
std::vector<Placement<double>> to_float_placements(const std::vector<Placement<S>>& ps) {
    std::vector<Placement<double>> out;
    out.reserve(ps.size());
    for (const auto& p : ps)
        out.push_back(Placement<double>{p.index, ScalarOps<S>::to_double(p.x),
                                        ScalarOps<S>::to_double(p.y),
                                        ScalarOps<S>::to_double(p.w),
                                        ScalarOps<S>::to_double(p.h), p.rotated});
    return out;
}

}  // namespace harpack
