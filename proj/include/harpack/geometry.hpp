#pragma once

#include "harpack/harmonic.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace harpack {

template <class S>
struct RectSpec {
    Index index;
    S width;   // 1/index
    S height;  // 1/(index+1)

    static RectSpec make(Index i) {
        auto [w, h] = rect_dims<S>(i);
        return RectSpec{i, std::move(w), std::move(h)};
    }
};

template <class S>
struct EmptyBox {
    std::uint64_t id;
    S x, y;  // lower-left corner
    S w, h;
    S area;      // w * h, cached for ordering
    S min_side;  // min(w, h), cached for ordering

    static EmptyBox make(std::uint64_t id, S x, S y, S w, S h) {
        S a = w * h;
        S ms = w < h ? w : h;
        return EmptyBox{id,           std::move(x), std::move(y), std::move(w),
                        std::move(h), std::move(a), std::move(ms)};
    }
};

template <class S>
struct Placement {
    Index index;
    S x, y;
    S w, h;
    bool rotated;  // true when the 1/(index+1) side is horizontal
};

enum class Orientation { Unrotated, Rotated };

/// Guillotine cut rule for the L-shaped leftover. VerticalCut/HorizontalCut
/// (A/B) always cut the same way; the remaining rules pick the cut per split
/// from the leftover dimensions. The fixed rules starve the store within the
/// first hundred rectangles, so a per-split rule is the practical default.
enum class SplitPolicy {
    VerticalCut,     // A: side strip keeps full height
    HorizontalCut,   // B: top strip keeps full width
    LongerLeftover,  // full-length strip on the larger leftover dimension
    ShorterLeftover,
    MaxChildArea,    // maximize the larger child's area
    MinChildArea,
    ShorterCut,      // cut along the shorter of the two cut segments (h vs w)
    LongerCut,
};

/// Which way the rectangle goes into a box that admits both orientations.
/// AlignShort (long side across the box's short side) is what reproduces the
/// reference ratio table; AlignLong is its mirror.
enum class OrientPolicy { UnrotatedFirst, RotatedFirst, AlignLong, AlignShort };

/// Fit test with an orientation preference. Strict comparisons, no epsilon:
/// exact in Rational mode, plain IEEE comparisons in double mode.
template <class S>
std::optional<Orientation> choose_orientation(const EmptyBox<S>& box,
                                              const RectSpec<S>& r,
                                              OrientPolicy policy,
                                              bool allow_rotation) {
    const bool u = box.w >= r.width && box.h >= r.height;
    const bool v = allow_rotation && box.w >= r.height && box.h >= r.width;
    if (!u && !v) return std::nullopt;
    auto pick_unrot = [&] { return u ? Orientation::Unrotated : Orientation::Rotated; };
    auto pick_rot = [&] { return v ? Orientation::Rotated : Orientation::Unrotated; };
    switch (policy) {
        case OrientPolicy::UnrotatedFirst: return pick_unrot();
        case OrientPolicy::RotatedFirst: return pick_rot();
        case OrientPolicy::AlignLong: return box.w >= box.h ? pick_unrot() : pick_rot();
        default: return box.w >= box.h ? pick_rot() : pick_unrot();  // AlignShort
    }
}

/// Unrotated-preferred fit test.
template <class S>
std::optional<Orientation> fits(const EmptyBox<S>& box, const RectSpec<S>& r,
                                bool allow_rotation) {
    return choose_orientation(box, r, OrientPolicy::UnrotatedFirst, allow_rotation);
}

template <class S>
S box_area(const EmptyBox<S>& box) {
    return box.w * box.h;
}

template <class S>
struct SplitResult {
    Placement<S> placement;
    EmptyBox<S> children[2];
    int child_count = 0;
};

/// Places r in box's lower-left corner and cuts the L-shaped leftover with one
/// full-length guillotine cut. VerticalCut (A): side strip (w-rw) x h plus top
/// strip rw x (h-rh). HorizontalCut (B): top strip w x (h-rh) plus side strip
/// (w-rw) x rh. Zero-area children are dropped. Child ids are taken from
/// next_id in a fixed order (side/top for A, top/side for B), so the id stream
/// is deterministic.
template <class S>
SplitResult<S> place_and_split(const EmptyBox<S>& box, const RectSpec<S>& r,
                               Orientation orientation, SplitPolicy policy,
                               std::uint64_t& next_id) {
    const bool rotated = orientation == Orientation::Rotated;
    const S& rw = rotated ? r.height : r.width;
    const S& rh = rotated ? r.width : r.height;
    if (!(box.w >= rw && box.h >= rh))
        throw std::logic_error("place_and_split: rectangle does not fit");

    SplitResult<S> out;
    out.placement = Placement<S>{r.index, box.x, box.y, rw, rh, rotated};

    const S rem_w = box.w - rw;
    const S rem_h = box.h - rh;
    const S zero{};

    auto emit = [&](S x, S y, S w, S h) {
        if (w > zero && h > zero)
            out.children[out.child_count++] =
                EmptyBox<S>::make(next_id++, std::move(x), std::move(y),
                                  std::move(w), std::move(h));
    };

    bool vertical;
    switch (policy) {
        case SplitPolicy::VerticalCut: vertical = true; break;
        case SplitPolicy::HorizontalCut: vertical = false; break;
        case SplitPolicy::LongerLeftover: vertical = rem_w >= rem_h; break;
        case SplitPolicy::ShorterLeftover: vertical = rem_w < rem_h; break;
        // The full-length strip is always the larger child; compare the two
        // candidates' areas.
        case SplitPolicy::MaxChildArea: vertical = rem_w * box.h >= box.w * rem_h; break;
        case SplitPolicy::MinChildArea: vertical = rem_w * box.h < box.w * rem_h; break;
        // The vertical cut segment has length h, the horizontal one length w.
        case SplitPolicy::ShorterCut: vertical = box.h <= box.w; break;
        default: vertical = box.h > box.w; break;  // LongerCut
    }

    if (vertical) {
        emit(box.x + rw, box.y, rem_w, box.h);  // side strip, full height
        emit(box.x, box.y + rh, rw, rem_h);     // top strip above the rectangle
    } else {
        emit(box.x, box.y + rh, box.w, rem_h);  // top strip, full width
        emit(box.x + rw, box.y, rem_w, rh);     // side strip beside the rectangle
    }
    return out;
}

}  // namespace harpack
