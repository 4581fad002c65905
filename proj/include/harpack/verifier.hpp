#pragma once

#include "harpack/packer.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace harpack {

inline constexpr std::size_t kMaxReportedViolations = 100;

template <class S>
struct ValidityReport {
    std::uint64_t n_checked = 0;
    std::vector<std::pair<Index, Index>> overlap_violations;  // truncated at 100
    std::uint64_t overlap_total = 0;
    std::vector<Index> containment_violations;
    std::uint64_t containment_total = 0;
    S conservation_residual{};
    bool conservation_checked = false;
    std::optional<Index> first_divergence;

    bool valid() const {
        return overlap_total == 0 && containment_total == 0 &&
               (!conservation_checked || conservation_residual == S{});
    }
};

namespace detail {

template <class S>
bool interiors_intersect(const Placement<S>& a, const Placement<S>& b) {
    // Shared edges are fine; only open-interior intersection counts.
    return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

}  // namespace detail

/// Sweep over x; a placement is active while the sweep is inside its x-span.
/// Among active placements only y-intervals can distinguish overlap.
template <class S>
void check_no_overlap(const std::vector<Placement<S>>& ps, ValidityReport<S>& rep) {
    struct Event {
        const Placement<S>* p;
        bool open;
        S key;  // precomputed: sort comparisons must not redo rational sums
    };
    std::vector<Event> events;
    events.reserve(2 * ps.size());
    for (const auto& p : ps) {
        events.push_back({&p, true, p.x});
        events.push_back({&p, false, p.x + p.w});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.open < b.open;  // close before open at equal x: touching is not overlap
    });

    // Max height over the stream bounds how far below a new rectangle's base
    // an overlapping active can start, so insertion scans a y-window instead
    // of the whole active list (valid packings can hold millions of actives
    // in one column).
    S max_h{};
    for (const auto& p : ps)
        if (p.h > max_h) max_h = p.h;

    // Active list sorted by y. Inserting [y, y+h) checks only the actives
    // whose y-interval can reach it.
    std::vector<const Placement<S>*> active;
    auto y_less = [](const Placement<S>* a, const Placement<S>* b) { return a->y < b->y; };
    for (const auto& e : events) {
        if (!e.open) {
            auto it = std::lower_bound(active.begin(), active.end(), e.p, y_less);
            while (it != active.end() && *it != e.p) ++it;
            if (it != active.end()) active.erase(it);
            continue;
        }
        const S top = e.p->y + e.p->h;
        const auto record = [&](const Placement<S>* q) {
            if (detail::interiors_intersect(*e.p, *q)) {
                ++rep.overlap_total;
                if (rep.overlap_violations.size() < kMaxReportedViolations)
                    rep.overlap_violations.emplace_back(
                        std::min(e.p->index, q->index), std::max(e.p->index, q->index));
            }
        };
        const auto pos = std::lower_bound(active.begin(), active.end(), e.p, y_less);
        // Actives starting inside [y, y+h) overlap in y outright.
        for (auto it = pos; it != active.end() && (*it)->y < top; ++it) record(*it);
        // Actives starting below y reach it only from within max_h of it.
        const S floor_y = e.p->y - max_h;
        for (auto it = pos; it != active.begin();) {
            --it;
            if ((*it)->y <= floor_y) break;
            record(*it);
        }
        active.insert(pos, e.p);
    }
    rep.n_checked = ps.size();
}

/// Brute-force O(n^2) cross-check for the sweep.
template <class S>
std::uint64_t count_overlaps_bruteforce(const std::vector<Placement<S>>& ps) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (detail::interiors_intersect(ps[i], ps[j])) ++count;
    return count;
}

/// Containment in the square [0, side]^2 (side defaults to the unit square).
template <class S>
void check_containment(const std::vector<Placement<S>>& ps, ValidityReport<S>& rep,
                       const S& side) {
    const S zero{};
    for (const auto& p : ps) {
        if (p.x < zero || p.y < zero || p.x + p.w > side || p.y + p.h > side) {
            ++rep.containment_total;
            if (rep.containment_violations.size() < kMaxReportedViolations)
                rep.containment_violations.push_back(p.index);
        }
    }
    rep.n_checked = std::max<std::uint64_t>(rep.n_checked, ps.size());
}

template <class S>
void check_containment(const std::vector<Placement<S>>& ps, ValidityReport<S>& rep) {
    check_containment(ps, rep, ScalarOps<S>::from_uint(1));
}

/// residual = 1 - sum(placed areas) - sum(box areas). Exact in Rational mode,
/// compensated in double mode.
template <class S>
S check_conservation(const std::vector<Placement<S>>& ps,
                     const std::vector<EmptyBox<S>>& boxes) {
    RunningTotal<S> acc;
    acc.add(ScalarOps<S>::from_uint(1));
    for (const auto& p : ps) acc.sub(p.w * p.h);
    for (const auto& b : boxes) acc.sub(b.w * b.h);
    return acc.value();
}

/// Runs the engine in both numeric modes with the same policy and reports the
/// first step whose extracted box id differs.
std::optional<Index> replay_compare(const PackerConfig& cfg, Index n_max);

}  // namespace harpack
