#pragma once

#include "harpack/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace harpack {

/// Ordering of the "smallest box that fits" scan. The source algorithm's key
/// is a configuration constant; MinSide is the calibrated default (it
/// reproduces the reference ratio table), Area the documented alternative.
enum class StoreKey { Area, MinSide };

/// Ordered store of empty boxes. Keys ascend; id breaks all ties, so scan
/// order and therefore the whole run is deterministic. The greedy query scans
/// ascending from the first box that could hold the rectangle and returns the
/// first fit.
template <class S>
class BoxStore {
public:
    struct KeyLess {
        StoreKey key = StoreKey::MinSide;
        bool operator()(const EmptyBox<S>& a, const EmptyBox<S>& b) const {
            if (key == StoreKey::MinSide && a.min_side != b.min_side)
                return a.min_side < b.min_side;
            if (a.area != b.area) return a.area < b.area;
            if (a.w != b.w) return a.w < b.w;
            return a.id < b.id;
        }
    };

    struct ExtractResult {
        EmptyBox<S> box;
        Orientation orientation;
        std::uint64_t scanned;  // boxes examined by this query
    };

    explicit BoxStore(StoreKey key = StoreKey::MinSide)
        : key_(key), boxes_(KeyLess{key}) {}

    void insert(EmptyBox<S> box) {
        if (!ids_.insert(box.id).second)
            throw std::invalid_argument("BoxStore: duplicate id");
        total_.add(box.area);
        boxes_.insert(std::move(box));
    }

    /// Removes and returns the minimal-key member that fits r, or nullopt
    /// (NoFit). A fitting box needs area >= the rectangle's area and min side
    /// >= the rectangle's short side, so the scan starts at that key bound;
    /// semantics match a full ascending scan.
    std::optional<ExtractResult> extract_smallest_fitting(
        const RectSpec<S>& r, bool allow_rotation,
        OrientPolicy orient = OrientPolicy::UnrotatedFirst) {
        EmptyBox<S> probe;
        probe.id = 0;
        probe.area = key_ == StoreKey::Area ? r.width * r.height : S{};
        probe.min_side = r.height;  // the rectangle's short side
        probe.w = S{};
        std::uint64_t scanned = 0;
        for (auto it = boxes_.lower_bound(probe); it != boxes_.end(); ++it) {
            ++scanned;
            if (auto o = choose_orientation(*it, r, orient, allow_rotation)) {
                ExtractResult res{*it, *o, scanned};
                total_.sub(it->area);
                ids_.erase(it->id);
                boxes_.erase(it);
                return res;
            }
        }
        return std::nullopt;
    }

    /// Maximal-area member (smallest such key on ties).
    const EmptyBox<S>& largest() const {
        if (boxes_.empty()) throw std::logic_error("BoxStore: empty");
        if (key_ == StoreKey::Area) return *boxes_.rbegin();
        const EmptyBox<S>* best = nullptr;
        for (const auto& b : boxes_)
            if (!best || b.area > best->area) best = &b;
        return *best;
    }

    /// Drops every box that cannot host any rectangle up to index n_target
    /// (max side < 1/(n_target+1)). Removed area is tracked separately so
    /// conservation checks still close.
    std::uint64_t prune_too_small(Index n_target) {
        const S limit = ScalarOps<S>::inv(n_target + 1);
        std::uint64_t removed = 0;
        for (auto it = boxes_.begin(); it != boxes_.end();) {
            if (it->w < limit && it->h < limit) {
                total_.sub(it->area);
                pruned_.add(it->area);
                ids_.erase(it->id);
                it = boxes_.erase(it);
                ++removed;
            } else {
                ++it;
            }
        }
        return removed;
    }

    StoreKey key() const { return key_; }
    std::size_t size() const { return boxes_.size(); }
    bool empty() const { return boxes_.empty(); }
    S total_area() const { return total_.value(); }
    S pruned_area() const { return pruned_.value(); }

    auto begin() const { return boxes_.begin(); }
    auto end() const { return boxes_.end(); }

    void clear() {
        boxes_.clear();
        ids_.clear();
        total_ = {};
        pruned_ = {};
    }

    /// Checkpoint restore: totals are reinstated verbatim, not recomputed, so
    /// a resumed float run continues bit-exactly.
    void restore_totals(RunningTotal<S> total, RunningTotal<S> pruned) {
        total_ = std::move(total);
        pruned_ = std::move(pruned);
    }
    const RunningTotal<S>& total_state() const { return total_; }
    const RunningTotal<S>& pruned_state() const { return pruned_; }

private:
    StoreKey key_;
    std::set<EmptyBox<S>, KeyLess> boxes_;
    std::set<std::uint64_t> ids_;
    RunningTotal<S> total_;
    RunningTotal<S> pruned_;
};

}  // namespace harpack
