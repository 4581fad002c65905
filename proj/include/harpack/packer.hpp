#pragma once

#include "harpack/boxstore.hpp"
#include "harpack/streams.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace harpack {

struct PackerConfig {
    Index n_target = 1000;
    NumericMode mode = NumericMode::Float;
    // Calibrated defaults: this combination reproduces the reference ratio
    // table (see README). Every axis remains configurable.
    SplitPolicy split_policy = SplitPolicy::LongerLeftover;
    OrientPolicy orient = OrientPolicy::AlignShort;
    StoreKey box_order = StoreKey::MinSide;
    bool allow_rotation = true;
    bool prune = false;
    bool emit_placements = true;
    std::vector<Index> snapshot_schedule;  // empty: default_schedule(n_target)
    std::uint64_t checkpoint_every = 0;    // 0 disables
    std::string placements_path;
    std::string snapshots_path;
    std::string checkpoint_path;
    std::string boxes_path;
};

/// Powers of ten up to n, plus the 2x/4x/5x decade multiples above 10^9.
std::vector<Index> default_schedule(Index n_target);

/// Hash of the run-shaping fields (mode, split policy, rotation, prune).
/// n_target is excluded so a checkpoint can be resumed toward a larger run.
std::uint64_t config_hash(const PackerConfig& cfg);

std::uint32_t crc32_bytes(const void* data, std::size_t len, std::uint32_t seed = 0);

/// Ratio series (snapshot CSV) recovered from a checkpoint file, without
/// needing the original configuration. Verifies the checksum.
std::string checkpoint_ratio_series_csv(const std::string& path);

inline constexpr const char* kSnapshotHeader = "n,ratio,largest_w,largest_h,box_count";

template <class S>
struct StatsSnapshot {
    Index n = 0;
    S largest_w{}, largest_h{}, largest_area{};
    S remaining{};
    S ratio{};
    std::uint64_t box_count = 0;
    double scan_mean = 0.0;
    std::uint64_t scan_max = 0;
    double wall_seconds = 0.0;
};

template <class S>
struct PackingResult {
    enum class Status { Completed, NoFit };
    Status status = Status::Completed;
    Index nofit_index = 0;
    std::vector<StatsSnapshot<S>> snapshots;
    StatsSnapshot<S> final_snapshot;
};

namespace detail {

template <class S>
struct CheckpointScalar;

template <>
struct CheckpointScalar<double> {
    // %a hexfloats: bit-exact round trip.
    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%a", v);
        return buf;
    }
    static double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
};

template <>
struct CheckpointScalar<Rational> {
    static std::string format(const Rational& v) { return v.str(); }
    static Rational parse(const std::string& s) {
        auto v = Rational::parse(s);
        if (!v) throw std::runtime_error("corrupt checkpoint scalar: " + s);
        return *v;
    }
};

template <class S>
std::string format_total(const RunningTotal<S>& t) {
    return CheckpointScalar<S>::format(t.total);
}
inline std::string format_total(const RunningTotal<double>& t) {
    return CheckpointScalar<double>::format(t.acc.sum) + ' ' +
           CheckpointScalar<double>::format(t.acc.compensation);
}

}  // namespace detail

/// The greedy engine: for i = 1..N pull the smallest fitting empty box,
/// place P_i in its lower-left corner, guillotine-split the leftover, insert
/// the children. Deterministic given the configuration.
template <class S>
class Packer {
public:
    using StepCallback = std::function<void(Index i, std::uint64_t box_id)>;

    explicit Packer(PackerConfig cfg) : cfg_(std::move(cfg)), store_(cfg_.box_order) {
        store_.insert(EmptyBox<S>::make(0, S{}, S{}, ScalarOps<S>::from_uint(1),
                                        ScalarOps<S>::from_uint(1)));
        next_id_ = 1;
        if (cfg_.snapshot_schedule.empty())
            cfg_.snapshot_schedule = default_schedule(cfg_.n_target);
    }

    PackingResult<S> run(const StepCallback& on_step = {});

    /// Restores engine state from a checkpoint and truncates the output files
    /// back to their recorded sizes, so the resumed run appends bit-exactly.
    void resume(const std::string& checkpoint_path);

    void save_checkpoint(const std::string& path) const;
    void write_boxes(const std::string& path) const;

    StatsSnapshot<S> snapshot() const;

    const BoxStore<S>& store() const { return store_; }
    S placed_area() const { return placed_.value(); }
    S filtered_area() const { return pruned_.value(); }
    Index packed() const { return n_; }
    const PackerConfig& config() const { return cfg_; }

private:
    void open_outputs(bool fresh);
    void emit_snapshot_row(const StatsSnapshot<S>& s);
    static std::string snapshot_row(const StatsSnapshot<S>& s);

    PackerConfig cfg_;
    BoxStore<S> store_;
    Index n_ = 0;
    std::uint64_t next_id_ = 0;
    RunningTotal<S> placed_;
    RunningTotal<S> pruned_;  // children dropped by the insert-time prune filter
    std::uint64_t scan_sum_ = 0, scan_count_ = 0, scan_max_ = 0;
    std::vector<StatsSnapshot<S>> snapshots_;
    std::ofstream stream_, snap_out_;
    std::uint64_t stream_bytes_ = 0, snap_bytes_ = 0;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

template <class S>
StatsSnapshot<S> Packer<S>::snapshot() const {
    StatsSnapshot<S> s;
    s.n = n_;
    s.remaining = remaining_area<S>(n_);
    if (!store_.empty()) {
        const auto& big = store_.largest();
        s.largest_w = big.w;
        s.largest_h = big.h;
        s.largest_area = big.area;
        s.ratio = big.area * ScalarOps<S>::from_uint(n_ + 1);
    }
    s.box_count = store_.size();
    s.scan_mean = scan_count_ ? static_cast<double>(scan_sum_) / static_cast<double>(scan_count_) : 0.0;
    s.scan_max = scan_max_;
    s.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    return s;
}

template <class S>
std::string Packer<S>::snapshot_row(const StatsSnapshot<S>& s) {
    std::string row = std::to_string(s.n);
    row += ',';
    row += ScalarOps<S>::format(s.ratio);
    row += ',';
    row += ScalarOps<S>::format(s.largest_w);
    row += ',';
    row += ScalarOps<S>::format(s.largest_h);
    row += ',';
    row += std::to_string(s.box_count);
    row += '\n';
    return row;
}

template <class S>
void Packer<S>::open_outputs(bool fresh) {
    namespace fs = std::filesystem;
    if (cfg_.emit_placements && !cfg_.placements_path.empty()) {
        if (!fresh) fs::resize_file(cfg_.placements_path, stream_bytes_);
        stream_.open(cfg_.placements_path,
                     fresh ? std::ios::binary | std::ios::trunc
                           : std::ios::binary | std::ios::in | std::ios::ate);
        if (!stream_) throw std::runtime_error("cannot open " + cfg_.placements_path);
        if (fresh) {
            std::string hdr = std::string(kPlacementHeader) + '\n';
            stream_ << hdr;
            stream_bytes_ = hdr.size();
        }
    }
    if (!cfg_.snapshots_path.empty()) {
        if (!fresh) fs::resize_file(cfg_.snapshots_path, snap_bytes_);
        snap_out_.open(cfg_.snapshots_path,
                       fresh ? std::ios::binary | std::ios::trunc
                             : std::ios::binary | std::ios::in | std::ios::ate);
        if (!snap_out_) throw std::runtime_error("cannot open " + cfg_.snapshots_path);
        if (fresh) {
            std::string hdr = std::string(kSnapshotHeader) + '\n';
            snap_out_ << hdr;
            snap_bytes_ = hdr.size();
        }
    }
}

template <class S>
void Packer<S>::emit_snapshot_row(const StatsSnapshot<S>& s) {
    if (!snap_out_.is_open()) return;
    std::string row = snapshot_row(s);
    snap_out_ << row;
    snap_bytes_ += row.size();
}

template <class S>
PackingResult<S> Packer<S>::run(const StepCallback& on_step) {
    if (n_ == 0) open_outputs(true);
    t0_ = std::chrono::steady_clock::now();

    PackingResult<S> result;
    result.snapshots = snapshots_;

    const S prune_limit = ScalarOps<S>::inv(cfg_.n_target + 1);
    auto sched_it = std::upper_bound(cfg_.snapshot_schedule.begin(),
                                     cfg_.snapshot_schedule.end(), n_);

    for (Index i = n_ + 1; i <= cfg_.n_target; ++i) {
        const auto r = RectSpec<S>::make(i);
        auto ext = store_.extract_smallest_fitting(r, cfg_.allow_rotation, cfg_.orient);
        if (!ext) {
            result.status = PackingResult<S>::Status::NoFit;
            result.nofit_index = i;
            break;
        }
        scan_sum_ += ext->scanned;
        scan_count_ += 1;
        scan_max_ = std::max(scan_max_, ext->scanned);

        auto split = place_and_split(ext->box, r, ext->orientation,
                                     cfg_.split_policy, next_id_);
        placed_.add(split.placement.w * split.placement.h);
        for (int c = 0; c < split.child_count; ++c) {
            auto& child = split.children[c];
            if (cfg_.prune && child.w < prune_limit && child.h < prune_limit)
                pruned_.add(child.area);
            else
                store_.insert(std::move(child));
        }
        if (stream_.is_open()) {
            std::string row = placement_row(split.placement);
            stream_ << row;
            stream_bytes_ += row.size();
            if (!stream_) throw std::runtime_error("placement stream write failed");
        }
        n_ = i;
        // Fires with the step's state fully committed, so callbacks can read
        // the store and running totals.
        if (on_step) on_step(i, ext->box.id);

        if (sched_it != cfg_.snapshot_schedule.end() && *sched_it == i) {
            ++sched_it;
            auto s = snapshot();
            snapshots_.push_back(s);
            result.snapshots.push_back(s);
            emit_snapshot_row(s);
            scan_sum_ = scan_count_ = scan_max_ = 0;
        }
        if (cfg_.checkpoint_every && i % cfg_.checkpoint_every == 0 &&
            !cfg_.checkpoint_path.empty()) {
            stream_.flush();
            snap_out_.flush();
            save_checkpoint(cfg_.checkpoint_path);
        }
    }

    result.final_snapshot = snapshot();
    stream_.flush();
    snap_out_.flush();
    if (!cfg_.boxes_path.empty()) write_boxes(cfg_.boxes_path);
    return result;
}

template <class S>
void Packer<S>::write_boxes(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << kBoxHeader << '\n';
    for (const auto& b : store_) out << box_row(b);
}

// --- checkpointing ---------------------------------------------------------

template <class S>
void Packer<S>::save_checkpoint(const std::string& path) const {
    using CS = detail::CheckpointScalar<S>;
    std::string buf;
    buf.reserve(64 * store_.size() + 4096);
    auto line = [&buf](std::initializer_list<std::string> fields) {
        bool first = true;
        for (const auto& f : fields) {
            if (!first) buf += ' ';
            buf += f;
            first = false;
        }
        buf += '\n';
    };
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg_)));
    line({"HARPACK-CKPT", "1"});
    line({"hash", hex});
    line({"mode", ScalarOps<S>::mode == NumericMode::Float ? "float" : "exact"});
    line({"n", std::to_string(n_)});
    line({"next_id", std::to_string(next_id_)});
    line({"stream_bytes", std::to_string(stream_bytes_)});
    line({"snap_bytes", std::to_string(snap_bytes_)});
    line({"placed", detail::format_total(placed_)});
    line({"pruned", detail::format_total(pruned_)});
    line({"total", detail::format_total(store_.total_state())});
    line({"store_pruned", detail::format_total(store_.pruned_state())});
    line({"snapshots", std::to_string(snapshots_.size())});
    for (const auto& s : snapshots_)
        line({std::to_string(s.n), CS::format(s.largest_w), CS::format(s.largest_h),
              CS::format(s.largest_area), CS::format(s.remaining), CS::format(s.ratio),
              std::to_string(s.box_count),
              detail::CheckpointScalar<double>::format(s.scan_mean),
              std::to_string(s.scan_max)});
    line({"boxes", std::to_string(store_.size())});
    for (const auto& b : store_)
        line({std::to_string(b.id), CS::format(b.x), CS::format(b.y), CS::format(b.w),
              CS::format(b.h)});
    std::snprintf(hex, sizeof(hex), "%08x", crc32_bytes(buf.data(), buf.size()));
    buf += "crc ";
    buf += hex;
    buf += '\n';

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << buf;
        if (!out) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace detail {

struct CheckpointReader {
    std::ifstream in;
    explicit CheckpointReader(const std::string& path) : in(path, std::ios::binary) {
        if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    }
    std::vector<std::string> expect(const std::string& key) {
        std::string l;
        if (!std::getline(in, l)) throw std::runtime_error("corrupt checkpoint: truncated at " + key);
        std::vector<std::string> f;
        std::istringstream iss(l);
        std::string tok;
        while (iss >> tok) f.push_back(tok);
        if (f.empty() || f[0] != key)
            throw std::runtime_error("corrupt checkpoint: expected " + key);
        f.erase(f.begin());
        return f;
    }
};

template <class S>
void parse_total(const std::vector<std::string>& f, RunningTotal<S>& t) {
    t.total = CheckpointScalar<S>::parse(f.at(0));
}
inline void parse_total(const std::vector<std::string>& f, RunningTotal<double>& t) {
    t.acc.sum = CheckpointScalar<double>::parse(f.at(0));
    t.acc.compensation = CheckpointScalar<double>::parse(f.at(1));
}

void verify_checkpoint_crc(const std::string& path);

}  // namespace detail

template <class S>
void Packer<S>::resume(const std::string& checkpoint_path) {
    using CS = detail::CheckpointScalar<S>;
    detail::verify_checkpoint_crc(checkpoint_path);
    detail::CheckpointReader r(checkpoint_path);

    auto magic = r.expect("HARPACK-CKPT");
    if (magic.at(0) != "1") throw std::runtime_error("unsupported checkpoint version");
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg_)));
    if (r.expect("hash").at(0) != hex)
        throw std::runtime_error("checkpoint config mismatch");
    auto mode = r.expect("mode").at(0);
    if (mode != (ScalarOps<S>::mode == NumericMode::Float ? "float" : "exact"))
        throw std::runtime_error("checkpoint numeric mode mismatch");

    n_ = std::stoull(r.expect("n").at(0));
    next_id_ = std::stoull(r.expect("next_id").at(0));
    stream_bytes_ = std::stoull(r.expect("stream_bytes").at(0));
    snap_bytes_ = std::stoull(r.expect("snap_bytes").at(0));
    detail::parse_total(r.expect("placed"), placed_);
    detail::parse_total(r.expect("pruned"), pruned_);
    RunningTotal<S> total, store_pruned;
    detail::parse_total(r.expect("total"), total);
    detail::parse_total(r.expect("store_pruned"), store_pruned);

    snapshots_.clear();
    auto nsnap = std::stoull(r.expect("snapshots").at(0));
    for (std::uint64_t k = 0; k < nsnap; ++k) {
        std::string l;
        if (!std::getline(r.in, l)) throw std::runtime_error("corrupt checkpoint: snapshots");
        std::istringstream iss(l);
        std::vector<std::string> f;
        std::string tok;
        while (iss >> tok) f.push_back(tok);
        if (f.size() != 9) throw std::runtime_error("corrupt checkpoint: snapshot row");
        StatsSnapshot<S> s;
        s.n = std::stoull(f[0]);
        s.largest_w = CS::parse(f[1]);
        s.largest_h = CS::parse(f[2]);
        s.largest_area = CS::parse(f[3]);
        s.remaining = CS::parse(f[4]);
        s.ratio = CS::parse(f[5]);
        s.box_count = std::stoull(f[6]);
        s.scan_mean = detail::CheckpointScalar<double>::parse(f[7]);
        s.scan_max = std::stoull(f[8]);
        snapshots_.push_back(std::move(s));
    }

    store_.clear();
    auto nboxes = std::stoull(r.expect("boxes").at(0));
    for (std::uint64_t k = 0; k < nboxes; ++k) {
        std::string l;
        if (!std::getline(r.in, l)) throw std::runtime_error("corrupt checkpoint: boxes");
        std::istringstream iss(l);
        std::vector<std::string> f;
        std::string tok;
        while (iss >> tok) f.push_back(tok);
        if (f.size() != 5) throw std::runtime_error("corrupt checkpoint: box row");
        store_.insert(EmptyBox<S>::make(std::stoull(f[0]), CS::parse(f[1]),
                                        CS::parse(f[2]), CS::parse(f[3]),
                                        CS::parse(f[4])));
    }
    store_.restore_totals(std::move(total), std::move(store_pruned));
    open_outputs(false);
}

}  // namespace harpack
