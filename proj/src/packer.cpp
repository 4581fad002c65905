#include "harpack/packer.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>

namespace harpack {

std::vector<Index> default_schedule(Index n_target) {
    std::vector<Index> sched;
    for (Index p = 1; p <= n_target && p <= Index(1) << 62; p *= 10) {
        sched.push_back(p);
        if (p >= 1000000000ull) {
            for (Index m : {2, 4, 5})
                if (m * p <= n_target) sched.push_back(m * p);
        }
        if (p > n_target / 10) break;
    }
    if (sched.empty() || sched.back() != n_target) sched.push_back(n_target);
    std::sort(sched.begin(), sched.end());
    sched.erase(std::unique(sched.begin(), sched.end()), sched.end());
    while (!sched.empty() && sched.back() > n_target) sched.pop_back();
    return sched;
}

std::uint64_t config_hash(const PackerConfig& cfg) {
    std::string s = "mode=";
    s += cfg.mode == NumericMode::Float ? 'f' : 'e';
    s += ";split=";
    s += std::to_string(static_cast<int>(cfg.split_policy));
    s += ";orient=";
    s += std::to_string(static_cast<int>(cfg.orient));
    s += ";order=";
    s += std::to_string(static_cast<int>(cfg.box_order));
    s += ";rot=";
    s += cfg.allow_rotation ? '1' : '0';
    s += ";prune=";
    s += cfg.prune ? '1' : '0';
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint32_t crc32_bytes(const void* data, std::size_t len, std::uint32_t seed) {
    return static_cast<std::uint32_t>(
        ::crc32(seed, static_cast<const Bytef*>(data), static_cast<uInt>(len)));
}

NumericMode detect_stream_mode(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (line.find('/') != std::string::npos) return NumericMode::Exact;
    return NumericMode::Float;
}

std::string checkpoint_ratio_series_csv(const std::string& path) {
    detail::verify_checkpoint_crc(path);
    detail::CheckpointReader r(path);
    auto magic = r.expect("HARPACK-CKPT");
    if (magic.at(0) != "1") throw std::runtime_error("unsupported checkpoint version");
    r.expect("hash");
    const bool exact = r.expect("mode").at(0) == "exact";
    r.expect("n");
    r.expect("next_id");
    r.expect("stream_bytes");
    r.expect("snap_bytes");
    r.expect("placed");
    r.expect("pruned");
    r.expect("total");
    r.expect("store_pruned");
    auto nsnap = std::stoull(r.expect("snapshots").at(0));

    auto fmt = [exact](const std::string& field) {
        if (exact) return field;  // p/q, verbatim
        return ScalarOps<double>::format(detail::CheckpointScalar<double>::parse(field));
    };
    std::string csv = std::string(kSnapshotHeader) + '\n';
    for (std::uint64_t k = 0; k < nsnap; ++k) {
        std::string l;
        if (!std::getline(r.in, l)) throw std::runtime_error("corrupt checkpoint: snapshots");
        std::istringstream iss(l);
        std::vector<std::string> f;
        std::string tok;
        while (iss >> tok) f.push_back(tok);
        if (f.size() != 9) throw std::runtime_error("corrupt checkpoint: snapshot row");
        csv += f[0] + ',' + fmt(f[5]) + ',' + fmt(f[1]) + ',' + fmt(f[2]) + ',' + f[6] + '\n';
    }
    return csv;
}

namespace detail {

void verify_checkpoint_crc(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    auto pos = content.rfind("crc ");
    if (pos == std::string::npos || content.back() != '\n' ||
        (pos != 0 && content[pos - 1] != '\n'))
        throw std::runtime_error("corrupt checkpoint: missing crc");
    std::string hex = content.substr(pos + 4, content.size() - pos - 5);
    char expect[16];
    std::snprintf(expect, sizeof(expect), "%08x",
                  crc32_bytes(content.data(), pos));
    if (hex != expect) throw std::runtime_error("corrupt checkpoint: crc mismatch");
}

}  // namespace detail

}  // namespace harpack
