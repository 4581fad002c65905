#include "harpack/verifier.hpp"

namespace harpack {

std::optional<Index> replay_compare(const PackerConfig& cfg, Index n_max) {
    PackerConfig base = cfg;
    base.n_target = n_max;
    base.emit_placements = false;
    base.placements_path.clear();
    base.snapshots_path.clear();
    base.checkpoint_path.clear();
    base.boxes_path.clear();
    base.checkpoint_every = 0;

    std::vector<std::uint64_t> ids_float, ids_exact;
    ids_float.reserve(n_max);
    ids_exact.reserve(n_max);
    {
        Packer<double> p(base);
        p.run([&](Index, std::uint64_t id) { ids_float.push_back(id); });
    }
    {
        Packer<Rational> p(base);
        p.run([&](Index, std::uint64_t id) { ids_exact.push_back(id); });
    }
    const std::size_t m = std::min(ids_float.size(), ids_exact.size());
    for (std::size_t k = 0; k < m; ++k)
        if (ids_float[k] != ids_exact[k]) return Index(k + 1);
    if (ids_float.size() != ids_exact.size()) return Index(m + 1);
    return std::nullopt;
}

}  // namespace harpack
