// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capsule/errors.hpp"
#include "capsule/ids.hpp"

#include <cstdint>
#include <map>

namespace capsule {

// Deduplicated, refcounted asset store standing in for VRAM. Loading an
// already-cached id only bumps its refcount; entries are evicted the moment
// the last reference is released, so total bytes always equal the sum over
// distinct held ids plus one framebuffer per active player.
class AssetCache {
public:
    explicit AssetCache(std::uint64_t framebuffer_bytes) : framebuffer_(framebuffer_bytes) {}

    // Framebuffers are accounted per active player; the session layer keeps
    // this in sync with joins and leaves.
    void set_active_players(std::uint32_t n) { active_players_ = n; }
    std::uint32_t active_players() const { return active_players_; }

    void load(const AssetId& id, std::uint64_t size) {
        if (size == 0) throw EngineError(Errc::asset_size_mismatch, "zero-size asset " + id.value);
        auto it = entries_.find(id);
        if (it == entries_.end()) {
            entries_.emplace(id, Entry{size, 1});
            asset_bytes_ += size;
            return;
        }
        if (it->second.size != size)
            throw EngineError(Errc::asset_size_mismatch,
                              id.value + " cached at " + std::to_string(it->second.size) +
                                  " bytes, reloaded at " + std::to_string(size));
        ++it->second.refs;
    }

    // Returns the bytes evicted (0 while other holders remain).
    std::uint64_t release(const AssetId& id) {
        auto it = entries_.find(id);
        if (it == entries_.end())
            throw EngineError(Errc::asset_not_held, id.value);
        if (--it->second.refs > 0) return 0;
        std::uint64_t freed = it->second.size;
        asset_bytes_ -= freed;
        entries_.erase(it);
        return freed;
    }

    bool contains(const AssetId& id) const { return entries_.count(id) != 0; }

    std::uint64_t refcount(const AssetId& id) const {
        auto it = entries_.find(id);
        return it == entries_.end() ? 0 : it->second.refs;
    }

    std::uint64_t size_of(const AssetId& id) const {
        auto it = entries_.find(id);
        return it == entries_.end() ? 0 : it->second.size;
    }

    std::size_t entry_count() const { return entries_.size(); }

    // Bytes of distinct held assets, excluding framebuffers.
    std::uint64_t asset_bytes() const { return asset_bytes_; }

    std::uint64_t framebuffer_bytes() const { return framebuffer_; }

    std::uint64_t total_vram() const {
        return asset_bytes_ + framebuffer_ * std::uint64_t(active_players_);
    }

private:
    struct Entry {
        std::uint64_t size = 0;
        std::uint64_t refs = 0;
    };

    std::map<AssetId, Entry> entries_;
    std::uint64_t asset_bytes_ = 0;
    std::uint64_t framebuffer_ = 0;
    std::uint32_t active_players_ = 0;
};

} // namespace capsule
