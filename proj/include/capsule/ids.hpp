// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace capsule {

// Player identity. Values are assigned monotonically for the lifetime of an
// engine and never reused, so a departed player's id can never be confused
// with a live one.
struct PlayerId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const PlayerId&) const = default;
};

inline std::string to_string(PlayerId p) { return "p" + std::to_string(p.value); }

// Ownership tag attached to every entity and event: Global state is shared by
// all players, Local state belongs to exactly one.
class Scope {
public:
    constexpr Scope() = default;

    static constexpr Scope global() { return Scope{}; }
    static constexpr Scope local(PlayerId owner) { return Scope{owner}; }

    constexpr bool is_global() const { return !local_; }
    constexpr bool is_local() const { return local_; }

    // Only meaningful for local scopes.
    constexpr PlayerId owner() const { return owner_; }

    constexpr auto operator<=>(const Scope&) const = default;

private:
    constexpr explicit Scope(PlayerId owner) : local_(true), owner_(owner) {}

    bool local_ = false;
    PlayerId owner_{};
};

inline std::string to_string(const Scope& s) {
    return s.is_global() ? "global" : "local(" + to_string(s.owner()) + ")";
}

// Entity handle. The index encodes the owning store partition (0 for the
// global store, owner+1 for a player's local store) in the high bits and the
// slot within that store in the low bits, so ids sort global-first and are
// stable regardless of which other players are co-resident. The generation
// guards against stale handles after a slot is reused.
struct EntityId {
    std::uint64_t index = 0;
    std::uint32_t generation = 0;

    static constexpr EntityId make(std::uint32_t partition, std::uint32_t slot,
                                   std::uint32_t generation) {
        return EntityId{(std::uint64_t(partition) << 32) | slot, generation};
    }

    constexpr std::uint32_t partition() const { return std::uint32_t(index >> 32); }
    constexpr std::uint32_t slot() const { return std::uint32_t(index & 0xffffffffu); }

    constexpr auto operator<=>(const EntityId&) const = default;
};

inline constexpr EntityId kInvalidEntity{};

inline std::string to_string(EntityId id) {
    return "e" + std::to_string(id.partition()) + ":" + std::to_string(id.slot()) + "@" +
           std::to_string(id.generation);
}

// Content identifier for a modeled asset. Equal ids imply identical asset
// bytes, which is what makes cross-player deduplication safe.
struct AssetId {
    std::string value;

    auto operator<=>(const AssetId&) const = default;
};

} // namespace capsule
