// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capsule/ids.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace capsule {

// 64-bit FNV-1a accumulator. Integers are folded as little-endian fixed-width
// byte sequences so digests are identical across platforms.
class Fnv1a64 {
public:
    void bytes(std::span<const std::uint8_t> data) {
        for (std::uint8_t b : data) step(b);
    }

    void bytes(std::string_view data) {
        for (char c : data) step(std::uint8_t(c));
    }

    void u8(std::uint8_t v) { step(v); }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) step(std::uint8_t(v >> (8 * i)));
    }

    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) step(std::uint8_t(v >> (8 * i)));
    }

    std::uint64_t value() const { return hash_; }

private:
    void step(std::uint8_t b) {
        hash_ ^= b;
        hash_ *= 0x100000001b3ull;
    }

    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> data) {
    Fnv1a64 h;
    h.bytes(data);
    return h.value();
}

// Deterministic filler for modeled component payloads: byte i of the payload
// is a hash of (seed, tag, ordinal, kind, i). Hash-based so the content of an
// entity never depends on spawn interleaving with other entities.
inline std::uint8_t content_byte(std::uint64_t seed, std::string_view tag, std::uint64_t ordinal,
                                 std::uint32_t kind, std::uint32_t i) {
    Fnv1a64 h;
    h.u64(seed);
    h.bytes(tag);
    h.u64(ordinal);
    h.u32(kind);
    h.u32(i);
    return std::uint8_t(h.value() & 0xff);
}

inline std::vector<std::uint8_t> content_payload(std::uint64_t seed, std::string_view tag,
                                                 std::uint64_t ordinal, std::uint32_t kind,
                                                 std::uint32_t size) {
    std::vector<std::uint8_t> out(size);
    for (std::uint32_t i = 0; i < size; ++i) out[i] = content_byte(seed, tag, ordinal, kind, i);
    return out;
}

// Per-player, per-tick hash of the canonical visible-set encoding.
struct FrameDigest {
    PlayerId player;
    std::uint64_t tick = 0;
    std::uint64_t hash = 0;

    auto operator<=>(const FrameDigest&) const = default;
};

} // namespace capsule
