// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capsule/ids.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace capsule {

// A scripted in-game occurrence ("jump", "explode", ...). seq is assigned from
// a single engine-wide counter at emit time, so ordering is total across
// global and local queues. origin tags which player produced the event, if
// any; environment events have no origin.
struct GameplayEvent {
    std::uint64_t seq = 0;
    std::string name;
    Scope scope;
    std::vector<std::uint8_t> payload;
    std::uint64_t tick_issued = 0;
    std::optional<PlayerId> origin;
};

} // namespace capsule
