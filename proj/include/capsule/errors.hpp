// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace capsule {

enum class Errc {
    unknown_player,
    duplicate_player,
    stale_entity,
    unknown_entity,
    unknown_component_kind,
    component_size_mismatch,
    duplicate_component,
    invalid_reference,
    asset_size_mismatch,
    asset_not_held,
    not_joined,
    engine_down,
    mode_mismatch,
    invalid_scenario,
    unsatisfiable,
    bind_failure,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::unknown_player: return "UnknownPlayer";
    case Errc::duplicate_player: return "DuplicatePlayer";
    case Errc::stale_entity: return "StaleEntity";
    case Errc::unknown_entity: return "UnknownEntity";
    case Errc::unknown_component_kind: return "UnknownComponentKind";
    case Errc::component_size_mismatch: return "ComponentSizeMismatch";
    case Errc::duplicate_component: return "DuplicateComponent";
    case Errc::invalid_reference: return "InvalidReference";
    case Errc::asset_size_mismatch: return "SizeMismatch";
    case Errc::asset_not_held: return "NotHeld";
    case Errc::not_joined: return "NotJoined";
    case Errc::engine_down: return "EngineDown";
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::invalid_scenario: return "InvalidScenario";
    case Errc::unsatisfiable: return "Unsatisfiable";
    case Errc::bind_failure: return "BindFailure";
    }
    return "Unknown";
}

class EngineError : public std::runtime_error {
public:
    EngineError(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace capsule
