// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace capsule::log {

enum class Level : int { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from CAPSULE_LOG (error|warn|info|debug), read once.
inline Level threshold() {
    static const Level lvl = [] {
        const char* env = std::getenv("CAPSULE_LOG");
        if (!env) return Level::warn;
        if (std::strcmp(env, "error") == 0) return Level::error;
        if (std::strcmp(env, "info") == 0) return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::warn;
    }();
    return lvl;
}

template <typename... Args>
void emit(Level lvl, const char* tag, const char* fmt, Args... args) {
    if (int(lvl) > int(threshold())) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
}

template <typename... Args>
void error(const char* fmt, Args... args) { emit(Level::error, "error", fmt, args...); }
template <typename... Args>
void warn(const char* fmt, Args... args) { emit(Level::warn, "warn", fmt, args...); }
template <typename... Args>
void info(const char* fmt, Args... args) { emit(Level::info, "info", fmt, args...); }
template <typename... Args>
void debug(const char* fmt, Args... args) { emit(Level::debug, "debug", fmt, args...); }

} // namespace capsule::log
