#pragma once

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace jhit::cli::log {

inline bool use_color() {
    static const bool color = std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) != 0;
    return color;
}

inline void emit(std::string_view level, std::string_view color, std::string_view msg) {
    if (use_color())
        std::fprintf(stderr, "\033[%.*sm%.*s\033[0m %.*s\n", int(color.size()), color.data(), int(level.size()),
                     level.data(), int(msg.size()), msg.data());
    else
        std::fprintf(stderr, "%.*s %.*s\n", int(level.size()), level.data(), int(msg.size()), msg.data());
}

inline void info(std::string_view msg) { emit("info", "36", msg); }
inline void warn(std::string_view msg) { emit("warn", "33", msg); }
inline void error(std::string_view msg) { emit("error", "31", msg); }

}  // namespace jhit::cli::log
