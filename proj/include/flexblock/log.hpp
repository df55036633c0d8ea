#pragma once

#include <sstream>
#include <string>

namespace flexblock::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

/// Active level, read once from the FLEXBLOCK_LOG environment variable
/// (debug|info|warn|error|off). Defaults to warn.
Level level();

void write(Level lvl, const std::string& msg);

inline bool enabled(Level lvl) { return lvl >= level(); }

}  // namespace flexblock::log

#define FLEXBLOCK_LOG_AT(lvl, expr)                                    \
    do {                                                               \
        if (::flexblock::log::enabled(lvl)) {                          \
            std::ostringstream oss__;                                  \
            oss__ << expr;                                             \
            ::flexblock::log::write(lvl, oss__.str());                 \
        }                                                              \
    } while (0)

#define LOG_DEBUG(expr) FLEXBLOCK_LOG_AT(::flexblock::log::Level::Debug, expr)
#define LOG_INFO(expr) FLEXBLOCK_LOG_AT(::flexblock::log::Level::Info, expr)
#define LOG_WARN(expr) FLEXBLOCK_LOG_AT(::flexblock::log::Level::Warn, expr)
#define LOG_ERROR(expr) FLEXBLOCK_LOG_AT(::flexblock::log::Level::Error, expr)
