#include "flexblock/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace flexblock::log {

namespace {

Level parse_level() {
    const char* env = std::getenv("FLEXBLOCK_LOG");
    if (!env) return Level::Warn;
    std::string v(env);
    if (v == "debug") return Level::Debug;
    if (v == "info") return Level::Info;
    if (v == "warn") return Level::Warn;
    if (v == "error") return Level::Error;
    if (v == "off") return Level::Off;
    return Level::Warn;
}

const char* tag(Level lvl) {
    switch (lvl) {
        case Level::Debug: return "debug";
        case Level::Info: return "info";
        case Level::Warn: return "warn";
        case Level::Error: return "error";
        case Level::Off: return "off";
    }
    return "?";
}

std::mutex g_mutex;

}  // namespace

Level level() {
    static Level lvl = parse_level();
    return lvl;
}

void write(Level lvl, const std::string& msg) {
    std::scoped_lock lock(g_mutex);
    std::cerr << "[flexblock " << tag(lvl) << "] " << msg << "\n";
}

}  // namespace flexblock::log
