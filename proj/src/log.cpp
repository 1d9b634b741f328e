#include "elrk/log.hpp"

#include <atomic>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace elrk {

namespace {

std::atomic<int>& level_ref()
{
    static std::atomic<int> lvl = [] {
        const char* e = std::getenv("ELRKFV_LOG");
        if (!e) return 1;
        if (!std::strcmp(e, "error")) return 0;
        if (!std::strcmp(e, "info")) return 2;
        if (!std::strcmp(e, "debug")) return 3;
        return 1;
    }();
    return lvl;
}

void emit(LogLevel l, const char* tag, const char* fmt, va_list ap)
{
    if (static_cast<int>(l) > level_ref().load()) return;
    static std::mutex m;
    std::lock_guard<std::mutex> lk(m);
    std::fprintf(stderr, "[elrkfv %s] ", tag);
    std::vfprintf(stderr, fmt, ap);
    std::fputc('\n', stderr);
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_ref().load()); }
void set_log_level(LogLevel l) { level_ref() = static_cast<int>(l); }

void log_warn(const char* fmt, ...)
{
    va_list ap;
    va_start(ap, fmt);
    emit(LogLevel::warn, "warn", fmt, ap);
    va_end(ap);
}

void log_info(const char* fmt, ...)
{
    va_list ap;
    va_start(ap, fmt);
    emit(LogLevel::info, "info", fmt, ap);
    va_end(ap);
}

}  // namespace elrk
