#pragma once

namespace elrk {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// level is read once from ELRKFV_LOG (error|warn|info|debug), default warn
LogLevel log_level();
void set_log_level(LogLevel l);

void log_warn(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void log_info(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

}  // namespace elrk
