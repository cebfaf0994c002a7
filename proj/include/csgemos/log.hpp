#ifndef CSGEMOS_LOG_HPP
#define CSGEMOS_LOG_HPP

#include <atomic>
#include <iostream>
#include <string>

namespace csgemos::log {

enum class Level { Quiet = 0, Warn = 1, Info = 2 };

inline std::atomic<Level>& verbosity() {
  static std::atomic<Level> level{Level::Warn};
  return level;
}

inline void set_verbosity(Level level) { verbosity().store(level); }

inline void warn(const std::string& msg) {
  if (verbosity().load() >= Level::Warn) std::cerr << "warning: " << msg << "\n";
}

inline void info(const std::string& msg) {
  if (verbosity().load() >= Level::Info) std::cerr << "info: " << msg << "\n";
}

}  // namespace csgemos::log

#endif  // CSGEMOS_LOG_HPP
