#pragma once

#include <stdexcept>
#include <string>

namespace umg {

// Configuration/validation problems (bad values, unknown keys, missing seed).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem problems (unreadable input, unwritable output).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// 17 significant digits: round-trips any double exactly, byte-stable.
std::string format_g17(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace umg
