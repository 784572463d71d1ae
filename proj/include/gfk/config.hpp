#pragma once

#include <map>
#include <string>
#include <vector>

// Plain-text key=value configuration. Files use one pair per line, '#'
// comments; CLI flags are merged on top. The full sorted set is echoed into
// output headers so every artifact records how it was produced.

namespace gfk {

class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;

  /// Sorted "key=value" lines for reproducibility headers.
  std::vector<std::string> echo() const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace gfk
