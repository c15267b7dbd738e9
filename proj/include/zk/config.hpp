#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace zk {

struct ConfigInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArtifactMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat TOML subset: `key = value` lines, optional [section] headers
// (flattened to section.key), #-comments, strings / numbers / booleans.
// Enough for run configs; nested tables and arrays are rejected.
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  double get_num(const std::string& key, double fallback) const;
  double require_num(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_str(const std::string& key,
                      const std::string& fallback) const;
  void set(const std::string& key, const std::string& value);

  std::string canonical() const;  // sorted key=value lines
  uint64_t hash() const;          // FNV-1a of canonical()

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace zk
