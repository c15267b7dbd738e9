#include "zk/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zk {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigInvalid("line " + std::to_string(lineno) +
                            ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigInvalid("line " + std::to_string(lineno) +
                            ": empty section name");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("line " + std::to_string(lineno) +
                          ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigInvalid("line " + std::to_string(lineno) + ": empty key");
    if (val.empty())
      throw ConfigInvalid("line " + std::to_string(lineno) +
                          ": empty value for key '" + key + "'");
    if (val.front() == '[' || val.front() == '{')
      throw ConfigInvalid("line " + std::to_string(lineno) +
                          ": arrays/tables not supported (key '" + key +
                          "')");
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"')
        throw ConfigInvalid("line " + std::to_string(lineno) +
                            ": unterminated string for key '" + key + "'");
      val = val.substr(1, val.size() - 2);
    }
    std::string full = section.empty() ? key : section + "." + key;
    cfg.kv_[full] = val;
  }
  return cfg;
}

double Config::get_num(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  char* end = nullptr;
  double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigInvalid("key '" + key + "': not a number: " + it->second);
  return v;
}

double Config::require_num(const std::string& key) const {
  if (!has(key)) throw ConfigInvalid("missing required key '" + key + "'");
  return get_num(key, 0.0);
}

int Config::get_int(const std::string& key, int fallback) const {
  double v = get_num(key, fallback);
  int i = int(v);
  if (double(i) != v)
    throw ConfigInvalid("key '" + key + "': expected integer");
  return i;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  if (it->second == "true") return true;
  if (it->second == "false") return false;
  throw ConfigInvalid("key '" + key + "': expected true/false");
}

std::string Config::get_str(const std::string& key,
                            const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : kv_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

uint64_t Config::hash() const {
  uint64_t h = 14695981039346656037ull;
  for (char c : canonical()) {
    h ^= uint8_t(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace zk
