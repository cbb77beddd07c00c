#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcm/vec.hpp"

namespace dcm {

// Plain-text config: one `section.key = value` assignment per line, lists in
// brackets, '#' comments. Unknown keys are rejected with the line number.
struct ConfigValue {
  std::vector<std::string> items;  // scalars are one-element lists
  bool is_list = false;
  int line = 0;
};

class RawConfig {
 public:
  static RawConfig parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
  }

  static RawConfig parse_string(const std::string& text,
                                const std::string& origin = "<string>") {
    RawConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                 ": expected 'key = value'");
      std::string key = trim(trimmed.substr(0, eq));
      std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty() || value.empty())
        throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                 ": empty key or value");
      if (cfg.values_.count(key))
        throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                 ": duplicate key '" + key + "'");
      ConfigValue v;
      v.line = lineno;
      if (value.front() == '[') {
        if (value.back() != ']')
          throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                   ": unterminated list");
        v.is_list = true;
        std::string body = value.substr(1, value.size() - 2);
        std::string item;
        std::istringstream items(body);
        while (std::getline(items, item, ',')) {
          std::string it = trim(item);
          if (it.empty())
            throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                     ": empty list item");
          v.items.push_back(it);
        }
        if (v.items.empty())
          throw InvalidConfigError(origin + ":" + std::to_string(lineno) +
                                   ": empty list");
      } else {
        v.items.push_back(value);
      }
      cfg.values_[key] = v;
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // single value of a scalar key; lists are rejected
  std::string scalar(const std::string& key) const {
    const ConfigValue& v = at(key);
    if (v.is_list)
      throw err(key, v.line, "expected a scalar, got a list");
    return v.items.front();
  }

  const ConfigValue& at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
      throw InvalidConfigError(origin_ + ": missing key '" + key + "'");
    return it->second;
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    if (!has(key)) return fallback;
    return scalar(key);
  }

  double get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return to_double(scalar(key), key, at(key).line);
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    double d = to_double(scalar(key), key, at(key).line);
    auto n = static_cast<std::int64_t>(d);
    if (static_cast<double>(n) != d)
      throw err(key, at(key).line, "expected an integer");
    return n;
  }

  // numeric list; scalars promote to one-element lists
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const ConfigValue& v = at(key);
    std::vector<double> out;
    for (const auto& s : v.items) out.push_back(to_double(s, key, v.line));
    return out;
  }

  std::vector<std::string> get_string_list(
      const std::string& key, std::vector<std::string> fallback) const {
    if (!has(key)) return fallback;
    return at(key).items;
  }

  void check_known_keys(const std::set<std::string>& known) const {
    for (const auto& [key, value] : values_) {
      if (!known.count(key))
        throw err(key, value.line, "unknown key");
    }
  }

  const std::string& origin() const { return origin_; }

  static double to_double(const std::string& s, const std::string& key,
                          int line) {
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw err(key, line, "expected a number, got '" + s + "'");
    return d;
  }

 private:
  static InvalidConfigError err(const std::string& key, int line,
                                const std::string& what) {
    return InvalidConfigError("line " + std::to_string(line) + ": key '" +
                              key + "': " + what);
  }

  static std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }

  std::string origin_;
  std::map<std::string, ConfigValue> values_;
};

}  // namespace dcm
