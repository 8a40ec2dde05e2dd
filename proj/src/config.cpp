#include "matlift/config.hpp"

#include <fstream>
#include <sstream>

#include "matlift/error.hpp"

namespace matlift {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']' && line.size() > 2, errc::config_error,
              origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    require(eq != std::string::npos, errc::config_error,
            origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), errc::config_error,
            origin + ":" + std::to_string(lineno) + ": empty key");
    require(!section.empty(), errc::config_error,
            origin + ":" + std::to_string(lineno) + ": key outside any [section]");
    std::string full = section + "." + key;
    require(!cfg.values_.count(full), errc::config_error,
            origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
    cfg.values_[full] = value;
    cfg.lines_[full] = lineno;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
  lines_.erase(key);
}

void Config::bad_value(const std::string& key, const std::string& what) const {
  auto ln = lines_.find(key);
  std::string where =
      ln != lines_.end() ? origin_ + ":" + std::to_string(ln->second) + ": " : "";
  fail(errc::config_error, where + "key '" + key + "': " + what);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::get_required(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    fail(errc::config_error, origin_ + ": missing required key '" + key + "'");
  return it->second;
}

long Config::get_long(const std::string& key, long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    size_t pos = 0;
    long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, "expected an integer, got '" + it->second + "'");
  }
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, "expected an unsigned integer, got '" + it->second + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, "expected a number, got '" + it->second + "'");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  auto it = values_.find(key);
  std::vector<std::string> out;
  if (it == values_.end()) return out;
  std::string item;
  std::istringstream in(it->second);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<long> Config::get_long_list(const std::string& key) const {
  std::vector<long> out;
  for (const std::string& s : get_list(key)) {
    try {
      out.push_back(std::stol(s));
    } catch (const std::logic_error&) {
      bad_value(key, "expected integers, got '" + s + "'");
    }
  }
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& s : get_list(key)) {
    try {
      out.push_back(std::stod(s));
    } catch (const std::logic_error&) {
      bad_value(key, "expected numbers, got '" + s + "'");
    }
  }
  return out;
}

}  // namespace matlift
