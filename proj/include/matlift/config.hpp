#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace matlift {

// Line-oriented configuration: "[section]" headers, "key = value" entries,
// '#' comments, comma-separated lists. Keys are addressed as "section.key".
// Every parse or lookup failure throws ConfigError naming the key and,
// where known, the line.
class Config {
 public:
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);  // CLI overrides

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string get_required(const std::string& key) const;

  long get_long(const std::string& key, long fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::vector<std::string> get_list(const std::string& key) const;  // empty when absent
  std::vector<long> get_long_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  [[noreturn]] void bad_value(const std::string& key, const std::string& what) const;

  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::string origin_;
};

}  // namespace matlift
