#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nlc {

/// Flat `key = value` text with dotted section keys and `#` comments.
///
/// Keys are unique; every accessor that fails reports the line the key was
/// defined on.
class Config {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool empty() const { return entries_.empty(); }
  bool has(std::string_view key) const;
  const std::vector<Entry>& entries() const { return entries_; }
  int line_of(std::string_view key) const;

  const std::string& get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  int get_int(std::string_view key) const;
  int get_int(std::string_view key, int fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  /// Whitespace- or comma-separated numbers.
  std::vector<double> get_doubles(std::string_view key) const;
  /// Groups separated by `;`, each a list of numbers.
  std::vector<std::vector<double>> get_groups(std::string_view key) const;

  /// Throws ParseError for the first key not in `known`.
  void reject_unknown(const std::set<std::string, std::less<>>& known) const;

  void set(std::string key, std::string value);
  std::string to_string() const;

 private:
  const Entry& find(std::string_view key) const;
  std::vector<Entry> entries_;
};

/// Shortest text that parses back to exactly the same double.
std::string format_double(double value);
std::string format_doubles(const std::vector<double>& values);

}  // namespace nlc
