#include "nlc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlc/error.hpp"

namespace nlc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

bool parse_number(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string_view> split_numbers(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ParseError("invalid key '" + std::string(key) + "'", line_no);
    if (cfg.has(key)) {
      throw ParseError("duplicate key '" + std::string(key) + "' (first defined on line " +
                           std::to_string(cfg.line_of(key)) + ")",
                       line_no);
    }
    cfg.entries_.push_back({std::string(key), std::string(value), line_no});
    if (end == text.size()) break;
  }
  if (cfg.entries_.empty()) throw ParseError("configuration is empty", 0);
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

bool Config::has(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.key == key; });
}

const Config::Entry& Config::find(std::string_view key) const {
  for (const Entry& e : entries_) {
    if (e.key == key) return e;
  }
  throw ParseError("missing required key '" + std::string(key) + "'", 0);
}

int Config::line_of(std::string_view key) const { return find(key).line; }

const std::string& Config::get_string(std::string_view key) const { return find(key).value; }

std::string Config::get_string(std::string_view key, std::string_view fallback) const {
  return has(key) ? find(key).value : std::string(fallback);
}

double Config::get_double(std::string_view key) const {
  const Entry& e = find(key);
  double v = 0.0;
  if (!parse_number(e.value, v)) {
    throw ParseError("'" + e.key + "' expects a finite number, got '" + e.value + "'", e.line);
  }
  return v;
}

double Config::get_double(std::string_view key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(std::string_view key) const {
  const Entry& e = find(key);
  int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("'" + e.key + "' expects an integer, got '" + e.value + "'", e.line);
  }
  return v;
}

int Config::get_int(std::string_view key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = find(key);
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ParseError("'" + e.key + "' expects true or false, got '" + e.value + "'", e.line);
}

std::vector<double> Config::get_doubles(std::string_view key) const {
  const Entry& e = find(key);
  std::vector<double> out;
  for (std::string_view token : split_numbers(e.value)) {
    double v = 0.0;
    if (!parse_number(token, v)) {
      throw ParseError("'" + e.key + "' contains non-numeric entry '" + std::string(token) + "'",
                       e.line);
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<double>> Config::get_groups(std::string_view key) const {
  const Entry& e = find(key);
  std::vector<std::vector<double>> groups;
  std::string_view rest = e.value;
  while (true) {
    const auto semi = rest.find(';');
    const std::string_view part = trim(rest.substr(0, semi));
    if (!part.empty()) {
      std::vector<double> g;
      for (std::string_view token : split_numbers(part)) {
        double v = 0.0;
        if (!parse_number(token, v)) {
          throw ParseError(
              "'" + e.key + "' contains non-numeric entry '" + std::string(token) + "'", e.line);
        }
        g.push_back(v);
      }
      groups.push_back(std::move(g));
    }
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  return groups;
}

void Config::reject_unknown(const std::set<std::string, std::less<>>& known) const {
  for (const Entry& e : entries_) {
    if (!known.contains(e.key)) throw ParseError("unknown key '" + e.key + "'", e.line);
  }
}

void Config::set(std::string key, std::string value) {
  for (Entry& e : entries_) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  entries_.push_back({std::move(key), std::move(value), 0});
}

std::string Config::to_string() const {
  std::string out;
  for (const Entry& e : entries_) out += e.key + " = " + e.value + "\n";
  return out;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace nlc
