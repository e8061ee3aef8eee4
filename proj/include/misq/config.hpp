#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "misq/background.hpp"
#include "misq/rate_map.hpp"

namespace misq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value experiment description: one `key = value` per line, `#`
// comments, vectors as `[a, b, c]`, matrices as `[[..], [..]]`, `inf`
// allowed where a value may be infinite. Errors carry line numbers.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer_or(const std::string& key, long long fallback) const;
  std::string word(const std::string& key) const;
  std::string word_or(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> tokens(const std::string& key) const;
  std::vector<double> vector(const std::string& key) const;
  std::vector<std::vector<double>> matrix(const std::string& key) const;

  // Overrides an entry (CLI --set); the key need not exist yet.
  void set(const std::string& key, const std::string& value);

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& key) const;
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

// Domain builders; all throw ConfigError with the offending key's line.
StateSpace space_from_config(const Config& cfg);
Modulation modulation_from_config(const Config& cfg);
BackgroundSpec background_from_config(const Config& cfg);

}  // namespace misq
