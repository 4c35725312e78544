#pragma once

#include <map>
#include <string>
#include <vector>

namespace mfglab {

/// Flat key = value configuration text. Lines starting with '#' (or blank)
/// are skipped; keys are dotted lowercase (domain.a, carleman.lambda, ...).
class Config {
 public:
  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_double_list(const std::string& key) const;

  /// Raw text as loaded; hashed into run manifests.
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::map<std::string, std::string> kv_;
};

}  // namespace mfglab
