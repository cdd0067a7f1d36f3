#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace atlas {

/// Resolves a setting from, in order of precedence: a command-line flag, an
/// ATLAS_-prefixed environment variable, then a JSON config file.
///
/// Setting "backbone-k" maps to env ATLAS_BACKBONE_K and config key
/// "backbone_k".
class Settings {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  Settings();
  Settings(std::map<std::string, std::string> file_values, EnvLookup env);

  // Reads a JSON object of scalar values; an empty path yields no file values.
  static Settings from_config_file(const std::filesystem::path& path, EnvLookup env);

  std::optional<std::string> resolve(std::string_view key,
                                     const std::optional<std::string>& flag) const;

  static std::string env_name(std::string_view key);
  static std::string file_key(std::string_view key);

 private:
  std::map<std::string, std::string> file_values_;
  EnvLookup env_;
};

std::optional<std::string> process_env(const std::string& name);

}  // namespace atlas
