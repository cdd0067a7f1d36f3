#include "atlas/config.hpp"

#include <cstdlib>
#include <stdexcept>

#include "atlas/hash.hpp"
#include "json.hpp"

namespace atlas {

std::optional<std::string> process_env(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

Settings::Settings() : env_(process_env) {}

Settings::Settings(std::map<std::string, std::string> file_values, EnvLookup env)
    : file_values_(std::move(file_values)), env_(std::move(env)) {}

Settings Settings::from_config_file(const std::filesystem::path& path, EnvLookup env) {
  std::map<std::string, std::string> values;
  if (!path.empty()) {
    const auto doc = nlohmann::json::parse(read_file(path));
    if (!doc.is_object()) throw std::runtime_error("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
      values[file_key(key)] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return Settings(std::move(values), std::move(env));
}

std::optional<std::string> Settings::resolve(std::string_view key,
                                             const std::optional<std::string>& flag) const {
  if (flag) return flag;
  if (env_) {
    if (auto value = env_(env_name(key))) return value;
  }
  auto it = file_values_.find(file_key(key));
  if (it != file_values_.end()) return it->second;
  return std::nullopt;
}

std::string Settings::env_name(std::string_view key) {
  std::string out = "ATLAS_";
  for (char c : key) {
    out += c == '-' ? '_' : static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
  }
  return out;
}

std::string Settings::file_key(std::string_view key) {
  std::string out(key);
  for (char& c : out) {
    if (c == '-') c = '_';
  }
  return out;
}

}  // namespace atlas
