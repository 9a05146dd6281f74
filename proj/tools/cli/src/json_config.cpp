#include "toda/cli/json_config.hpp"

#include "json.hpp"

namespace toda::cli {

namespace {

std::vector<std::string> inputs_of(const nlohmann::json& value) {
  if (value.is_string()) return {value.get<std::string>()};
  if (value.is_boolean()) return {value.get<bool>() ? "true" : "false"};
  if (value.is_array()) {
    std::vector<std::string> out;
    for (const auto& v : value) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
  }
  return {value.dump()};
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app->get_options({})) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const std::string name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      j[name] = results.size() == 1 ? nlohmann::json(results.front()) : nlohmann::json(results);
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j.dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<CLI::ConfigItem> items;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [inner, v] : value.items()) {
        CLI::ConfigItem item;
        item.parents = {key};
        item.name = inner;
        item.inputs = inputs_of(v);
        items.push_back(std::move(item));
      }
    } else {
      CLI::ConfigItem item;
      item.name = key;
      item.inputs = inputs_of(value);
      items.push_back(std::move(item));
    }
  }
  return items;
}

}  // namespace toda::cli
