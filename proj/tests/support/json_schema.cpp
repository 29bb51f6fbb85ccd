#include "support/json_schema.hpp"

#include <fstream>
#include <stdexcept>

namespace testsupport {

namespace {

bool type_matches(const std::string& type, const nlohmann::json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "null") return value.is_null();
  return false;
}

void check(const nlohmann::json& schema, const nlohmann::json& doc,
           const std::string& where, std::vector<std::string>& out) {
  if (schema.contains("type")) {
    const auto type = schema.at("type").get<std::string>();
    if (!type_matches(type, doc)) {
      out.push_back(where + ": expected type " + type + ", got " +
                    std::string(doc.type_name()));
      return;  // structure is wrong; nested checks would only cascade
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema.at("enum")) {
      if (candidate == doc) {
        found = true;
        break;
      }
    }
    if (!found) out.push_back(where + ": value " + doc.dump() + " not in enum");
  }
  if (schema.contains("minimum") && doc.is_number()) {
    if (doc.get<double>() < schema.at("minimum").get<double>()) {
      out.push_back(where + ": " + doc.dump() + " below minimum");
    }
  }
  if (schema.contains("maximum") && doc.is_number()) {
    if (doc.get<double>() > schema.at("maximum").get<double>()) {
      out.push_back(where + ": " + doc.dump() + " above maximum");
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required")) {
        if (!doc.contains(key.get<std::string>())) {
          out.push_back(where + ": missing required key " +
                        key.get<std::string>());
        }
      }
    }
    const auto* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    for (const auto& [key, value] : doc.items()) {
      if (props != nullptr && props->contains(key)) {
        check(props->at(key), value, where + "." + key, out);
      } else if (schema.contains("additionalProperties") &&
                 schema.at("additionalProperties").is_boolean() &&
                 !schema.at("additionalProperties").get<bool>()) {
        out.push_back(where + ": unexpected key " + key);
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      check(schema.at("items"), doc[i], where + "[" + std::to_string(i) + "]",
            out);
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc,
                                           const std::string& where) {
  std::vector<std::string> out;
  check(schema, doc, where, out);
  return out;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace testsupport
