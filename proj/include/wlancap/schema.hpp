#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace wlancap {

/// Small structural checker for the subset of JSON Schema the report
/// formats use: "type", "required", "properties", "items" and "enum".
/// Returns one message per mismatch; empty means the value conforms.
inline void check_schema(const nlohmann::json& value, const nlohmann::json& schema,
                         const std::string& where, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        auto matches = [&](const std::string& t) {
            return (t == "object" && value.is_object()) ||
                   (t == "array" && value.is_array()) ||
                   (t == "string" && value.is_string()) ||
                   (t == "number" && value.is_number()) ||
                   (t == "integer" && value.is_number_integer()) ||
                   (t == "boolean" && value.is_boolean()) ||
                   (t == "null" && value.is_null());
        };
        const nlohmann::json& types = schema.at("type");
        bool ok = false;
        std::string expected;
        if (types.is_array()) {
            for (const auto& t : types) {
                if (!expected.empty()) expected += "|";
                expected += t.get<std::string>();
                if (matches(t.get<std::string>())) ok = true;
            }
        } else {
            expected = types.get<std::string>();
            ok = matches(expected);
        }
        if (!ok) {
            errors.push_back(where + ": expected " + expected + ", got " +
                             std::string(value.type_name()));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& allowed : schema.at("enum"))
            if (allowed == value) {
                found = true;
                break;
            }
        if (!found) errors.push_back(where + ": value not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& name : schema.at("required"))
                if (!value.contains(name.get<std::string>()))
                    errors.push_back(where + ": missing required field " +
                                     name.get<std::string>());
        if (schema.contains("properties"))
            for (const auto& [name, sub] : schema.at("properties").items())
                if (value.contains(name))
                    check_schema(value.at(name), sub, where + "." + name, errors);
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& item : value)
            check_schema(item, schema.at("items"), where + "[" + std::to_string(i++) + "]",
                         errors);
    }
}

inline std::vector<std::string> schema_errors(const nlohmann::json& value,
                                              const nlohmann::json& schema) {
    std::vector<std::string> errors;
    check_schema(value, schema, "$", errors);
    return errors;
}

} // namespace wlancap
