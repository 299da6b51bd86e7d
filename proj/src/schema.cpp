// Copyright 2026 The QuickCue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quickcue/schema.hpp"

#include <regex>

#include "quickcue/error.hpp"
#include "quickcue/resources.hpp"
#include "quickcue/text.hpp"

namespace quickcue {
namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) text::decode_utf8(s, pos);
  return n;
}

bool has_type(const Json& v, std::string_view type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    if (v.is_number_float()) {
      const double d = v.get<double>();
      return d == static_cast<double>(static_cast<long long>(d));
    }
    return false;
  }
  return false;
}

std::string describe(const Json& v) {
  std::string s = v.dump();
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void check(const Json& schema, const Json& v, const std::string& path) const {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) throw SchemaError(path, "value not allowed");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(resolve(ref->get<std::string>()), v, path);
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_string()) {
        ok = has_type(v, t->get<std::string>());
      } else {
        for (const auto& alt : *t) ok = ok || has_type(v, alt.get<std::string>());
      }
      if (!ok) throw SchemaError(path, "expected type " + t->dump());
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool ok = false;
      for (const auto& allowed : *e) ok = ok || allowed == v;
      if (!ok) throw SchemaError(path, describe(v) + " is not one of " + e->dump());
    }
    if (auto c = schema.find("const"); c != schema.end() && *c != v) {
      throw SchemaError(path, "expected " + c->dump());
    }
    if (v.is_string()) check_string(schema, v.get_ref<const std::string&>(), path);
    if (v.is_number()) check_number(schema, v.get<double>(), path);
    if (v.is_object()) check_object(schema, v, path);
    if (v.is_array()) check_array(schema, v, path);
  }

 private:
  const Json& resolve(const std::string& ref) const {
    static constexpr std::string_view kPrefix = "#/$defs/";
    if (!text::starts_with(ref, kPrefix)) {
      throw Error(ErrorCode::kSchemaError, "unsupported $ref " + ref);
    }
    const std::string name = ref.substr(kPrefix.size());
    const auto defs = root_.find("$defs");
    if (defs == root_.end() || !defs->contains(name)) {
      throw Error(ErrorCode::kSchemaError, "unresolved $ref " + ref);
    }
    return (*defs)[name];
  }

  void check_string(const Json& schema, const std::string& s, const std::string& path) const {
    if (auto m = schema.find("minLength"); m != schema.end() &&
                                           code_points(s) < m->get<std::size_t>()) {
      throw SchemaError(path, "string shorter than " + m->dump() + " characters");
    }
    if (auto m = schema.find("maxLength"); m != schema.end() &&
                                           code_points(s) > m->get<std::size_t>()) {
      throw SchemaError(path, "string longer than " + m->dump() + " characters");
    }
    if (auto p = schema.find("pattern"); p != schema.end()) {
      const std::regex re(p->get<std::string>(), std::regex::ECMAScript);
      if (!std::regex_search(s, re)) {
        throw SchemaError(path, "string does not match " + p->get<std::string>());
      }
    }
  }

  void check_number(const Json& schema, double d, const std::string& path) const {
    if (auto m = schema.find("minimum"); m != schema.end() && d < m->get<double>()) {
      throw SchemaError(path, "value below minimum " + m->dump());
    }
    if (auto m = schema.find("maximum"); m != schema.end() && d > m->get<double>()) {
      throw SchemaError(path, "value above maximum " + m->dump());
    }
  }

  void check_object(const Json& schema, const Json& v, const std::string& path) const {
    const auto props = schema.find("properties");
    if (auto req = schema.find("required"); req != schema.end()) {
      for (const auto& name : *req) {
        if (!v.contains(name.get<std::string>())) {
          throw SchemaError(join(path, name.get<std::string>()), "missing required field");
        }
      }
    }
    const auto extra = schema.find("additionalProperties");
    for (const auto& [key, value] : v.items()) {
      if (props != schema.end() && props->contains(key)) {
        check((*props)[key], value, join(path, key));
      } else if (extra != schema.end()) {
        if (extra->is_boolean() && !extra->get<bool>()) {
          throw SchemaError(join(path, key), "unexpected field");
        }
        check(*extra, value, join(path, key));
      }
    }
  }

  void check_array(const Json& schema, const Json& v, const std::string& path) const {
    if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>()) {
      throw SchemaError(path, "expected at least " + m->dump() + " items");
    }
    if (auto m = schema.find("maxItems"); m != schema.end() && v.size() > m->get<std::size_t>()) {
      throw SchemaError(path, "expected at most " + m->dump() + " items");
    }
    std::size_t first = 0;
    if (auto pre = schema.find("prefixItems"); pre != schema.end()) {
      for (; first < pre->size() && first < v.size(); ++first) {
        check((*pre)[first], v[first], index_path(path, first));
      }
    }
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = first; i < v.size(); ++i) check(*items, v[i], index_path(path, i));
    }
  }

  const Json& root_;
};

}  // namespace

void validate_json(const Json& schema, const Json& document) {
  Validator(schema).check(schema, document, "");
}

const Json& review_set_schema_json() {
  static const Json j = Json::parse(resources::review_set_schema());
  return j;
}
const Json& classify_response_schema_json() {
  static const Json j = Json::parse(resources::classify_response_schema());
  return j;
}
const Json& digest_schema_json() {
  static const Json j = Json::parse(resources::digest_schema());
  return j;
}
const Json& health_schema_json() {
  static const Json j = Json::parse(resources::health_schema());
  return j;
}
const Json& error_schema_json() {
  static const Json j = Json::parse(resources::error_schema());
  return j;
}

}  // namespace quickcue
