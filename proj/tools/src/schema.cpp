// A small interpreter for the subset of JSON Schema used by the config
// schema: type, enum, const, properties, required, additionalProperties,
// items, minItems, minimum/maximum (and exclusive forms), allOf, anyOf,
// if/then/else and local $ref.

#include <cmath>
#include <sstream>

#include "config.hpp"

namespace attlab::tools {

namespace {

struct Validator {
  const json& root;
  std::vector<std::string>& out;

  const json& resolve(const std::string& ref) const {
    if (ref.rfind("#", 0) != 0) throw std::logic_error("schema: only local $ref is supported: " + ref);
    return root.at(json::json_pointer(ref.substr(1)));
  }

  static bool has_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer")
      return v.is_number_integer() || (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
    return false;
  }

  static std::string show(const json& v) {
    auto s = v.dump();
    return s.size() > 40 ? s.substr(0, 37) + "..." : s;
  }

  void fail(const std::string& path, const std::string& msg) { out.push_back(path + ": " + msg); }

  bool check_quiet(const json& v, const json& s) {
    std::vector<std::string> sink;
    Validator inner{root, sink};
    inner.check(v, s, "$");
    return sink.empty();
  }

  void check(const json& v, const json& s, const std::string& path) {
    if (s.is_boolean()) {
      if (!s.get<bool>()) fail(path, "not allowed");
      return;
    }
    if (s.contains("$ref")) check(v, resolve(s.at("$ref").get<std::string>()), path);

    if (s.contains("type")) {
      const auto& t = s.at("type");
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
      }
      if (!ok) {
        fail(path, "expected " + (t.is_string() ? t.get<std::string>() : t.dump()) + ", got " + show(v));
        return;
      }
    }
    if (s.contains("const") && v != s.at("const")) fail(path, "must equal " + show(s.at("const")));
    if (s.contains("enum")) {
      bool ok = false;
      for (const auto& e : s.at("enum")) ok = ok || v == e;
      if (!ok) fail(path, show(v) + " is not one of " + s.at("enum").dump());
    }

    if (v.is_number()) {
      const double x = v.get<double>();
      auto bound = [&](const char* key, bool bad, const char* word) {
        if (!s.contains(key)) return;
        std::ostringstream os;
        os << show(v) << ' ' << word << ' ' << s.at(key).get<double>();
        if (bad) fail(path, os.str());
      };
      if (s.contains("minimum")) bound("minimum", x < s.at("minimum").get<double>(), "is below minimum");
      if (s.contains("maximum")) bound("maximum", x > s.at("maximum").get<double>(), "exceeds maximum");
      if (s.contains("exclusiveMinimum"))
        bound("exclusiveMinimum", x <= s.at("exclusiveMinimum").get<double>(), "must be greater than");
      if (s.contains("exclusiveMaximum"))
        bound("exclusiveMaximum", x >= s.at("exclusiveMaximum").get<double>(), "must be less than");
    }

    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& r : s.at("required"))
          if (!v.contains(r.get<std::string>())) fail(path, "missing required key '" + r.get<std::string>() + "'");
      const json* props = s.contains("properties") ? &s.at("properties") : nullptr;
      for (const auto& [k, val] : v.items()) {
        const auto sub = path + "." + k;
        if (props && props->contains(k)) {
          check(val, props->at(k), sub);
        } else if (s.contains("additionalProperties")) {
          const auto& ap = s.at("additionalProperties");
          if (ap.is_boolean() && !ap.get<bool>())
            fail(path, "unknown key '" + k + "'");
          else
            check(val, ap, sub);
        }
      }
    }

    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>())
        fail(path, "needs at least " + s.at("minItems").dump() + " items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s.at("items"), path + "[" + std::to_string(i) + "]");
    }

    if (s.contains("allOf"))
      for (const auto& sub : s.at("allOf")) check(v, sub, path);
    if (s.contains("anyOf")) {
      bool ok = false;
      for (const auto& sub : s.at("anyOf")) ok = ok || check_quiet(v, sub);
      if (!ok) fail(path, show(v) + " matches none of the allowed forms");
    }
    if (s.contains("if")) {
      if (check_quiet(v, s.at("if"))) {
        if (s.contains("then")) check(v, s.at("then"), path);
      } else if (s.contains("else")) {
        check(v, s.at("else"), path);
      }
    }
  }
};

}  // namespace

std::vector<std::string> schema_diagnostics(const json& doc, const json& schema) {
  std::vector<std::string> out;
  Validator v{schema, out};
  v.check(doc, schema, "$");
  return out;
}

}  // namespace attlab::tools
