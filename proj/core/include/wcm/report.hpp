#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "wcm/rational.hpp"

namespace wcm {

// Insertion-ordered JSON value with deterministic serialization: floats are
// rendered with 17 significant digits, rationals as "p/q" strings. Reports
// produced from the same config and seed serialize byte-identically.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;

    JsonValue() : v_(nullptr) {}
    JsonValue(std::nullptr_t) : v_(nullptr) {}
    JsonValue(bool b) : v_(b) {}
    JsonValue(int i) : v_(static_cast<long long>(i)) {}
    JsonValue(long long i) : v_(i) {}
    JsonValue(unsigned long long i) : v_(static_cast<long long>(i)) {}
    JsonValue(double d) : v_(d) {}
    JsonValue(const char* s) : v_(std::string(s)) {}
    JsonValue(std::string s) : v_(std::move(s)) {}
    JsonValue(const Rational& r) : v_(r.str()) {}
    JsonValue(Array a) : v_(std::move(a)) {}
    JsonValue(Object o) : v_(std::move(o)) {}

    static JsonValue object() { return JsonValue(Object{}); }
    static JsonValue array() { return JsonValue(Array{}); }

    // object field (insertion order preserved)
    JsonValue& set(const std::string& key, JsonValue val);
    // array element
    JsonValue& push(JsonValue val);

    std::string dump(int indent = 2) const;

private:
    void dump_to(std::string& out, int indent, int depth) const;
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

// Writes text to path atomically enough for reports (truncate + write).
void write_file(const std::string& path, const std::string& text);

std::string format_double(double d); // %.17g, stable across runs

// One CSV line; fields rendered like the JSON numbers so the two agree digit
// for digit.
std::string csv_line(const std::vector<std::string>& fields);

} // namespace wcm
