#include "wcm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wcm/errors.hpp"

namespace wcm {

JsonValue& JsonValue::set(const std::string& key, JsonValue val) {
    auto* obj = std::get_if<Object>(&v_);
    if (!obj) throw input_error("JsonValue::set on a non-object");
    for (auto& [k, v] : *obj)
        if (k == key) {
            v = std::move(val);
            return *this;
        }
    obj->emplace_back(key, std::move(val));
    return *this;
}

JsonValue& JsonValue::push(JsonValue val) {
    auto* arr = std::get_if<Array>(&v_);
    if (!arr) throw input_error("JsonValue::push on a non-array");
    arr->push_back(std::move(val));
    return *this;
}

std::string format_double(double d) {
    if (std::isnan(d)) return "null";
    if (std::isinf(d)) return d > 0 ? "1e999" : "-1e999";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

namespace {

void escape_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void JsonValue::dump_to(std::string& out, int indent, int depth) const {
    auto pad = [&](int d) {
        if (indent > 0) {
            out += '\n';
            out.append(static_cast<size_t>(indent) * d, ' ');
        }
    };
    if (std::holds_alternative<std::nullptr_t>(v_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&v_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<long long>(&v_)) {
        out += std::to_string(*i);
    } else if (auto* d = std::get_if<double>(&v_)) {
        out += format_double(*d);
    } else if (auto* s = std::get_if<std::string>(&v_)) {
        escape_string(out, *s);
    } else if (auto* a = std::get_if<Array>(&v_)) {
        if (a->empty()) {
            out += "[]";
            return;
        }
        out += '[';
        for (size_t i = 0; i < a->size(); ++i) {
            if (i) out += ',';
            pad(depth + 1);
            (*a)[i].dump_to(out, indent, depth + 1);
        }
        pad(depth);
        out += ']';
    } else if (auto* o = std::get_if<Object>(&v_)) {
        if (o->empty()) {
            out += "{}";
            return;
        }
        out += '{';
        for (size_t i = 0; i < o->size(); ++i) {
            if (i) out += ',';
            pad(depth + 1);
            escape_string(out, (*o)[i].first);
            out += indent > 0 ? ": " : ":";
            (*o)[i].second.dump_to(out, indent, depth + 1);
        }
        pad(depth);
        out += '}';
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open output file: " + path);
    out << text;
    if (!out) throw input_error("write failed: " + path);
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
    return out;
}

} // namespace wcm
