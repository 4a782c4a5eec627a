#include <doctest.h>

#include "wcm/report.hpp"

using namespace wcm;

TEST_CASE("json writer preserves insertion order and formats doubles") {
    JsonValue v = JsonValue::object();
    v.set("zeta", 1);
    v.set("alpha", 0.1);
    v.set("mid", "x");
    std::string s = v.dump(0);
    CHECK(s == "{\"zeta\":1,\"alpha\":0.10000000000000001,\"mid\":\"x\"}\n");

    JsonValue arr = JsonValue::array();
    arr.push(1.5);
    arr.push(true);
    arr.push(nullptr);
    CHECK(arr.dump(0) == "[1.5,true,null]\n");
}

TEST_CASE("format_double uses 17 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1e-9) == "1.0000000000000001e-09");
    // round trip
    double x = 0.12345678901234567;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("deterministic dumps") {
    auto build = [] {
        JsonValue v = JsonValue::object();
        v.set("a", 3.14159);
        JsonValue inner = JsonValue::array();
        inner.push(2.0 / 3.0);
        inner.push(Rational(BigInt(2), BigInt(3)));
        v.set("b", std::move(inner));
        return v.dump();
    };
    CHECK(build() == build());
}

TEST_CASE("string escaping") {
    JsonValue v = JsonValue::object();
    v.set("k", "line\n\"quote\"\\");
    CHECK(v.dump(0) == "{\"k\":\"line\\n\\\"quote\\\"\\\\\"}\n");
}

TEST_CASE("rationals serialize as p/q strings") {
    JsonValue v = JsonValue::object();
    v.set("kappa", Rational(BigInt(1), BigInt(3)));
    CHECK(v.dump(0) == "{\"kappa\":\"1/3\"}\n");
}

TEST_CASE("csv lines match the json number rendering") {
    double x = 2.0 / 7.0;
    std::string csv = csv_line({format_double(x), "3"});
    CHECK(csv == format_double(x) + ",3\n");
}
