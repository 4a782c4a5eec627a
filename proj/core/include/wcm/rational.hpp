#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace wcm {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational on arbitrary-precision integers, always kept normalized
// (den > 0, gcd(num, den) = 1). Used wherever identities must hold exactly
// rather than to a tolerance.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return num_ * o.den_ < o.num_ * den_;
    }

    double to_double() const;

    // "p/q" (or "p" when q = 1); inverse of parse().
    std::string str() const;
    static Rational parse(const std::string& s);

private:
    void normalize();
    BigInt num_, den_;
};

} // namespace wcm
