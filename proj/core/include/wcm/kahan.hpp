#pragma once

#include <complex>

namespace wcm {

// Kahan-compensated accumulator. Keeps long sums accurate to a few ulp
// independent of the term count.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    // Merge another accumulator (used when partial sums are combined in a
    // fixed partition order).
    void add(const KahanSum& other) {
        add(other.sum);
        add(other.c == 0.0 ? 0.0 : -other.c);
    }
    double value() const { return sum; }
};

struct KahanComplex {
    KahanSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    void add(const KahanComplex& other) {
        re.add(other.re);
        im.add(other.im);
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

} // namespace wcm
