#pragma once

#include <stdexcept>
#include <string>

namespace wcm {

// Enumeration refused because it would exceed a configured work cap.
// Carries the knob name and the value that would let the call proceed.
class budget_error : public std::runtime_error {
public:
    budget_error(std::string param, double required, double cap)
        : std::runtime_error("budget exceeded: " + param + " needs cap >= " +
                             std::to_string(required) + " (configured " +
                             std::to_string(cap) + ")"),
          param_(std::move(param)), required_(required), cap_(cap) {}

    const std::string& param() const { return param_; }
    double required() const { return required_; }
    double cap() const { return cap_; }

private:
    std::string param_;
    double required_;
    double cap_;
};

// A requested geometric/arithmetic object does not exist (e.g. no positive
// real zero of a definite form).
class infeasibility_error : public std::runtime_error {
public:
    explicit infeasibility_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Malformed user input (bad JSON, asymmetric matrix, unknown keys, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Box construction failed (containment or positivity violated).
class box_error : public std::runtime_error {
public:
    explicit box_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Too many samples hit a near-degenerate gradient.
class conditioning_error : public std::runtime_error {
public:
    explicit conditioning_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace wcm
