// Exact numbers a + b*sqrt(d) with rational a, b and squarefree d > 1 (d = 0 when b = 0).
#pragma once

#include "rootsys.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sat {

struct Surd {
    Q a = 0, b = 0;
    long long d = 0;

    Surd() = default;
    Surd(Q r) : a(r) {}
    Surd(Q a_, Q b_, long long d_);

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    double value() const;
};

Surd operator+(const Surd& x, const Surd& y);
Surd operator-(const Surd& x);
Surd operator-(const Surd& x, const Surd& y);
Surd operator*(const Surd& x, const Surd& y);   // throws when the radicands differ
bool operator==(const Surd& x, const Surd& y);

// "p/q", "a+b*sqrt(d)", "sqrt(d)", "-sqrt(d)/2" style input; throws std::invalid_argument
Surd parse_surd(const std::string& text);
Q parse_rational(const std::string& text);
std::string to_string(const Surd& s);

}  // namespace sat
