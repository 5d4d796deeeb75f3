#pragma once
#include "raviolo/rational.hpp"

namespace rav {

// Ground ring element a + b*xi where xi is the odd central parameter (xi^2 = 0).
// Every concrete free-field example sets xi = 0, but mode-algebra structure
// constants keep xi symbolic so universal central terms stay representable.
struct Scalar {
    Rat rat;
    Rat xi;

    Scalar() = default;
    Scalar(Rat r) : rat(r) {}
    Scalar(std::int64_t n) : rat(n) {}
    Scalar(Rat r, Rat x) : rat(r), xi(x) {}
    static Scalar xi_times(Rat coeff) { return Scalar(Rat(0), coeff); }

    bool is_zero() const { return rat.is_zero() && xi.is_zero(); }
    bool is_pure_rational() const { return xi.is_zero(); }

    Scalar operator-() const { return Scalar(-rat, -xi); }
    Scalar& operator+=(const Scalar& o) {
        rat += o.rat;
        xi += o.xi;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        rat -= o.rat;
        xi -= o.xi;
        return *this;
    }
    // (a1 + b1 xi)(a2 + b2 xi) = a1 a2 + (a1 b2 + b1 a2) xi, xi^2 = 0.
    Scalar& operator*=(const Scalar& o) {
        Rat x = rat * o.xi + xi * o.rat;
        rat *= o.rat;
        xi = x;
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator*(const Rat& a, Scalar b) {
        b.rat *= a;
        b.xi *= a;
        return b;
    }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.rat == b.rat && a.xi == b.xi; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const {
        if (xi.is_zero()) return rat.str();
        std::string x = xi.str() + "*xi";
        if (rat.is_zero()) return x;
        return rat.str() + (xi.is_negative() ? "" : "+") + x;
    }
};

} // namespace rav
