#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rav {

struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};
struct math_error : std::runtime_error {
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

using BigRat = boost::multiprecision::cpp_rational;

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("int64 add overflow");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("int64 mul overflow");
    return r;
}
inline std::uint64_t umag(std::int64_t v) {
    return v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
}
} // namespace detail

// Exact rational on checked 64-bit storage. Denominator > 0, fraction reduced.
// Arithmetic throws rav::overflow_error instead of wrapping; callers that may
// legitimately exceed the range (linear algebra) retry with BigRat.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t n) : n_(n) {}
    Rat(std::int64_t n, std::int64_t d) : n_(n), d_(d) { normalize(); }

    static Rat from_big(const BigRat& b) {
        const auto& num = boost::multiprecision::numerator(b);
        const auto& den = boost::multiprecision::denominator(b);
        if (num < std::numeric_limits<std::int64_t>::min() || num > std::numeric_limits<std::int64_t>::max() ||
            den > std::numeric_limits<std::int64_t>::max())
            throw overflow_error("BigRat does not fit in Rat");
        return Rat(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    }
    BigRat to_big() const { return BigRat(n_, d_); }

    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }
    bool is_zero() const { return n_ == 0; }
    bool is_integer() const { return d_ == 1; }
    bool is_negative() const { return n_ < 0; }

    Rat operator-() const {
        Rat r;
        r.n_ = detail::checked_mul(n_, -1);
        r.d_ = d_;
        return r;
    }
    Rat& operator+=(const Rat& o) {
        // reduce cross terms by gcd of denominators first to delay overflow
        std::int64_t g = std::gcd(d_, o.d_);
        std::int64_t dl = d_ / g;
        std::int64_t dr = o.d_ / g;
        std::int64_t num = detail::checked_add(detail::checked_mul(n_, dr), detail::checked_mul(o.n_, dl));
        std::int64_t den = detail::checked_mul(detail::checked_mul(dl, dr), g);
        n_ = num;
        d_ = den;
        normalize();
        return *this;
    }
    Rat& operator-=(const Rat& o) { return *this += -o; }
    Rat& operator*=(const Rat& o) {
        std::int64_t g1 = std::gcd(detail::umag(n_), detail::umag(o.d_));
        std::int64_t g2 = std::gcd(detail::umag(o.n_), detail::umag(d_));
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        n_ = detail::checked_mul(n_ / g1, o.n_ / g2);
        d_ = detail::checked_mul(d_ / g2, o.d_ / g1);
        normalize();
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.n_ == 0) throw math_error("rational division by zero");
        Rat inv;
        inv.n_ = o.n_ < 0 ? detail::checked_mul(o.d_, -1) : o.d_;
        inv.d_ = o.n_ < 0 ? detail::checked_mul(o.n_, -1) : o.n_;
        return *this *= inv;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    std::string str() const {
        std::string s = std::to_string(n_);
        if (d_ != 1) s += "/" + std::to_string(d_);
        return s;
    }
    // Parses "p" or "p/q". Throws math_error on malformed input.
    static Rat parse(const std::string& text);

    std::size_t hash() const {
        std::size_t h = std::hash<std::int64_t>()(n_);
        return h * 1000003u ^ std::hash<std::int64_t>()(d_);
    }

private:
    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    void normalize() {
        if (d_ == 0) throw math_error("zero denominator");
        if (n_ == 0) {
            d_ = 1;
            return;
        }
        if (d_ < 0) {
            n_ = detail::checked_mul(n_, -1);
            d_ = detail::checked_mul(d_, -1);
        }
        std::uint64_t g = std::gcd(detail::umag(n_), detail::umag(d_));
        if (g > 1) {
            n_ /= static_cast<std::int64_t>(g);
            d_ /= static_cast<std::int64_t>(g);
        }
    }
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// C(n, k) as an exact integer; 0 for k < 0 or k > n (n >= 0 expected).
std::int64_t binomial(std::int64_t n, std::int64_t k);
// Falling factorial n (n-1) ... (n-d+1); empty product = 1.
std::int64_t falling(std::int64_t n, std::int64_t d);

} // namespace rav

template <>
struct std::hash<rav::Rat> {
    std::size_t operator()(const rav::Rat& r) const { return r.hash(); }
};
