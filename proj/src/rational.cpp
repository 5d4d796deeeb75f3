#include "raviolo/rational.hpp"

#include <cctype>
#include <ostream>

namespace rav {

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat Rat::parse(const std::string& text) {
    auto bad = [&] { throw math_error("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    std::size_t slash = text.find('/');
    auto parse_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty()) bad();
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
            if (i == s.size()) bad();
        }
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
            v = detail::checked_add(detail::checked_mul(v, 10), s[i] - '0');
        }
        return neg ? -v : v;
    };
    if (slash == std::string::npos) return Rat(parse_int(text));
    return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n-k+i) is divisible by i once folded in ascending order
        r = detail::checked_mul(r, n - k + i);
        r /= i;
    }
    return r;
}

std::int64_t falling(std::int64_t n, std::int64_t d) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < d; ++i) r = detail::checked_mul(r, n - i);
    return r;
}

} // namespace rav
