#include "rpbis/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace rpbis {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

} // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

Rat Rat::from_decimal(const std::string& text) {
    // Digit-by-digit, never through binary floating point.
    std::size_t dot = text.find('.');
    std::string ip = dot == std::string::npos ? text : text.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (ip.empty() && fp.empty())
        throw std::invalid_argument("empty decimal literal");
    i128 num = 0;
    i128 den = 1;
    for (char c : ip) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal");
        num = num * 10 + (c - '0');
    }
    for (char c : fp) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal");
        num = num * 10 + (c - '0');
        den *= 10;
        if (den > INT64_MAX) throw std::overflow_error("decimal literal too precise");
    }
    return Rat(narrow(num), narrow(den));
}

Rat Rat::operator+(const Rat& o) const {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    // Reduce in 128 bits first so the narrowed values fit whenever the
    // reduced rational does.
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rat(narrow(n / a), narrow(d / a));
}

Rat Rat::operator-(const Rat& o) const {
    return *this + Rat(-o.num_, o.den_);
}

Rat Rat::operator*(const Rat& o) const {
    i128 n = i128(num_) * o.num_;
    i128 d = i128(den_) * o.den_;
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rat(narrow(n / a), narrow(d / a));
}

bool Rat::operator<(const Rat& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rat::str_decimal() const {
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return str();
    if (den_ == 1) return std::to_string(num_);
    // Scale to 10^k with k = max(twos, fives).
    int k = twos > fives ? twos : fives;
    i128 scaled = num_;
    for (int i = 0; i < k - twos; ++i) scaled *= 2;
    for (int i = 0; i < k - fives; ++i) scaled *= 5;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits;
    for (i128 v = scaled; v > 0 || digits.empty(); v /= 10)
        digits.insert(digits.begin(), char('0' + int(v % 10)));
    while ((int)digits.size() <= k) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - k, ".");
    return (neg ? "-" : "") + digits;
}

std::size_t Rat::hash() const {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    h ^= std::hash<std::int64_t>{}(den_) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
}

} // namespace rpbis
