/* rational.hpp -- exact rational arithmetic for probabilities */
#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace rpbis {

// Exact rational on 64-bit components, always kept in lowest terms with a
// positive denominator. All probability arithmetic in the library goes
// through this type; there is no floating point anywhere in core logic.
// Intermediate products are computed in 128 bits and overflow of the reduced
// result throws, rather than silently wrapping.
class Rat {
  public:
    constexpr Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t num, std::int64_t den);

    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }

    // Exact conversion of a decimal literal such as "0.25" or "1.0".
    static Rat from_decimal(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }
    bool is_negative() const { return num_ < 0; }
    // True iff the value lies in [0, 1].
    bool is_prob() const { return num_ >= 0 && num_ <= den_; }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    // Canonical text: "0", "1", "7/10". Round-trips through the parsers.
    std::string str() const;
    // Decimal text when the denominator is of the form 2^a*5^b ("0.35"),
    // canonical fraction otherwise.
    std::string str_decimal() const;

    std::size_t hash() const;

  private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace rpbis
