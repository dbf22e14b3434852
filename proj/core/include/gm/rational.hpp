#ifndef GM_RATIONAL_HPP
#define GM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "gm/errors.hpp"

namespace gm {

/// Exact rational number. Numerator and denominator are kept in lowest
/// terms with a positive denominator. Storage is a checked __int128, which
/// leaves ample headroom for the probability trees this library evaluates;
/// any operation that would leave the range throws OverflowError instead of
/// wrapping.
class Rational {
public:
    using Int = __int128;

    constexpr Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rational(int n) : num_(n), den_(1) {}       // NOLINT
    Rational(long long n, long long d) { assign(n, d); }

    static Rational fromInt128(Int n, Int d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    Int numerator() const { return num_; }
    Int denominator() const { return den_; }

    bool isZero() const { return num_ == 0; }
    bool isInteger() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const { return makeRaw(-num_, den_); }

    Rational& operator+=(const Rational& o) {
        // a/b + c/d with b,d reduced: use g = gcd(b,d) to keep intermediates small.
        Int g = gcdInt(den_, o.den_);
        Int bg = den_ / g;
        Int dg = o.den_ / g;
        Int n = addChecked(mulChecked(num_, dg), mulChecked(o.num_, bg));
        Int d = mulChecked(den_, dg);
        assign(n, d);
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        Int g1 = gcdInt(num_ < 0 ? -num_ : num_, o.den_);
        Int g2 = gcdInt(o.num_ < 0 ? -o.num_ : o.num_, den_);
        Int n = mulChecked(num_ / g1, o.num_ / g2);
        Int d = mulChecked(den_ / g2, o.den_ / g1);
        assign(n, d);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw Error("division by zero rational");
        Rational inv = makeRaw(o.num_ < 0 ? -o.den_ : o.den_, o.num_ < 0 ? -o.num_ : o.num_);
        return *this *= inv;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // Cross multiplication on reduced forms; checked to stay exact.
        Int lhs = mulChecked(a.num_, b.den_);
        Int rhs = mulChecked(b.num_, a.den_);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double toDouble() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p/q", or just "p" for integers. Lossless.
    std::string str() const {
        std::string s = intToString(num_);
        if (den_ != 1) {
            s += '/';
            s += intToString(den_);
        }
        return s;
    }

    /// Parses "p" or "p/q" (optional leading '-'). Throws ParseError.
    static Rational parse(std::string_view text);

    struct Hash {
        std::size_t operator()(const Rational& r) const {
            auto mix = [](std::uint64_t x) {
                x ^= x >> 33;
                x *= 0xff51afd7ed558ccdULL;
                x ^= x >> 33;
                return x;
            };
            auto n = static_cast<unsigned __int128>(r.num_);
            auto d = static_cast<unsigned __int128>(r.den_);
            std::uint64_t h = mix(static_cast<std::uint64_t>(n)) ^ mix(static_cast<std::uint64_t>(n >> 64) * 3 + 1);
            h ^= mix(static_cast<std::uint64_t>(d)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };

    static std::string intToString(Int v);

private:
    Int num_;
    Int den_;

    static Rational makeRaw(Int n, Int d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    void assign(Int n, Int d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        Int g = gcdInt(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = n;
        den_ = d;
    }

    static Int gcdInt(Int a, Int b) {
        while (b != 0) {
            Int t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    static constexpr Int intMax() {
        return static_cast<Int>((static_cast<unsigned __int128>(1) << 127) - 1);
    }

    static Int mulChecked(Int a, Int b) {
        if (a == 0 || b == 0) return 0;
        using U = unsigned __int128;
        U ua = a < 0 ? U(0) - U(a) : U(a);
        U ub = b < 0 ? U(0) - U(b) : U(b);
        if (ua > static_cast<U>(intMax()) / ub) throw OverflowError("rational multiply overflow");
        U prod = ua * ub;
        bool neg = (a < 0) != (b < 0);
        return neg ? -static_cast<Int>(prod) : static_cast<Int>(prod);
    }

    static Int addChecked(Int a, Int b) {
        if (b > 0 && a > intMax() - b) throw OverflowError("rational add overflow");
        if (b < 0 && a < -intMax() - b) throw OverflowError("rational add overflow");
        return a + b;
    }
};

inline Rational Rational::parse(std::string_view text) {
    auto parseInt = [](std::string_view s) -> Int {
        if (s.empty()) throw ParseError("empty integer in rational");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-') {
            neg = true;
            i = 1;
            if (s.size() == 1) throw ParseError("bare '-' is not a rational");
        }
        Int v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw ParseError("bad digit in rational: " + std::string(s));
            if (v > intMax() / 10) throw OverflowError("rational literal too large");
            v = v * 10 + (s[i] - '0');
        }
        return neg ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return makeRaw(parseInt(text), 1);
    Rational r;
    r.assign(parseInt(text.substr(0, slash)), parseInt(text.substr(slash + 1)));
    return r;
}

inline std::string Rational::intToString(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(0) - (unsigned __int128)v : (unsigned __int128)v;
    std::string digits;
    while (u > 0) {
        digits += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) digits += '-';
    return {digits.rbegin(), digits.rend()};
}

} // namespace gm

#endif
