#pragma once

// Exact scalar arithmetic: dyadic rationals Z[1/2], rationals Q, and odd
// prime fields F_p with p not in {2,7}.  Also the sixteenth-integer grading
// type used for degrees and z-exponents throughout the library.
//
// Bignum backend is boost::multiprecision (header-only).  Prime fields are
// single-word: p < 2^61.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fvoa {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct RejectedCharacteristic : std::domain_error {
    explicit RejectedCharacteristic(std::uint64_t p)
        : std::domain_error("characteristic " + std::to_string(p) + " rejected") {}
};

struct NonInvertibleDenominator : std::domain_error {
    NonInvertibleDenominator() : std::domain_error("denominator not invertible mod p") {}
};

struct ScalarParseError : std::runtime_error {
    explicit ScalarParseError(const std::string& s)
        : std::runtime_error("cannot parse scalar: \"" + s + "\"") {}
};

// ---------------------------------------------------------------------------
// Sixteenth-integer grading.  Value represented is value16/16; all degrees,
// mode numbers and z-exponents in this library are exact multiples of 1/16.

struct SixteenthInt {
    std::int64_t value16 = 0;

    constexpr SixteenthInt() = default;
    constexpr explicit SixteenthInt(std::int64_t v16) : value16(v16) {}
    static constexpr SixteenthInt from_units(std::int64_t units) { return SixteenthInt(16 * units); }
    static constexpr SixteenthInt from_halves(std::int64_t halves) { return SixteenthInt(8 * halves); }

    friend constexpr SixteenthInt operator+(SixteenthInt a, SixteenthInt b) { return SixteenthInt(a.value16 + b.value16); }
    friend constexpr SixteenthInt operator-(SixteenthInt a, SixteenthInt b) { return SixteenthInt(a.value16 - b.value16); }
    constexpr SixteenthInt operator-() const { return SixteenthInt(-value16); }
    SixteenthInt& operator+=(SixteenthInt b) { value16 += b.value16; return *this; }
    SixteenthInt& operator-=(SixteenthInt b) { value16 -= b.value16; return *this; }
    friend constexpr bool operator==(SixteenthInt a, SixteenthInt b) { return a.value16 == b.value16; }
    friend constexpr bool operator!=(SixteenthInt a, SixteenthInt b) { return a.value16 != b.value16; }
    friend constexpr bool operator<(SixteenthInt a, SixteenthInt b) { return a.value16 < b.value16; }
    friend constexpr bool operator<=(SixteenthInt a, SixteenthInt b) { return a.value16 <= b.value16; }
    friend constexpr bool operator>(SixteenthInt a, SixteenthInt b) { return a.value16 > b.value16; }
    friend constexpr bool operator>=(SixteenthInt a, SixteenthInt b) { return a.value16 >= b.value16; }

    Rational to_rational() const { return Rational(value16, 16); }

    // Renders exactly, reduced: "0", "1/2", "1/16", "-3/8", "2", ...
    std::string to_string() const {
        std::int64_t n = value16, d = 16;
        if (n == 0) return "0";
        while (n % 2 == 0 && d > 1) { n /= 2; d /= 2; }
        if (d == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(d);
    }
};

// ---------------------------------------------------------------------------
// Rational helpers for the dyadic subring Z[1/2].

inline bool rational_is_dyadic(const Rational& x) {
    Int d = denominator(x);
    if (d == 1) return true;
    return boost::multiprecision::lsb(d) == boost::multiprecision::msb(d);
}

// Largest k with x = m/2^k in lowest terms (0 for integers).  Pre: dyadic.
inline unsigned dyadic_two_exponent(const Rational& x) {
    Int d = denominator(x);
    if (d == 1) return 0;
    return boost::multiprecision::msb(d);
}

// ---------------------------------------------------------------------------
// Prime-field arithmetic, single word p < 2^61, p odd, p != 7.

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    return powmod_u64(a % p, p - 2, p);
}

inline std::uint64_t int_mod_u64(const Int& x, std::uint64_t p) {
    Int r = x % Int(p);
    if (r < 0) r += Int(p);
    return r.convert_to<std::uint64_t>();
}

} // namespace detail

// Validates the characteristic restriction: p prime, p not 2 or 7, p < 2^61.
inline void require_good_characteristic(std::uint64_t p) {
    if (p == 2 || p == 7) throw RejectedCharacteristic(p);
    if (p >= (1ull << 61)) throw std::domain_error("prime field modulus must be < 2^61");
    if (!detail::is_prime_u64(p)) throw std::domain_error(std::to_string(p) + " is not prime");
}

struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    static Fp zero(std::uint64_t prime) { return Fp(0, prime); }
    static Fp one(std::uint64_t prime) { return Fp(1, prime); }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) { check(a, b); std::uint64_t s = a.v + b.v; if (s >= a.p) s -= a.p; return Fp(s, a.p); }
    friend Fp operator-(Fp a, Fp b) { check(a, b); return Fp(a.v >= b.v ? a.v - b.v : a.p - (b.v - a.v), a.p); }
    friend Fp operator*(Fp a, Fp b) { check(a, b); return Fp(detail::mulmod_u64(a.v, b.v, a.p), a.p); }
    Fp operator-() const { return Fp(v == 0 ? 0 : p - v, p); }
    Fp inv() const {
        if (v == 0) throw std::domain_error("division by zero in F_p");
        return Fp(detail::invmod_u64(v, p), p);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
    Fp& operator+=(Fp b) { *this = *this + b; return *this; }
    Fp& operator-=(Fp b) { *this = *this - b; return *this; }
    Fp& operator*=(Fp b) { *this = *this * b; return *this; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v && a.p == b.p; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

private:
    static void check(Fp a, Fp b) {
        if (a.p != b.p) throw std::domain_error("mixed prime-field moduli");
    }
};

// Ring homomorphism Z[1/2] or Q -> F_p.  Throws NonInvertibleDenominator if
// p divides the denominator (never happens for dyadic x and odd p).
inline Fp reduce_rational_mod_p(const Rational& x, std::uint64_t p) {
    require_good_characteristic(p);
    std::uint64_t den = detail::int_mod_u64(denominator(x), p);
    if (den == 0) throw NonInvertibleDenominator();
    std::uint64_t num = detail::int_mod_u64(numerator(x), p);
    return Fp(detail::mulmod_u64(num, detail::invmod_u64(den, p), p), p);
}

// ---------------------------------------------------------------------------
// Tagged scalar: the value type exposed at serialization and CLI boundaries.
// Internal hot paths use Rational / Fp directly.

enum class RingTag { dyadic, rational, prime_field };

class Scalar {
public:
    Scalar() : tag_(RingTag::dyadic), q_(0) {}

    static Scalar make_dyadic(const Rational& q) {
        if (!rational_is_dyadic(q)) throw std::domain_error("value is not dyadic");
        Scalar s;
        s.tag_ = RingTag::dyadic;
        s.q_ = q;
        return s;
    }
    static Scalar make_rational(const Rational& q) {
        Scalar s;
        s.tag_ = RingTag::rational;
        s.q_ = q;
        return s;
    }
    static Scalar make_field(Fp f) {
        Scalar s;
        s.tag_ = RingTag::prime_field;
        s.f_ = f;
        return s;
    }

    RingTag tag() const { return tag_; }
    const Rational& rational_value() const {
        if (tag_ == RingTag::prime_field) throw std::domain_error("not a characteristic-0 scalar");
        return q_;
    }
    Fp field_value() const {
        if (tag_ != RingTag::prime_field) throw std::domain_error("not a prime-field scalar");
        return f_;
    }
    bool is_zero() const { return tag_ == RingTag::prime_field ? f_.is_zero() : q_.is_zero(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, '+'); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, '-'); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, '*'); }
    Scalar operator-() const {
        Scalar s = *this;
        if (s.tag_ == RingTag::prime_field) s.f_ = -s.f_;
        else s.q_ = -s.q_;
        return s;
    }

    // Division restricted to the ring: dyadic values divide only by +-2^k.
    Scalar divide_by_pow2(int k) const {
        if (tag_ == RingTag::prime_field) {
            Fp two(2, f_.p);
            Fp r = f_;
            for (int i = 0; i < k; ++i) r = r / two;
            return make_field(r);
        }
        Scalar s = *this;
        s.q_ = q_ / boost::multiprecision::pow(Int(2), k);
        return s;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.tag_ == RingTag::prime_field || b.tag_ == RingTag::prime_field)
            return a.tag_ == b.tag_ && a.f_ == b.f_;
        return a.q_ == b.q_; // dyadic and rational tags compare by value
    }

    // Serialization: dyadic "m/2^k", rational "p/q", prime field "n mod p".
    std::string to_string() const {
        switch (tag_) {
        case RingTag::dyadic: {
            if (q_.is_zero()) return "0";
            Int num = numerator(q_);
            unsigned k = dyadic_two_exponent(q_);
            return num.str() + "/2^" + std::to_string(k);
        }
        case RingTag::rational:
            return numerator(q_).str() + "/" + denominator(q_).str();
        case RingTag::prime_field:
            return std::to_string(f_.v) + " mod " + std::to_string(f_.p);
        }
        return {};
    }

    static Scalar parse(std::string_view s);

private:
    static Scalar combine(const Scalar& a, const Scalar& b, char op) {
        if ((a.tag_ == RingTag::prime_field) != (b.tag_ == RingTag::prime_field))
            throw std::domain_error("cannot mix prime-field and characteristic-0 scalars");
        Scalar s;
        if (a.tag_ == RingTag::prime_field) {
            s.tag_ = RingTag::prime_field;
            s.f_ = op == '+' ? a.f_ + b.f_ : op == '-' ? a.f_ - b.f_ : a.f_ * b.f_;
            return s;
        }
        // dyadic op dyadic stays dyadic (Z[1/2] closed under +,-,*)
        s.tag_ = (a.tag_ == RingTag::dyadic && b.tag_ == RingTag::dyadic) ? RingTag::dyadic : RingTag::rational;
        if (op == '+') s.q_ = a.q_ + b.q_;
        else if (op == '-') s.q_ = a.q_ - b.q_;
        else s.q_ = a.q_ * b.q_;
        return s;
    }

    RingTag tag_;
    Rational q_;
    Fp f_;
};

inline Scalar reduce_mod_p(const Scalar& x, std::uint64_t p) {
    if (x.tag() == RingTag::prime_field) throw std::domain_error("scalar already lives in a prime field");
    return Scalar::make_field(reduce_rational_mod_p(x.rational_value(), p));
}

inline Scalar Scalar::parse(std::string_view s) {
    auto fail = [&]() -> Scalar { throw ScalarParseError(std::string(s)); };
    if (s.empty()) return fail();
    if (auto pos = s.find(" mod "); pos != std::string_view::npos) {
        try {
            Int n(std::string(s.substr(0, pos)));
            std::uint64_t p = std::stoull(std::string(s.substr(pos + 5)));
            require_good_characteristic(p);
            return make_field(Fp(detail::int_mod_u64(n, p), p));
        } catch (const std::domain_error&) {
            throw;
        } catch (...) {
            return fail();
        }
    }
    if (auto pos = s.find("/2^"); pos != std::string_view::npos) {
        try {
            Int num(std::string(s.substr(0, pos)));
            int k = std::stoi(std::string(s.substr(pos + 3)));
            if (k < 0) return fail();
            return make_dyadic(Rational(num, boost::multiprecision::pow(Int(2), k)));
        } catch (...) {
            return fail();
        }
    }
    if (auto pos = s.find('/'); pos != std::string_view::npos) {
        try {
            Int num(std::string(s.substr(0, pos)));
            Int den(std::string(s.substr(pos + 1)));
            if (den <= 0) return fail();
            return make_rational(Rational(num, den));
        } catch (...) {
            return fail();
        }
    }
    try {
        Int num{std::string(s)};
        return make_dyadic(Rational(num, 1));
    } catch (...) {
        return fail();
    }
}

} // namespace fvoa
