#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ultra {

/// Raised for malformed input: bad files, violated preconditions, unparsable numbers.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Integer = mpz_class;

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Thin value wrapper over GMP's mpq. Every arithmetic result is canonical, so
/// structural equality coincides with numeric equality.
class Rational {
public:
    Rational() = default;

    template <std::signed_integral T>
    Rational(T v) : value_(static_cast<long>(v)) {}

    template <std::unsigned_integral T>
    Rational(T v) : value_(static_cast<unsigned long>(v)) {}

    Rational(const Integer& num) : value_(num) {}

    /// Throws input_error if den == 0.
    Rational(const Integer& num, const Integer& den);

    /// Accepts "p", "p/q", "-p/q"; q must be a positive integer.
    static Rational parse(std::string_view text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational abs() const;
    Rational reciprocal() const;
    Rational pow(unsigned long exponent) const;

    /// "num" when the denominator is 1, else "num/den".
    std::string str() const;

    /// Decimal rendering rounded half away from zero to `digits` fractional digits.
    std::string decimal(int digits) const;

    Integer floor() const;
    Integer ceil() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& gmp() const { return value_; }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Integer part of the k-th root of a nonnegative integer.
Integer integer_root(const Integer& x, unsigned long k);

/// Rational value or +infinity.
class ExtendedBound {
public:
    ExtendedBound(Rational v) : value_(std::move(v)) {}
    template <std::integral T>
    ExtendedBound(T v) : value_(Rational(v)) {}

    static ExtendedBound infinity() { return ExtendedBound(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    /// Throws std::logic_error on +infinity.
    const Rational& value() const;

    std::string str() const;

    friend bool operator==(const ExtendedBound& a, const ExtendedBound& b) = default;
    friend std::strong_ordering operator<=>(const ExtendedBound& a, const ExtendedBound& b);

private:
    ExtendedBound() = default;
    std::optional<Rational> value_;
};

} // namespace ultra
