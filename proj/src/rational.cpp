#include "ultra/rational.hpp"

#include <cctype>

namespace ultra {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view digits)
{
    return Integer(std::string(digits), 10);
}

} // namespace

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw input_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw input_error("malformed rational '" + std::string(text) + "'");
    Integer n = parse_integer(num);
    Integer d = parse_integer(den);
    if (d == 0)
        throw input_error("rational with zero denominator '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rational(n, d);
}

Rational Rational::abs() const
{
    Rational r;
    r.value_ = ::abs(value_);
    return r;
}

Rational Rational::reciprocal() const
{
    if (is_zero())
        throw std::domain_error("reciprocal of zero");
    return Rational(1) / *this;
}

Rational Rational::pow(unsigned long exponent) const
{
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return Rational(n, d);
}

std::string Rational::str() const
{
    if (is_integer())
        return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const
{
    if (digits < 0)
        digits = 0;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round half away from zero on |value| * 10^digits
    mpq_class scaled = ::abs(value_) * scale;
    Integer twice = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = twice.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sign() < 0 && twice != 0)
        s.insert(0, "-");
    return s;
}

Integer Rational::floor() const
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

Integer Rational::ceil() const
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

Rational& Rational::operator+=(const Rational& o)
{
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const
{
    Rational r;
    r.value_ = -value_;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

Rational min(const Rational& a, const Rational& b)
{
    return b < a ? b : a;
}

Rational max(const Rational& a, const Rational& b)
{
    return a < b ? b : a;
}

Integer integer_root(const Integer& x, unsigned long k)
{
    if (x < 0)
        throw std::domain_error("integer_root of a negative number");
    Integer r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

const Rational& ExtendedBound::value() const
{
    if (!value_)
        throw std::logic_error("value() on an infinite bound");
    return *value_;
}

std::string ExtendedBound::str() const
{
    return value_ ? value_->str() : std::string("∞");
}

std::strong_ordering operator<=>(const ExtendedBound& a, const ExtendedBound& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite())
            return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value() <=> b.value();
}

} // namespace ultra
