#ifndef DEGEN_RATIONAL_HPP
#define DEGEN_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace degen
{

// Exact rational number, always in lowest terms with a positive denominator.
class Rational
{
public:
    Rational() = default;
    Rational(long value) : m_value(value) {}
    Rational(int value) : m_value(value) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class &value) : m_value(value) {}
    explicit Rational(mpq_class value);

    // Accepts "p", "p/q", optionally signed, surrounding whitespace allowed.
    static Rational parse(std::string_view text);

    const mpq_class &raw() const noexcept
    {
        return m_value;
    }
    mpz_class numerator() const
    {
        return m_value.get_num();
    }
    mpz_class denominator() const
    {
        return m_value.get_den();
    }

    bool is_zero() const noexcept
    {
        return sgn(m_value) == 0;
    }
    bool is_integer() const
    {
        return m_value.get_den() == 1;
    }
    int sign() const noexcept
    {
        return sgn(m_value);
    }
    double to_double() const
    {
        return m_value.get_d();
    }

    // "p" for integers, "p/q" otherwise.
    std::string to_string() const;

    Rational &operator+=(const Rational &o)
    {
        m_value += o.m_value;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    // Throws std::domain_error on division by zero.
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    friend Rational operator-(const Rational &a)
    {
        return Rational(mpq_class(-a.m_value));
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.to_string();
    }

private:
    mpq_class m_value{0};
};

Rational factorial(unsigned n);
Rational pow(const Rational &base, unsigned exponent);

} // namespace degen

#endif
