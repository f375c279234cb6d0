#include <degen/errors.hpp>
#include <degen/rational.hpp>

#include <cctype>
#include <stdexcept>
#include <utility>

namespace degen
{

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    m_value = mpq_class(num, den);
    m_value.canonicalize();
}

Rational::Rational(mpq_class value) : m_value(std::move(value))
{
    m_value.canonicalize();
}

namespace
{

bool is_signed_digits(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

mpz_class parse_integer(std::string_view s)
{
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+') {
        digits.erase(0, 1);
    }
    return mpz_class(digits, 10);
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto s = trim(text);
    const auto slash = s.find('/');
    const auto num_part = trim(s.substr(0, slash));
    if (!is_signed_digits(num_part)) {
        throw parse_error("malformed rational '" + std::string(text) + "'");
    }
    mpz_class num = parse_integer(num_part);
    mpz_class den = 1;
    if (slash != std::string_view::npos) {
        const auto den_part = trim(s.substr(slash + 1));
        if (!is_signed_digits(den_part)) {
            throw parse_error("malformed rational '" + std::string(text) + "'");
        }
        den = parse_integer(den_part);
        if (den == 0) {
            throw parse_error("zero denominator in '" + std::string(text) + "'");
        }
    }
    return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const
{
    if (is_integer()) {
        return m_value.get_num().get_str();
    }
    return m_value.get_num().get_str() + "/" + m_value.get_den().get_str();
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw std::domain_error("rational division by zero");
    }
    m_value /= o.m_value;
    return *this;
}

Rational factorial(unsigned n)
{
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return Rational(out);
}

Rational pow(const Rational &base, unsigned exponent)
{
    Rational out(1);
    for (unsigned i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

} // namespace degen
