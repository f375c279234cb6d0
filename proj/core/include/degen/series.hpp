#ifndef DEGEN_SERIES_HPP
#define DEGEN_SERIES_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <degen/rational.hpp>

namespace degen
{

inline constexpr std::size_t default_series_order = 16;
inline constexpr std::size_t max_series_order = 64;

// Formal power series a_0 + a_1 x + ... + a_N x^N over the rationals,
// truncated at order N. Binary operations truncate to the smaller order.
class TruncatedSeries
{
public:
    // The zero series of the given order.
    explicit TruncatedSeries(std::size_t order = default_series_order);
    // Coefficients a_0..a_N; order is coeffs.size() - 1 (coeffs must be non-empty).
    explicit TruncatedSeries(std::vector<Rational> coeffs);
    TruncatedSeries(std::initializer_list<Rational> coeffs, std::size_t order);

    static TruncatedSeries constant(const Rational &c, std::size_t order);
    static TruncatedSeries monomial(const Rational &c, std::size_t degree, std::size_t order);

    std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1;
    }
    const std::vector<Rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    // Unchecked; see coefficient_of for the checked accessor.
    const Rational &operator[](std::size_t k) const
    {
        return m_coeffs[k];
    }

    bool is_zero() const;
    TruncatedSeries truncated(std::size_t order) const;

    TruncatedSeries &operator+=(const TruncatedSeries &o);
    TruncatedSeries &operator-=(const TruncatedSeries &o);
    TruncatedSeries &operator*=(const TruncatedSeries &o);
    TruncatedSeries &operator*=(const Rational &c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a += b;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a -= b;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a *= b;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational &c)
    {
        return a *= c;
    }
    friend TruncatedSeries operator*(const Rational &c, TruncatedSeries a)
    {
        return a *= c;
    }
    friend TruncatedSeries operator-(TruncatedSeries a)
    {
        return a *= Rational(-1);
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

    std::string to_string() const;
    friend std::ostream &operator<<(std::ostream &os, const TruncatedSeries &s)
    {
        return os << s.to_string();
    }

private:
    std::vector<Rational> m_coeffs;
};

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries series_scale(const TruncatedSeries &a, const Rational &c);

// Multiplicative inverse; throws zero_constant_term if a_0 = 0.
TruncatedSeries series_reciprocal(const TruncatedSeries &a);

// f(x) -> f(-x).
TruncatedSeries series_reflect(const TruncatedSeries &a);

// f(x) -> f(x)/x. The constant term must vanish; the result has order N - 1.
TruncatedSeries divide_by_x(const TruncatedSeries &a);

// Checked coefficient access; throws degree_out_of_range if m > order.
Rational coefficient_of(const TruncatedSeries &f, std::size_t m);

/// (1 - e^{-x})/x, whose x^k coefficient is (-1)^k/(k+1)!.
TruncatedSeries td_inverse_series(std::size_t order = default_series_order);

/// Todd generating function x/(1 - e^{-x}), built as the reciprocal of td_inverse_series.
TruncatedSeries td_series(std::size_t order = default_series_order);

/// f_-(x) = (f(x) - f(-x))/(2x). The coefficient of x^{2k} is a_{2k+1};
/// odd coefficients are exactly zero. Order of the result is N - 1.
TruncatedSeries minus_part(const TruncatedSeries &f);

/// f(x) = (Td^{-1}(x) - 1)/x, the series whose odd part drives the E-genus.
TruncatedSeries e_genus_kernel(std::size_t order = default_series_order);

/// Generating function of the additive E-genus,
/// E(x) = Td(x) Td(-x)/(2x) * (f(x) - f(-x)) = Td(x) Td(-x) f_-(x).
TruncatedSeries e_series(std::size_t order = default_series_order);

/// 1/x - (1 - e^{-x})/x^2 as the honest power series (1 - Td^{-1}(x))/x.
TruncatedSeries log_coefficient_series(std::size_t order = default_series_order);

} // namespace degen

#endif
