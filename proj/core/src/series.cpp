#include <degen/errors.hpp>
#include <degen/series.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace degen
{

TruncatedSeries::TruncatedSeries(std::size_t order) : m_coeffs(order + 1, Rational(0)) {}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.empty()) {
        throw std::invalid_argument("a truncated series needs at least one coefficient");
    }
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Rational> coeffs, std::size_t order)
    : m_coeffs(order + 1, Rational(0))
{
    std::size_t k = 0;
    for (const auto &c : coeffs) {
        if (k > order) {
            break;
        }
        m_coeffs[k++] = c;
    }
}

TruncatedSeries TruncatedSeries::constant(const Rational &c, std::size_t order)
{
    return monomial(c, 0, order);
}

TruncatedSeries TruncatedSeries::monomial(const Rational &c, std::size_t degree, std::size_t order)
{
    TruncatedSeries out(order);
    if (degree <= order) {
        out.m_coeffs[degree] = c;
    }
    return out;
}

bool TruncatedSeries::is_zero() const
{
    return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const Rational &c) { return c.is_zero(); });
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const
{
    std::vector<Rational> c(order + 1, Rational(0));
    std::copy_n(m_coeffs.begin(), std::min(order, this->order()) + 1, c.begin());
    return TruncatedSeries(std::move(c));
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &o)
{
    m_coeffs.resize(std::min(order(), o.order()) + 1);
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        m_coeffs[k] += o.m_coeffs[k];
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &o)
{
    m_coeffs.resize(std::min(order(), o.order()) + 1);
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        m_coeffs[k] -= o.m_coeffs[k];
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(const TruncatedSeries &o)
{
    const std::size_t n = std::min(order(), o.order());
    std::vector<Rational> out(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
        if (m_coeffs[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j <= n; ++j) {
            out[i + j] += m_coeffs[i] * o.m_coeffs[j];
        }
    }
    m_coeffs = std::move(out);
    return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(const Rational &c)
{
    for (auto &a : m_coeffs) {
        a *= c;
    }
    return *this;
}

std::string TruncatedSeries::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        if (k) {
            out += ", ";
        }
        out += m_coeffs[k].to_string();
    }
    return out;
}

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a + b;
}

TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a * b;
}

TruncatedSeries series_scale(const TruncatedSeries &a, const Rational &c)
{
    return a * c;
}

TruncatedSeries series_reciprocal(const TruncatedSeries &a)
{
    if (a[0].is_zero()) {
        throw zero_constant_term();
    }
    // b_0 = 1/a_0, b_k = -(1/a_0) sum_{j=1..k} a_j b_{k-j}
    const std::size_t n = a.order();
    const Rational inv0 = Rational(1) / a[0];
    std::vector<Rational> b(n + 1, Rational(0));
    b[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            if (!a[j].is_zero()) {
                acc += a[j] * b[k - j];
            }
        }
        b[k] = -acc * inv0;
    }
    return TruncatedSeries(std::move(b));
}

TruncatedSeries series_reflect(const TruncatedSeries &a)
{
    std::vector<Rational> c = a.coeffs();
    for (std::size_t k = 1; k < c.size(); k += 2) {
        c[k] = -c[k];
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries divide_by_x(const TruncatedSeries &a)
{
    if (!a[0].is_zero()) {
        throw std::invalid_argument("divide_by_x: constant term must vanish");
    }
    if (a.order() == 0) {
        throw std::invalid_argument("divide_by_x: order-0 series carries no information after division");
    }
    return TruncatedSeries(std::vector<Rational>(a.coeffs().begin() + 1, a.coeffs().end()));
}

Rational coefficient_of(const TruncatedSeries &f, std::size_t m)
{
    if (m > f.order()) {
        throw degree_out_of_range(m, f.order());
    }
    return f[m];
}

TruncatedSeries td_inverse_series(std::size_t order)
{
    std::vector<Rational> c(order + 1, Rational(0));
    Rational fact(1);
    for (std::size_t k = 0; k <= order; ++k) {
        fact *= Rational(static_cast<long>(k + 1));
        c[k] = Rational(k % 2 == 0 ? 1 : -1) / fact;
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries td_series(std::size_t order)
{
    return series_reciprocal(td_inverse_series(order));
}

TruncatedSeries minus_part(const TruncatedSeries &f)
{
    // (f(x) - f(-x)) has only odd terms 2 a_{2k+1} x^{2k+1}; dividing by 2x keeps a_{2k+1} at x^{2k}.
    TruncatedSeries diff = (f - series_reflect(f)) * Rational(1, 2);
    if (f.order() == 0) {
        return TruncatedSeries::constant(Rational(0), 0);
    }
    return divide_by_x(diff);
}

TruncatedSeries e_genus_kernel(std::size_t order)
{
    // One extra order is consumed by the division.
    return divide_by_x(td_inverse_series(order + 1) - TruncatedSeries::constant(Rational(1), order + 1));
}

TruncatedSeries e_series(std::size_t order)
{
    const TruncatedSeries td = td_series(order);
    const TruncatedSeries f_minus = minus_part(e_genus_kernel(order + 1));
    return (td * series_reflect(td) * f_minus).truncated(order);
}

TruncatedSeries log_coefficient_series(std::size_t order)
{
    return divide_by_x(TruncatedSeries::constant(Rational(1), order + 1) - td_inverse_series(order + 1));
}

} // namespace degen
