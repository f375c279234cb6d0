#include <degen/chern.hpp>
#include <degen/errors.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace degen
{

GradedElement::GradedElement(std::size_t truncation) : m_coeffs(truncation + 1, Rational(0)) {}

GradedElement::GradedElement(std::vector<Rational> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.empty()) {
        throw std::invalid_argument("graded element needs at least one coefficient");
    }
}

GradedElement GradedElement::constant(const Rational &c, std::size_t truncation)
{
    return generator_power(0, c, truncation);
}

GradedElement GradedElement::generator_power(std::size_t k, const Rational &c, std::size_t truncation)
{
    GradedElement out(truncation);
    if (k <= truncation) {
        out.m_coeffs[k] = c;
    }
    return out;
}

Rational GradedElement::coeff(std::size_t k) const
{
    return k < m_coeffs.size() ? m_coeffs[k] : Rational(0);
}

GradedElement &GradedElement::operator+=(const GradedElement &o)
{
    m_coeffs.resize(std::min(truncation(), o.truncation()) + 1);
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        m_coeffs[k] += o.m_coeffs[k];
    }
    return *this;
}

GradedElement &GradedElement::operator-=(const GradedElement &o)
{
    m_coeffs.resize(std::min(truncation(), o.truncation()) + 1);
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        m_coeffs[k] -= o.m_coeffs[k];
    }
    return *this;
}

GradedElement &GradedElement::operator*=(const GradedElement &o)
{
    const std::size_t t = std::min(truncation(), o.truncation());
    std::vector<Rational> out(t + 1, Rational(0));
    for (std::size_t i = 0; i <= t; ++i) {
        for (std::size_t j = 0; i + j <= t; ++j) {
            out[i + j] += m_coeffs[i] * o.m_coeffs[j];
        }
    }
    m_coeffs = std::move(out);
    return *this;
}

GradedElement &GradedElement::operator*=(const Rational &c)
{
    for (auto &a : m_coeffs) {
        a *= c;
    }
    return *this;
}

std::string GradedElement::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
        if (m_coeffs[k].is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + m_coeffs[k].to_string() + ")";
        if (k == 1) {
            out += " c2";
        } else if (k > 1) {
            out += " c2^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

FiberClassElement FiberClassElement::from_series(const TruncatedSeries &f, std::size_t truncation)
{
    // c1(F)^m with m > 2 truncation + 1 pushes forward beyond c2^truncation.
    const std::size_t keep = std::min(f.order(), 2 * truncation + 1);
    FiberClassElement out;
    out.coeffs.assign(f.coeffs().begin(), f.coeffs().begin() + static_cast<std::ptrdiff_t>(keep) + 1);
    out.truncation = truncation;
    return out;
}

FiberNormalForm reduce_fiber_relation(const FiberClassElement &f)
{
    FiberNormalForm out{GradedElement(f.truncation), GradedElement(f.truncation)};
    // c1(F)^{2k} = (-c2)^k, c1(F)^{2k+1} = (-c2)^k c1(F)
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        const std::size_t k = j / 2;
        if (k > f.truncation || f.coeffs[j].is_zero()) {
            continue;
        }
        const Rational term = (k % 2 == 0 ? f.coeffs[j] : -f.coeffs[j]);
        auto &target = (j % 2 == 0) ? out.constant_part : out.linear_part;
        target += GradedElement::generator_power(k, term, f.truncation);
    }
    return out;
}

GradedElement pushforward_power(std::size_t m, std::size_t truncation)
{
    if (m % 2 == 0) {
        return GradedElement(truncation);
    }
    const std::size_t k = m / 2;
    return GradedElement::generator_power(k, Rational(k % 2 == 0 ? 1 : -1), truncation);
}

GradedElement pushforward(const FiberClassElement &f)
{
    GradedElement out(f.truncation);
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (!f.coeffs[j].is_zero()) {
            out += pushforward_power(j, f.truncation) * f.coeffs[j];
        }
    }
    return out;
}

TwoRootPolynomial two_root_product(const TruncatedSeries &g, const TruncatedSeries &h, std::size_t max_degree)
{
    TwoRootPolynomial out;
    for (std::size_t i = 0; i <= std::min(g.order(), max_degree); ++i) {
        if (g[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j <= std::min(h.order(), max_degree - i); ++j) {
            if (!h[j].is_zero()) {
                out[{i, j}] += g[i] * h[j];
            }
        }
    }
    return out;
}

TwoRootPolynomial two_root_sum(const TruncatedSeries &g, std::size_t max_degree)
{
    TwoRootPolynomial out;
    for (std::size_t i = 0; i <= std::min(g.order(), max_degree); ++i) {
        if (g[i].is_zero()) {
            continue;
        }
        out[{i, 0}] += g[i];
        out[{0, i}] += g[i];
    }
    return out;
}

GradedElement symmetric_reduce(const TwoRootPolynomial &p, std::size_t truncation)
{
    for (const auto &[key, c] : p) {
        const auto it = p.find({key.second, key.first});
        const Rational mirror = it == p.end() ? Rational(0) : it->second;
        if (mirror != c) {
            throw not_symmetric("polynomial in Chern roots is not symmetric at x1^" + std::to_string(key.first)
                                + " x2^" + std::to_string(key.second));
        }
    }
    // x2 = -x1, then x1^2 = -x1 x2 = -c2.
    std::map<std::size_t, Rational> by_degree;
    for (const auto &[key, c] : p) {
        const auto [i, j] = key;
        by_degree[i + j] += (j % 2 == 0) ? c : -c;
    }
    GradedElement out(truncation);
    for (const auto &[d, c] : by_degree) {
        if (c.is_zero()) {
            continue;
        }
        if (d % 2 == 1) {
            throw not_symmetric("odd remainder in degree " + std::to_string(d) + " after setting c1 = 0");
        }
        const std::size_t k = d / 2;
        if (k <= truncation) {
            out += GradedElement::generator_power(k, k % 2 == 0 ? c : -c, truncation);
        }
    }
    return out;
}

GradedElement todd_rank2(std::size_t truncation)
{
    const std::size_t deg = 2 * truncation;
    const TruncatedSeries td = td_series(deg);
    return symmetric_reduce(two_root_product(td, td, deg), truncation);
}

GradedElement e_genus_rank2(std::size_t truncation)
{
    const std::size_t deg = 2 * truncation;
    return symmetric_reduce(two_root_sum(e_series(deg), deg), truncation);
}

GradedElement e_genus_via_pushforward(std::size_t truncation)
{
    // (1 - Td^{-1}(x))/x as a class in c1(F).
    const std::size_t order = 2 * truncation + 1;
    const TruncatedSeries kernel
        = divide_by_x(TruncatedSeries::constant(Rational(1), order + 1) - td_inverse_series(order + 1));
    const GradedElement pushed = pushforward(FiberClassElement::from_series(kernel, truncation));
    return todd_rank2(truncation) * pushed * Rational(-2);
}

std::vector<CharMonomial> CharNumbers::required_monomials() const
{
    std::vector<CharMonomial> out;
    for (std::size_t k = 0; 2 * k <= dimension; ++k) {
        for (std::size_t j = 0; j + 2 * k <= dimension; ++j) {
            out.push_back({j, k, dimension - 2 * k - j});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational theorem71_coefficient(const CharNumbers &data, long rank_xi)
{
    const GradedElement e = e_genus_rank2(data.dimension / 2);
    Rational integral(0);
    for (const auto &m : data.required_monomials()) {
        const auto it = data.numbers.find(m);
        if (it == data.numbers.end()) {
            throw missing_char_number("missing characteristic number {td: " + std::to_string(m.td_degree)
                                      + ", c2: " + std::to_string(m.c2_power)
                                      + ", ch: " + std::to_string(m.ch_degree) + "}");
        }
        Rational term = e.coeff(m.c2_power) * it->second;
        if (m.ch_degree == 0) {
            term *= Rational(rank_xi);
        }
        integral += term;
    }
    return -integral * Rational(1, 2);
}

Rational isolated_point_genus_coefficient(std::size_t n)
{
    // (1/Td(x)) (Td(x) - 1)/x
    const std::size_t order = n + 1;
    const TruncatedSeries td = td_series(order);
    const TruncatedSeries quotient = divide_by_x(td - TruncatedSeries::constant(Rational(1), order));
    return coefficient_of(series_reciprocal(td.truncated(n)) * quotient, n);
}

Rational theorem81_coefficient(std::size_t fiber_dimension, long rank_xi, long milnor_sum)
{
    if (fiber_dimension < 1) {
        throw std::invalid_argument("fiber dimension must be at least 1");
    }
    if (milnor_sum < 0) {
        throw std::invalid_argument("Milnor number sum must be non-negative");
    }
    return isolated_point_genus_coefficient(fiber_dimension) * Rational(rank_xi) * Rational(milnor_sum);
}

} // namespace degen
