#ifndef DEGEN_POLYNOMIAL_HPP
#define DEGEN_POLYNOMIAL_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <degen/rational.hpp>

namespace degen
{

using Exponents = std::vector<unsigned>;

// Polynomial F(z0, ..., z_{nvars-1}) with rational coefficients, kept as a sorted
// map so there are never duplicate exponent vectors or zero coefficients.
class PolynomialGerm
{
public:
    explicit PolynomialGerm(std::size_t nvars = 1);

    // ASCII syntax: terms separated by + or -, each an optional rational
    // coefficient followed by factors z<i> or z<i>^<k>; '*' and blanks are optional.
    // The variable count is max(nvars, largest index + 1).
    static PolynomialGerm parse(std::string_view text, std::size_t nvars = 0);

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    const std::map<Exponents, Rational> &terms() const noexcept
    {
        return m_terms;
    }

    // Adds c z^e; merges with an existing term and drops it if the sum cancels.
    void add_term(const Exponents &e, const Rational &c);

    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    unsigned total_degree() const;
    // Lowest total degree among the terms (0 for the zero polynomial).
    unsigned order() const;
    Rational constant_term() const;

    PolynomialGerm derivative(std::size_t var) const;

    std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

    std::string to_string() const;

    friend bool operator==(const PolynomialGerm &, const PolynomialGerm &) = default;

private:
    std::size_t m_nvars;
    std::map<Exponents, Rational> m_terms;
};

} // namespace degen

#endif
