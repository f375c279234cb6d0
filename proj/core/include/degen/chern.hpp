#ifndef DEGEN_CHERN_HPP
#define DEGEN_CHERN_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <degen/rational.hpp>
#include <degen/series.hpp>

namespace degen
{

// Element of Q[c2]/(c2^{T+1}); index k holds the coefficient of c2^k.
// Also used for Q[x]/(x^{T+1}) where the generator is a single class.
class GradedElement
{
public:
    explicit GradedElement(std::size_t truncation = 0);
    explicit GradedElement(std::vector<Rational> coeffs);

    static GradedElement constant(const Rational &c, std::size_t truncation);
    static GradedElement generator_power(std::size_t k, const Rational &c, std::size_t truncation);

    std::size_t truncation() const noexcept
    {
        return m_coeffs.size() - 1;
    }
    const std::vector<Rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    // Zero beyond the truncation.
    Rational coeff(std::size_t k) const;

    GradedElement &operator+=(const GradedElement &o);
    GradedElement &operator-=(const GradedElement &o);
    GradedElement &operator*=(const GradedElement &o);
    GradedElement &operator*=(const Rational &c);

    friend GradedElement operator+(GradedElement a, const GradedElement &b)
    {
        return a += b;
    }
    friend GradedElement operator-(GradedElement a, const GradedElement &b)
    {
        return a -= b;
    }
    friend GradedElement operator*(GradedElement a, const GradedElement &b)
    {
        return a *= b;
    }
    friend GradedElement operator*(GradedElement a, const Rational &c)
    {
        return a *= c;
    }
    friend GradedElement operator*(const Rational &c, GradedElement a)
    {
        return a *= c;
    }
    friend bool operator==(const GradedElement &, const GradedElement &) = default;

    std::string to_string() const;
    friend std::ostream &operator<<(std::ostream &os, const GradedElement &g)
    {
        return os << g.to_string();
    }

private:
    std::vector<Rational> m_coeffs;
};

// Polynomial in c1(F), F = O(1) on P(N), before the relation c1(F)^2 = -c2 is applied.
// Index j holds the coefficient of c1(F)^j.
struct FiberClassElement {
    std::vector<Rational> coeffs;
    std::size_t truncation = 0;

    static FiberClassElement from_series(const TruncatedSeries &f, std::size_t truncation);
};

// a + b c1(F) with a, b in Q[c2]: the normal form modulo c1(F)^2 + c2 = 0.
struct FiberNormalForm {
    GradedElement constant_part;
    GradedElement linear_part;
};

FiberNormalForm reduce_fiber_relation(const FiberClassElement &f);

// p_* c1(F)^m: (-1)^k c2^k for m = 2k + 1, zero for even m.
GradedElement pushforward_power(std::size_t m, std::size_t truncation);

// Linear extension of pushforward_power: sum_k (-1)^k a_{2k+1} c2^k.
GradedElement pushforward(const FiberClassElement &f);

// Bivariate polynomial in the Chern roots x1, x2; key (i, j) holds the coefficient of x1^i x2^j.
// Only used transiently to feed symmetric_reduce.
using TwoRootPolynomial = std::map<std::pair<std::size_t, std::size_t>, Rational>;

// g(x1) h(x2) truncated to total degree <= max_degree.
TwoRootPolynomial two_root_product(const TruncatedSeries &g, const TruncatedSeries &h, std::size_t max_degree);
// g(x1) + g(x2) truncated to total degree <= max_degree.
TwoRootPolynomial two_root_sum(const TruncatedSeries &g, std::size_t max_degree);

// Rewrites a symmetric polynomial in x1, x2 under x1 + x2 = 0, x1 x2 = c2.
// Throws not_symmetric if the input is not symmetric or leaves an odd remainder.
GradedElement symmetric_reduce(const TwoRootPolynomial &p, std::size_t truncation);

// Td(N) = Td(x1) Td(x2) for a rank-2 bundle with c1(N) = 0.
GradedElement todd_rank2(std::size_t truncation);

// E(N) = E(x1) + E(x2) from the additive genus generating function, with c1(N) = 0.
GradedElement e_genus_rank2(std::size_t truncation);

// -2 Td(N) p_*((1 - Td^{-1}(F))/c1(F)), the projective-bundle expression of E(N).
GradedElement e_genus_via_pushforward(std::size_t truncation);

// Characteristic numbers on the critical locus, keyed by the degrees of the three factors
// in the integrand Td(T Sigma) E(N) ch(xi).
struct CharMonomial {
    std::size_t td_degree = 0; // complex degree of the Td(T Sigma) piece
    std::size_t c2_power = 0;  // power of c2(N), complex degree 2k
    std::size_t ch_degree = 0; // complex degree of the ch(xi) piece

    friend auto operator<=>(const CharMonomial &, const CharMonomial &) = default;
};

struct CharNumbers {
    // Complex dimension of the critical locus inside the singular fiber.
    std::size_t dimension = 0;
    // Integral of Td_j(T Sigma) c2(N)^k ch_l(xi) over the locus. For l = 0 the
    // rank factor is not included; theorem71_coefficient multiplies by rk(xi).
    std::map<CharMonomial, Rational> numbers;

    // All monomials of total complex degree == dimension.
    std::vector<CharMonomial> required_monomials() const;
};

/// Log|t|^2 coefficient for critical loci of quadric rank 2:
/// (1/2) * integral of -Td(T Sigma) E(N) ch(xi).
/// Throws missing_char_number if a monomial of top degree is absent.
Rational theorem71_coefficient(const CharNumbers &data, long rank_xi);

/// Log|t|^2 coefficient for isolated critical points:
/// {(1/Td(x)) (Td(x) - 1)/x}|_{x^n} * rk(xi) * sum of Milnor numbers,
/// which equals (-1)^n/(n+2)! rk(xi) sum(mu).
Rational theorem81_coefficient(std::size_t fiber_dimension, long rank_xi, long milnor_sum);

// {(1/Td(x)) (Td(x) - 1)/x}|_{x^n}
Rational isolated_point_genus_coefficient(std::size_t n);

} // namespace degen

#endif
