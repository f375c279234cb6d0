#ifndef DEGEN_MILNOR_HPP
#define DEGEN_MILNOR_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <degen/polynomial.hpp>
#include <degen/rational.hpp>

namespace degen
{

enum class MilnorMethod { quotient_dimension, quasi_homogeneous };

std::string to_string(MilnorMethod m);

struct MilnorResult {
    // nullopt means INFINITE: the quotient dimension did not stabilise (non-isolated point).
    std::optional<std::size_t> mu;
    MilnorMethod method = MilnorMethod::quotient_dimension;
    // Degree D at which the dimension stabilised, or the bound that was exhausted.
    int degree_bound_used = 0;
    // dim Q[z]_{<D} / (J + m^D) for D = 1, 2, ...
    std::vector<std::size_t> dimension_sequence;

    bool is_infinite() const noexcept
    {
        return !mu.has_value();
    }
};

// The partial derivatives df/dz_0, ..., df/dz_n.
std::vector<PolynomialGerm> jacobian_ideal(const PolynomialGerm &f);

// Default D_max for milnor_number.
int default_degree_bound(const PolynomialGerm &f);

// dim of the local algebra Q[z]/(J + m^D), computed by the rank of the truncated Macaulay matrix.
std::size_t truncated_quotient_dimension(const std::vector<PolynomialGerm> &generators, std::size_t nvars, int degree);

/// Milnor number of f at the origin.
///
/// Returns mu = 0 at once when f(0) != 0 or df(0) != 0. Otherwise the dimension of
/// Q[z]/(J + m^D) is computed for D = 1, 2, ... until two consecutive values agree
/// (by Nakayama the sequence is then constant) or the degree bound is reached, in
/// which case the result is INFINITE.
MilnorResult milnor_number(const PolynomialGerm &f, std::optional<int> degree_bound = std::nullopt);

/// prod_i (d/w_i - 1) for a quasi-homogeneous germ with weights w_i and weighted degree d.
/// Throws std::invalid_argument unless every d/w_i > 1, and not_integer if the product is not integral.
std::size_t milnor_quasihomogeneous(std::span<const Rational> weights, const Rational &degree);

// Weights w with <e, w> = 1 for every exponent vector e of f, when they exist and are unique.
std::optional<std::vector<Rational>> quasihomogeneous_weights(const PolynomialGerm &f);

/// Sum of milnor_number over the germs, evaluated concurrently and summed in input order.
/// Throws bound_exceeded if any germ is not isolated.
std::size_t milnor_sum(std::span<const PolynomialGerm> germs);

} // namespace degen

#endif
