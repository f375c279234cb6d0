#ifndef DEGEN_ERRORS_HPP
#define DEGEN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace degen
{

// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// series_ring
class zero_constant_term : public error
{
public:
    zero_constant_term() : error("series has zero constant term and is not invertible") {}
};

class degree_out_of_range : public error
{
public:
    degree_out_of_range(std::size_t degree, std::size_t order)
        : error("degree " + std::to_string(degree) + " exceeds truncation order " + std::to_string(order))
    {
    }
};

// chern_calculus
class not_symmetric : public error
{
public:
    using error::error;
};

class missing_char_number : public error
{
public:
    using error::error;
};

// milnor
class bound_exceeded : public error
{
public:
    bound_exceeded(std::size_t last_dimension, int bound)
        : error("Milnor quotient did not stabilise by degree bound " + std::to_string(bound)
                + " (last dimension " + std::to_string(last_dimension) + ")"),
          m_last_dimension(last_dimension)
    {
    }
    std::size_t last_dimension() const noexcept
    {
        return m_last_dimension;
    }

private:
    std::size_t m_last_dimension;
};

class not_integer : public error
{
public:
    using error::error;
};

class parse_error : public error
{
public:
    using error::error;
};

// fiber_integrals
class both_zero : public error
{
public:
    both_zero() : error("base P^1 integral needs (A, B) != (0, 0)") {}
};

class quadrature_failure : public error
{
public:
    quadrature_failure(double estimate, double tolerance)
        : error("quadrature error estimate " + std::to_string(estimate) + " above tolerance "
                + std::to_string(tolerance)),
          m_estimate(estimate)
    {
    }
    double estimate() const noexcept
    {
        return m_estimate;
    }

private:
    double m_estimate;
};

class non_compact_support : public error
{
public:
    using error::error;
};

class unsupported_germ : public error
{
public:
    using error::error;
};

// asym_fit
class ill_conditioned : public error
{
public:
    explicit ill_conditioned(double condition)
        : error("design matrix condition estimate " + std::to_string(condition) + " exceeds threshold"),
          m_condition(condition)
    {
    }
    double condition() const noexcept
    {
        return m_condition;
    }

private:
    double m_condition;
};

class insufficient_samples : public error
{
public:
    using error::error;
};

} // namespace degen

#endif
