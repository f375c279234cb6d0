#ifndef DEGEN_ASYM_FIT_HPP
#define DEGEN_ASYM_FIT_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <degen/fiber_integrals.hpp>
#include <degen/rational.hpp>

namespace degen
{

// |t|^{2r} (log|t|)^k times a Taylor polynomial in |t|^2.
struct SingularTerm {
    Rational r;
    unsigned k = 0;

    friend auto operator<=>(const SingularTerm &, const SingularTerm &) = default;
};

// Finite-dimensional slice of log|t|^2 * R + B_0, where B_0 is
//   C^inf + sum_{r in Q cap (0,1]} sum_{k <= n} |t|^{2r} (log|t|)^k C^inf.
struct ExpansionModel {
    // Columns |t|^{2j}, j = 0..smooth_order, for the smooth part.
    unsigned smooth_order = 3;
    // Each term contributes |t|^{2r + 2j} (log|t|)^k for j = 0..term_taylor_order.
    std::vector<SingularTerm> terms;
    unsigned term_taylor_order = 2;
    // Cap on k; used by with_exponents and exponent_scan.
    unsigned max_log_power = 1;
    // Include the divergent log|t|^2 column.
    bool include_log = true;

    // All (r, k) with k = 0..max_log_power for each r.
    static ExpansionModel with_exponents(const std::vector<Rational> &exponents, unsigned max_log_power,
                                         unsigned smooth_order = 3);

    // Throws std::invalid_argument if some r lies outside (0, 1].
    void validate() const;
};

// One design-matrix column: |t|^power (log|t|)^log_power, or log|t|^2 when is_log.
struct Column {
    double power = 0.0;
    unsigned log_power = 0;
    bool is_log = false;
    std::string label;

    double evaluate(double abs_t) const;
};

struct FitOptions {
    // Scaled-matrix condition numbers above this raise ill_conditioned.
    double max_condition = 1e12;
    // Every holdout_stride-th radius (by rank) is held out for residual_rms.
    std::size_t holdout_stride = 5;
};

struct FitResult {
    double log_coeff = 0.0; // coefficient of log|t|^2
    double constant = 0.0;
    // Leading (j = 0) coefficient of each singular term.
    std::map<SingularTerm, double> term_coeffs;
    // Coefficients of |t|^{2j}, j = 1..smooth_order.
    std::vector<double> smooth_coeffs;
    // All columns with their coefficients, in design order.
    std::vector<std::pair<Column, double>> coefficients;
    double residual_rms = 0.0;     // on held-out radii
    double fit_residual_rms = 0.0; // on the radii used in the fit
    double condition_estimate = 0.0;
    std::size_t fit_samples = 0;
    std::size_t holdout_samples = 0;
};

std::vector<Column> design_columns(const ExpansionModel &model);

/// Linear least squares of the samples on the model columns.
///
/// Columns are scaled to unit norm and solved by SVD in extended precision; the
/// condition estimate is sigma_max/sigma_min of the scaled matrix. Throws
/// insufficient_samples unless the fit set has at least twice as many samples as
/// columns, and ill_conditioned when the condition estimate exceeds the threshold.
FitResult fit_b0(const std::vector<IntegralSample> &samples, const ExpansionModel &model, const FitOptions &options = {});

/// Per-radius mean over angles; est_error becomes the rms error divided by sqrt(#angles).
std::vector<IntegralSample> s1_average(const std::vector<IntegralSample> &raw);

/// Greedy forward selection of (r, k) terms from the candidate exponents (k up to
/// base.max_log_power) minimising the held-out residual. Stops when the best addition
/// improves the residual by less than a factor of 10 or the residual is at round-off level.
/// Truncation of the smooth part leaves a residual that spurious terms shrink only modestly.
/// Heuristic: the candidate set must contain the true exponents.
ExpansionModel exponent_scan(const std::vector<IntegralSample> &samples, const ExpansionModel &base,
                             const std::vector<Rational> &candidates, const FitOptions &options = {});

// Applies r d/dr to a fitted expansion: |t|^a (log|t|)^k -> a |t|^a (log|t|)^k + k |t|^a (log|t|)^{k-1},
// log|t|^2 -> 2. Keyed by (power, log_power).
std::map<std::pair<double, unsigned>, double> euler_derivative(const FitResult &fit);

// Same keying for a fit itself, folding the log|t|^2 column into (0, 1) as 2 log|t|.
std::map<std::pair<double, unsigned>, double> coefficient_table(const FitResult &fit);

} // namespace degen

#endif
