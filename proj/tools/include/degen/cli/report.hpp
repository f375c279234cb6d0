#ifndef DEGEN_CLI_REPORT_HPP
#define DEGEN_CLI_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <degen/fiber_integrals.hpp>
#include <degen/rational.hpp>

namespace degen::cli
{

struct MilnorEntry {
    std::string label;
    std::string germ;
    // nullopt when the quotient did not stabilise (non-isolated critical point).
    std::optional<std::size_t> mu;
    std::string method;
    int degree_bound = 0;

    friend bool operator==(const MilnorEntry &, const MilnorEntry &) = default;
};

struct VerifyReport {
    std::string mode;
    // Value the fitted coefficient is compared against.
    double target = 0.0;
    // Raw coefficient of log|t|^2 in the fit of the sampled integral.
    double fitted_log_coeff = 0.0;
    // Fitted counterpart of predicted_coeff (gauss-norm) or the raw log coefficient.
    double fitted_coeff = 0.0;
    // |fitted - target| / max(|target|, 1e-12)
    double relative_error = 0.0;
    double absolute_error = 0.0;
    double tolerance = 0.0;
    // Relative error below tolerance, or absolute error when the target is zero.
    bool passed = false;
    double condition_estimate = 0.0;
    double residual_rms = 0.0;
    double fit_residual_rms = 0.0;
    std::size_t fit_samples = 0;
    std::size_t holdout_samples = 0;
    std::vector<std::pair<std::string, double>> coefficients;
    // S^1-averaged samples, one per radius.
    std::vector<IntegralSample> samples;
    std::optional<double> runtime_seconds;
    std::optional<std::string> error;

    friend bool operator==(const VerifyReport &, const VerifyReport &) = default;
};

struct Report {
    std::string command;
    std::size_t fiber_dimension = 0;
    long bundle_rank = 1;
    std::uint64_t seed = 0;
    std::optional<Rational> predicted_coeff;
    std::optional<std::size_t> milnor_sum;
    std::vector<MilnorEntry> milnor_table;
    std::optional<Rational> theorem71_coeff;
    std::optional<bool> cross_check;
    std::optional<VerifyReport> verify;
    std::optional<std::string> error;

    // Prediction succeeded and, when verification ran, it passed.
    bool ok() const;

    nlohmann::ordered_json to_json() const;
    static Report from_json(const nlohmann::json &j);
    // Pretty-printed JSON with a trailing newline.
    std::string dump() const;
    // Human-readable summary.
    std::string summary() const;

    friend bool operator==(const Report &, const Report &) = default;
};

// |fitted - predicted| / max(|predicted|, 1e-12)
double relative_error(double fitted, double predicted);

} // namespace degen::cli

#endif
