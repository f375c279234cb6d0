#ifndef DEGEN_CLI_COMMANDS_HPP
#define DEGEN_CLI_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <degen/asym_fit.hpp>
#include <degen/cli/family_spec.hpp>
#include <degen/cli/report.hpp>
#include <degen/errors.hpp>
#include <degen/milnor.hpp>

namespace degen::cli
{

class unknown_genus : public error
{
public:
    explicit unknown_genus(const std::string &name) : error("unknown genus '" + name + "' (expected td, td-inv or e)") {}
};

/// Exact coefficients as "c0, c1, ..., cN": td and td-inv in powers of x, e as the
/// rank-2 E-genus in powers of c2. Throws unknown_genus, or degree_out_of_range for N > 64.
std::string cmd_genus(const std::string &name, std::size_t order);

/// Milnor numbers, their sum and the exact log|t|^2 coefficient; also the critical-locus
/// value and cross-check flag when the spec carries characteristic numbers.
/// Errors (e.g. a non-isolated germ) are recorded in Report::error.
Report cmd_predict(const FamilySpec &spec);

// Command-line overrides for cmd_verify.
struct VerifyOverrides {
    std::optional<SampleGrid> grid;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::size_t threads = 1;
    // Runtimes break byte-identical output, so they are off by default.
    bool timings = false;
};

// Pass threshold when neither the spec nor the command line sets one.
double default_tolerance(VerifyMode mode);

// Fit model used when the spec has none.
ExpansionModel default_model(const FamilySpec &spec, const VerifySpec &v);

/// cmd_predict followed by sampling, S^1 averaging and fit_b0. Failures inside the
/// verification (unsupported germ, quadrature, conditioning) land in Report::verify->error.
Report cmd_verify(const FamilySpec &spec, const VerifyOverrides &overrides = {});

MilnorResult cmd_milnor(const std::string &germ, std::optional<int> degree_bound = std::nullopt);

/// Fits samples given as {"samples": [{"t": [re, im], "value": v}, ...], "model": {...}}
/// (or a bare sample array) and returns the fit as JSON.
nlohmann::ordered_json cmd_fit(const nlohmann::json &input, std::size_t default_log_power = 1);

nlohmann::ordered_json fit_to_json(const FitResult &fit);

} // namespace degen::cli

#endif
