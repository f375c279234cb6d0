#ifndef DEGEN_CLI_FAMILY_SPEC_HPP
#define DEGEN_CLI_FAMILY_SPEC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <degen/asym_fit.hpp>
#include <degen/chern.hpp>
#include <degen/errors.hpp>
#include <degen/fiber_integrals.hpp>
#include <degen/polynomial.hpp>

namespace degen::cli
{

// Schema or validation failure; `path` names the offending field, e.g. "verify.grid.count".
class spec_error : public error
{
public:
    spec_error(std::string path, const std::string &what);
    const std::string &path() const noexcept
    {
        return m_path;
    }

private:
    std::string m_path;
};

struct LabeledGerm {
    std::string label;
    PolynomialGerm germ;
};

enum class VerifyMode { gauss_norm, monomial, psi };
std::string to_string(VerifyMode m);
VerifyMode parse_verify_mode(const std::string &s);

struct VerifySpec {
    VerifyMode mode = VerifyMode::gauss_norm;
    SampleGrid grid = SampleGrid::default_grid();
    // Exponents for monomial mode.
    std::vector<unsigned> nu;
    BumpSpec chi;
    double cutoff_radius = 1.0;
    // Pass threshold; when absent the mode default applies.
    std::optional<double> tolerance;
    // When absent a mode-dependent default model is used.
    std::optional<ExpansionModel> model;
    std::size_t qmc_points = PsiOptions{}.qmc_points;
    std::size_t qmc_shifts = PsiOptions{}.qmc_shifts;
};

struct FamilySpec {
    std::size_t fiber_dimension = 1;
    long bundle_rank = 1;
    std::uint64_t seed = 0;
    std::vector<LabeledGerm> germs;
    std::optional<CharNumbers> char_numbers;
    std::optional<VerifySpec> verify;

    static FamilySpec from_json(const nlohmann::json &j);
    // Reads and parses a file; parse errors are reported as spec_error.
    static FamilySpec load(const std::string &path);
};

// "rmin,rmax,count,angles" as given on the command line.
SampleGrid parse_grid_flag(const std::string &text);

// Parses a model block {smooth_order, exponents, max_log_power, include_log, term_taylor_order}.
ExpansionModel parse_model(const nlohmann::json &j, const std::string &path, std::size_t default_log_power);

// Accepts "p/q" strings and integers.
Rational parse_rational(const nlohmann::json &j, const std::string &path);

} // namespace degen::cli

#endif
