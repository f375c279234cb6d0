#include <degen/cli/report.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

namespace degen::cli
{

using nlohmann::json;
using nlohmann::ordered_json;

double relative_error(double fitted, double predicted)
{
    return std::abs(fitted - predicted) / std::max(std::abs(predicted), 1e-12);
}

bool Report::ok() const
{
    if (error) {
        return false;
    }
    if (verify) {
        return !verify->error && verify->passed;
    }
    return true;
}

namespace
{

ordered_json sample_to_json(const IntegralSample &s)
{
    return ordered_json{{"t", {s.t.real(), s.t.imag()}}, {"value", s.value}, {"est_error", s.est_error}};
}

IntegralSample sample_from_json(const json &j)
{
    return {{j.at("t").at(0).get<double>(), j.at("t").at(1).get<double>()}, j.at("value").get<double>(),
            j.at("est_error").get<double>()};
}

ordered_json verify_to_json(const VerifyReport &v)
{
    ordered_json j;
    j["mode"] = v.mode;
    if (v.error) {
        j["error"] = *v.error;
    }
    j["target"] = v.target;
    j["fitted_log_coeff"] = v.fitted_log_coeff;
    j["fitted_coeff"] = v.fitted_coeff;
    j["relative_error"] = v.relative_error;
    j["absolute_error"] = v.absolute_error;
    j["tolerance"] = v.tolerance;
    j["passed"] = v.passed;
    ordered_json diag;
    diag["condition_estimate"] = v.condition_estimate;
    diag["residual_rms"] = v.residual_rms;
    diag["fit_residual_rms"] = v.fit_residual_rms;
    diag["fit_samples"] = v.fit_samples;
    diag["holdout_samples"] = v.holdout_samples;
    if (v.runtime_seconds) {
        diag["runtime_seconds"] = *v.runtime_seconds;
    }
    j["diagnostics"] = diag;
    ordered_json coeffs = ordered_json::array();
    for (const auto &[label, c] : v.coefficients) {
        coeffs.push_back({{"column", label}, {"value", c}});
    }
    j["coefficients"] = coeffs;
    ordered_json samples = ordered_json::array();
    for (const auto &s : v.samples) {
        samples.push_back(sample_to_json(s));
    }
    j["samples"] = samples;
    return j;
}

VerifyReport verify_from_json(const json &j)
{
    VerifyReport v;
    v.mode = j.at("mode").get<std::string>();
    if (j.contains("error")) {
        v.error = j["error"].get<std::string>();
    }
    v.target = j.at("target").get<double>();
    v.fitted_log_coeff = j.at("fitted_log_coeff").get<double>();
    v.fitted_coeff = j.at("fitted_coeff").get<double>();
    v.relative_error = j.at("relative_error").get<double>();
    v.absolute_error = j.at("absolute_error").get<double>();
    v.tolerance = j.at("tolerance").get<double>();
    v.passed = j.at("passed").get<bool>();
    const auto &d = j.at("diagnostics");
    v.condition_estimate = d.at("condition_estimate").get<double>();
    v.residual_rms = d.at("residual_rms").get<double>();
    v.fit_residual_rms = d.at("fit_residual_rms").get<double>();
    v.fit_samples = d.at("fit_samples").get<std::size_t>();
    v.holdout_samples = d.at("holdout_samples").get<std::size_t>();
    if (d.contains("runtime_seconds")) {
        v.runtime_seconds = d["runtime_seconds"].get<double>();
    }
    for (const auto &c : j.at("coefficients")) {
        v.coefficients.emplace_back(c.at("column").get<std::string>(), c.at("value").get<double>());
    }
    for (const auto &s : j.at("samples")) {
        v.samples.push_back(sample_from_json(s));
    }
    return v;
}

} // namespace

ordered_json Report::to_json() const
{
    ordered_json j;
    j["command"] = command;
    if (error) {
        j["error"] = *error;
    }
    j["fiber_dimension"] = fiber_dimension;
    j["bundle_rank"] = bundle_rank;
    j["seed"] = seed;
    if (predicted_coeff) {
        j["predicted_coeff"] = predicted_coeff->to_string();
    }
    if (milnor_sum) {
        j["milnor_sum"] = *milnor_sum;
    }
    ordered_json table = ordered_json::array();
    for (const auto &e : milnor_table) {
        ordered_json row;
        row["label"] = e.label;
        row["germ"] = e.germ;
        if (e.mu) {
            row["mu"] = *e.mu;
        } else {
            row["mu"] = "INFINITE";
        }
        row["method"] = e.method;
        row["degree_bound"] = e.degree_bound;
        table.push_back(row);
    }
    j["milnor_table"] = table;
    if (theorem71_coeff) {
        j["theorem71_coeff"] = theorem71_coeff->to_string();
    }
    if (cross_check) {
        j["cross_check"] = *cross_check;
    }
    if (verify) {
        j["verify"] = verify_to_json(*verify);
    }
    return j;
}

Report Report::from_json(const json &j)
{
    Report r;
    r.command = j.at("command").get<std::string>();
    if (j.contains("error")) {
        r.error = j["error"].get<std::string>();
    }
    r.fiber_dimension = j.at("fiber_dimension").get<std::size_t>();
    r.bundle_rank = j.at("bundle_rank").get<long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("predicted_coeff")) {
        r.predicted_coeff = Rational::parse(j["predicted_coeff"].get<std::string>());
    }
    if (j.contains("milnor_sum")) {
        r.milnor_sum = j["milnor_sum"].get<std::size_t>();
    }
    for (const auto &row : j.at("milnor_table")) {
        MilnorEntry e;
        e.label = row.at("label").get<std::string>();
        e.germ = row.at("germ").get<std::string>();
        if (row.at("mu").is_number()) {
            e.mu = row["mu"].get<std::size_t>();
        }
        e.method = row.at("method").get<std::string>();
        e.degree_bound = row.at("degree_bound").get<int>();
        r.milnor_table.push_back(e);
    }
    if (j.contains("theorem71_coeff")) {
        r.theorem71_coeff = Rational::parse(j["theorem71_coeff"].get<std::string>());
    }
    if (j.contains("cross_check")) {
        r.cross_check = j["cross_check"].get<bool>();
    }
    if (j.contains("verify")) {
        r.verify = verify_from_json(j["verify"]);
    }
    return r;
}

std::string Report::dump() const
{
    return to_json().dump(2) + "\n";
}

std::string Report::summary() const
{
    std::ostringstream os;
    os << std::setprecision(10);
    if (!milnor_table.empty()) {
        os << "germs:\n";
        for (const auto &e : milnor_table) {
            os << "  " << e.label << "  " << e.germ << "  mu = " << (e.mu ? std::to_string(*e.mu) : "INFINITE") << " ("
               << e.method << ")\n";
        }
    }
    if (milnor_sum) {
        os << "milnor sum: " << *milnor_sum << "\n";
    }
    if (predicted_coeff) {
        os << "predicted coefficient: " << *predicted_coeff << "\n";
    }
    if (theorem71_coeff) {
        os << "critical-locus formula: " << *theorem71_coeff;
        if (cross_check) {
            os << (*cross_check ? " (agrees)" : " (differs)");
        }
        os << "\n";
    }
    if (verify) {
        const auto &v = *verify;
        os << "verify (" << v.mode << "):\n";
        if (v.error) {
            os << "  error: " << *v.error << "\n";
        } else {
            os << "  fitted log|t|^2 coefficient: " << v.fitted_log_coeff << "\n"
               << "  fitted coefficient: " << v.fitted_coeff << "  target: " << v.target << "\n"
               << "  relative error: " << v.relative_error << "  absolute error: " << v.absolute_error
               << "  tolerance: " << v.tolerance << "\n"
               << "  condition: " << v.condition_estimate << "  held-out rms: " << v.residual_rms << "\n"
               << "  " << (v.passed ? "PASSED" : "FAILED") << "\n";
        }
    }
    if (error) {
        os << "error: " << *error << "\n";
    }
    return os.str();
}

} // namespace degen::cli
