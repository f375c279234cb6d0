#include <degen/chern.hpp>
#include <degen/cli/commands.hpp>
#include <degen/series.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace degen::cli
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

std::string join_coeffs(const std::vector<Rational> &coeffs)
{
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += coeffs[i].to_string();
    }
    return out;
}

} // namespace

std::string cmd_genus(const std::string &name, std::size_t order)
{
    if (name != "td" && name != "td-inv" && name != "e") {
        throw unknown_genus(name);
    }
    if (order > max_series_order) {
        throw degree_out_of_range(order, max_series_order);
    }
    if (name == "td") {
        return join_coeffs(td_series(order).coeffs());
    }
    if (name == "td-inv") {
        return join_coeffs(td_inverse_series(order).coeffs());
    }
    return join_coeffs(e_genus_rank2(order).coeffs());
}

Report cmd_predict(const FamilySpec &spec)
{
    Report r;
    r.command = "predict";
    r.fiber_dimension = spec.fiber_dimension;
    r.bundle_rank = spec.bundle_rank;
    r.seed = spec.seed;
    std::size_t sum = 0;
    for (const auto &g : spec.germs) {
        const MilnorResult m = milnor_number(g.germ);
        r.milnor_table.push_back({g.label, g.germ.to_string(), m.mu, to_string(m.method), m.degree_bound_used});
        if (m.is_infinite() && !r.error) {
            r.error = "germ " + g.label + " has a non-isolated critical point (quotient did not stabilise by degree "
                      + std::to_string(m.degree_bound_used) + ")";
        }
        sum += m.mu.value_or(0);
    }
    if (!r.error) {
        r.milnor_sum = sum;
        r.predicted_coeff = theorem81_coefficient(spec.fiber_dimension, spec.bundle_rank, static_cast<long>(sum));
    }
    if (spec.char_numbers) {
        try {
            r.theorem71_coeff = theorem71_coefficient(*spec.char_numbers, spec.bundle_rank);
            if (r.predicted_coeff) {
                r.cross_check = *r.theorem71_coeff == *r.predicted_coeff;
            }
        } catch (const error &e) {
            if (!r.error) {
                r.error = std::string("char_numbers: ") + e.what();
            }
        }
    }
    return r;
}

double default_tolerance(VerifyMode mode)
{
    return mode == VerifyMode::psi ? 0.05 : 0.01;
}

ExpansionModel default_model(const FamilySpec &spec, const VerifySpec &v)
{
    ExpansionModel m;
    m.max_log_power = static_cast<unsigned>(spec.fiber_dimension);
    switch (v.mode) {
    case VerifyMode::gauss_norm:
        // Node and sum-of-squares integrals are log|t|^2 plus a function of |t|^2.
        break;
    case VerifyMode::monomial: {
        // z^nu pushes forward to a density built from |t|^{2/nu_i}; equal exponents
        // stack powers of log|t|.
        std::set<Rational> rs;
        std::size_t factors = 0;
        for (unsigned k : v.nu) {
            if (k > 0) {
                rs.insert(Rational(1, static_cast<long>(k)));
                ++factors;
            }
        }
        m.max_log_power = static_cast<unsigned>(factors > 0 ? factors - 1 : 0);
        for (const auto &r : rs) {
            for (unsigned k = 0; k <= m.max_log_power; ++k) {
                m.terms.push_back({r, k});
            }
        }
        break;
    }
    case VerifyMode::psi:
        // Sampling noise dominates; keep the model small.
        m.smooth_order = 2;
        m.term_taylor_order = 0;
        for (unsigned k = 1; k <= m.max_log_power; ++k) {
            m.terms.push_back({Rational(1), k});
        }
        break;
    }
    return m;
}

Report cmd_verify(const FamilySpec &spec, const VerifyOverrides &overrides)
{
    Report r = cmd_predict(spec);
    r.command = "verify";
    if (overrides.seed) {
        r.seed = *overrides.seed;
    }
    if (!spec.verify) {
        if (!r.error) {
            r.error = "spec has no verify block";
        }
        return r;
    }
    VerifySpec v = *spec.verify;
    if (overrides.grid) {
        v.grid = *overrides.grid;
    }
    VerifyReport out;
    out.mode = to_string(v.mode);
    out.tolerance = overrides.tolerance.value_or(v.tolerance.value_or(default_tolerance(v.mode)));

    const auto start = std::chrono::steady_clock::now();
    try {
        std::function<IntegralSample(std::complex<double>, std::uint64_t)> eval;
        switch (v.mode) {
        case VerifyMode::gauss_norm:
            if (spec.germs.empty()) {
                throw unsupported_germ("gauss-norm mode needs at least one germ");
            }
            for (const auto &g : spec.germs) {
                if (classify_gauss_norm_germ(g.germ) == GaussNormFamily::unsupported) {
                    throw unsupported_germ("gauss-norm mode supports c*z0*z1 and c*(z0^2+...+zn^2); germ " + g.label
                                           + " is " + g.germ.to_string());
                }
            }
            eval = [&](std::complex<double> t, std::uint64_t) {
                IntegralSample s{t, 0.0, 0.0};
                for (const auto &g : spec.germs) {
                    const auto q = gauss_norm_integral(t, g.germ, v.cutoff_radius);
                    if (!(q.error <= 1e-8)) {
                        throw quadrature_failure(q.error, 1e-8);
                    }
                    s.value += q.value;
                    s.est_error += q.error;
                }
                return s;
            };
            break;
        case VerifyMode::monomial:
            eval = [&](std::complex<double> t, std::uint64_t) {
                const auto q = monomial_f_detailed(t, MonomialExponents{v.nu});
                return IntegralSample{t, q.value, q.error};
            };
            break;
        case VerifyMode::psi:
            if (spec.germs.empty()) {
                throw unsupported_germ("psi mode needs at least one germ");
            }
            eval = [&](std::complex<double> t, std::uint64_t) {
                PsiOptions opts;
                opts.qmc_points = v.qmc_points;
                opts.qmc_shifts = v.qmc_shifts;
                IntegralSample s{t, 0.0, 0.0};
                for (std::size_t i = 0; i < spec.germs.size(); ++i) {
                    // Common random numbers: every t of a germ reuses the same shifts, so the
                    // sampling error varies smoothly in t instead of swamping the fit.
                    const auto p = psi_integral(spec.germs[i].germ, v.chi, t, quad::derive_seed(r.seed, i), opts);
                    s.value += p.value;
                    s.est_error += p.est_error;
                }
                return s;
            };
            break;
        }
        const auto raw = evaluate_on_grid(v.grid, eval, r.seed, overrides.threads);
        out.samples = s1_average(raw);
        const ExpansionModel model = v.model.value_or(default_model(spec, v));
        const FitResult fit = fit_b0(out.samples, model);

        out.fitted_log_coeff = fit.log_coeff;
        out.condition_estimate = fit.condition_estimate;
        out.residual_rms = fit.residual_rms;
        out.fit_residual_rms = fit.fit_residual_rms;
        out.fit_samples = fit.fit_samples;
        out.holdout_samples = fit.holdout_samples;
        for (const auto &[col, c] : fit.coefficients) {
            out.coefficients.emplace_back(col.label, c);
        }
        if (v.mode == VerifyMode::gauss_norm) {
            if (!r.predicted_coeff) {
                throw error("no prediction to compare against");
            }
            // The slope of the Gauss-norm integral is sum(mu); the prediction scales it by
            // the isolated-point genus coefficient and the bundle rank.
            out.target = r.predicted_coeff->to_double();
            out.fitted_coeff = isolated_point_genus_coefficient(spec.fiber_dimension).to_double()
                               * static_cast<double>(spec.bundle_rank) * fit.log_coeff;
        } else {
            // log|F - t|^2 is locally integrable, so these integrals have no log|t|^2 term.
            out.target = 0.0;
            out.fitted_coeff = fit.log_coeff;
        }
        out.relative_error = relative_error(out.fitted_coeff, out.target);
        out.absolute_error = std::abs(out.fitted_coeff - out.target);
        out.passed = std::abs(out.target) > 1e-12 ? out.relative_error <= out.tolerance
                                                  : out.absolute_error <= out.tolerance;
    } catch (const std::exception &e) {
        out.error = e.what();
        out.passed = false;
    }
    if (overrides.timings) {
        out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    r.verify = std::move(out);
    return r;
}

MilnorResult cmd_milnor(const std::string &germ, std::optional<int> degree_bound)
{
    return milnor_number(PolynomialGerm::parse(germ), degree_bound);
}

ordered_json fit_to_json(const FitResult &fit)
{
    ordered_json j;
    j["log_coeff"] = fit.log_coeff;
    j["constant"] = fit.constant;
    ordered_json terms = ordered_json::array();
    for (const auto &[term, c] : fit.term_coeffs) {
        terms.push_back({{"r", term.r.to_string()}, {"k", term.k}, {"value", c}});
    }
    j["term_coeffs"] = terms;
    j["smooth_coeffs"] = fit.smooth_coeffs;
    ordered_json cols = ordered_json::array();
    for (const auto &[col, c] : fit.coefficients) {
        cols.push_back({{"column", col.label}, {"value", c}});
    }
    j["coefficients"] = cols;
    j["residual_rms"] = fit.residual_rms;
    j["fit_residual_rms"] = fit.fit_residual_rms;
    j["condition_estimate"] = fit.condition_estimate;
    j["fit_samples"] = fit.fit_samples;
    j["holdout_samples"] = fit.holdout_samples;
    return j;
}

ordered_json cmd_fit(const json &input, std::size_t default_log_power)
{
    const json &arr = input.is_array() ? input : input.at("samples");
    if (!arr.is_array()) {
        throw spec_error("samples", "expected an array");
    }
    std::vector<IntegralSample> samples;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto &s = arr[i];
        const std::string path = "samples[" + std::to_string(i) + "]";
        if (!s.is_object() || !s.contains("t") || !s.contains("value") || !s["value"].is_number()) {
            throw spec_error(path, "expected {\"t\": [re, im] or r, \"value\": v}");
        }
        std::complex<double> t;
        if (s["t"].is_number()) {
            t = s["t"].get<double>();
        } else if (s["t"].is_array() && s["t"].size() == 2 && s["t"][0].is_number() && s["t"][1].is_number()) {
            t = {s["t"][0].get<double>(), s["t"][1].get<double>()};
        } else {
            throw spec_error(path + ".t", "expected [re, im] or a number");
        }
        const double err = s.contains("est_error") && s["est_error"].is_number() ? s["est_error"].get<double>() : 0.0;
        samples.push_back({t, s["value"].get<double>(), err});
    }
    ExpansionModel model;
    model.max_log_power = static_cast<unsigned>(default_log_power);
    if (input.is_object() && input.contains("model")) {
        model = parse_model(input["model"], "model", default_log_power);
    }
    return fit_to_json(fit_b0(s1_average(samples), model));
}

} // namespace degen::cli
