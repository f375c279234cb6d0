#include <degen/asym_fit.hpp>
#include <degen/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace degen
{

ExpansionModel ExpansionModel::with_exponents(const std::vector<Rational> &exponents, unsigned max_log_power,
                                              unsigned smooth_order)
{
    ExpansionModel m;
    m.smooth_order = smooth_order;
    m.max_log_power = max_log_power;
    for (const auto &r : exponents) {
        for (unsigned k = 0; k <= max_log_power; ++k) {
            m.terms.push_back({r, k});
        }
    }
    return m;
}

void ExpansionModel::validate() const
{
    for (const auto &term : terms) {
        if (term.r.sign() <= 0 || term.r > Rational(1)) {
            throw std::invalid_argument("expansion exponent " + term.r.to_string() + " outside (0, 1]");
        }
    }
}

double Column::evaluate(double abs_t) const
{
    const double log_t = std::log(abs_t);
    if (is_log) {
        return 2.0 * log_t;
    }
    double v = power == 0.0 ? 1.0 : std::exp(power * log_t);
    for (unsigned i = 0; i < log_power; ++i) {
        v *= log_t;
    }
    return v;
}

namespace
{

std::string power_label(double power, unsigned log_power)
{
    std::ostringstream os;
    if (power == 0.0 && log_power == 0) {
        return "1";
    }
    if (power != 0.0) {
        os << "|t|^" << power;
    }
    if (log_power > 0) {
        if (power != 0.0) {
            os << " ";
        }
        os << "(log|t|)";
        if (log_power > 1) {
            os << "^" << log_power;
        }
    }
    return os.str();
}

} // namespace

std::vector<Column> design_columns(const ExpansionModel &model)
{
    std::vector<Column> cols;
    cols.push_back({0.0, 0, false, "1"});
    for (unsigned j = 1; j <= model.smooth_order; ++j) {
        const double p = 2.0 * j;
        cols.push_back({p, 0, false, power_label(p, 0)});
    }
    if (model.include_log) {
        cols.push_back({0.0, 0, true, "log|t|^2"});
    }
    for (const auto &term : model.terms) {
        for (unsigned j = 0; j <= model.term_taylor_order; ++j) {
            const Rational exponent = term.r + Rational(static_cast<long>(j));
            // |t|^{2m}, m integer, is already part of the smooth columns.
            if (term.k == 0 && exponent.is_integer()) {
                continue;
            }
            const double p = 2.0 * exponent.to_double();
            cols.push_back({p, term.k, false, power_label(p, term.k)});
        }
    }
    return cols;
}

FitResult fit_b0(const std::vector<IntegralSample> &samples, const ExpansionModel &model, const FitOptions &options)
{
    model.validate();
    const auto cols = design_columns(model);

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(samples[a].t) < std::abs(samples[b].t); });
    std::vector<std::size_t> fit_rows;
    std::vector<std::size_t> held_rows;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!(std::abs(samples[order[i]].t) > 0.0) || !std::isfinite(samples[order[i]].value)) {
            throw std::invalid_argument("fit samples need |t| > 0 and finite values");
        }
        const bool hold = options.holdout_stride > 0 && i % options.holdout_stride == options.holdout_stride - 1;
        (hold ? held_rows : fit_rows).push_back(order[i]);
    }
    if (fit_rows.size() < 2 * cols.size()) {
        throw insufficient_samples("fit needs at least " + std::to_string(2 * cols.size()) + " samples outside the holdout, got "
                                   + std::to_string(fit_rows.size()));
    }

    using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    Matrix a(static_cast<Eigen::Index>(fit_rows.size()), static_cast<Eigen::Index>(cols.size()));
    Vector y(static_cast<Eigen::Index>(fit_rows.size()));
    for (std::size_t i = 0; i < fit_rows.size(); ++i) {
        const double abs_t = std::abs(samples[fit_rows[i]].t);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j].evaluate(abs_t);
        }
        y(static_cast<Eigen::Index>(i)) = samples[fit_rows[i]].value;
    }
    Vector scale = a.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < scale.size(); ++j) {
        if (scale(j) == 0.0L) {
            throw ill_conditioned(std::numeric_limits<double>::infinity());
        }
        a.col(j) /= scale(j);
    }

    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const long double smax = sv(0);
    const long double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0L ? static_cast<double>(smax / smin) : std::numeric_limits<double>::infinity();
    if (!(cond <= options.max_condition)) {
        throw ill_conditioned(cond);
    }
    const Vector scaled = svd.solve(y);
    const Vector x = scaled.cwiseQuotient(scale);

    FitResult out;
    out.condition_estimate = cond;
    out.fit_samples = fit_rows.size();
    out.holdout_samples = held_rows.size();
    out.smooth_coeffs.assign(model.smooth_order, 0.0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const double c = static_cast<double>(x(static_cast<Eigen::Index>(j)));
        out.coefficients.emplace_back(cols[j], c);
    }
    // Map columns back to the named fields.
    std::size_t j = 0;
    out.constant = out.coefficients[j++].second;
    for (unsigned s = 0; s < model.smooth_order; ++s) {
        out.smooth_coeffs[s] = out.coefficients[j++].second;
    }
    if (model.include_log) {
        out.log_coeff = out.coefficients[j++].second;
    }
    for (const auto &term : model.terms) {
        for (unsigned tj = 0; tj <= model.term_taylor_order; ++tj) {
            if (term.k == 0 && (term.r + Rational(static_cast<long>(tj))).is_integer()) {
                continue;
            }
            if (tj == 0) {
                out.term_coeffs[term] += out.coefficients[j].second;
            }
            ++j;
        }
    }

    auto rms = [&](const std::vector<std::size_t> &rows) {
        if (rows.empty()) {
            return 0.0;
        }
        long double acc = 0.0L;
        for (std::size_t row : rows) {
            const double abs_t = std::abs(samples[row].t);
            long double pred = 0.0L;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                pred += x(static_cast<Eigen::Index>(c)) * cols[c].evaluate(abs_t);
            }
            const long double r = pred - samples[row].value;
            acc += r * r;
        }
        return static_cast<double>(std::sqrt(acc / static_cast<long double>(rows.size())));
    };
    out.fit_residual_rms = rms(fit_rows);
    out.residual_rms = held_rows.empty() ? out.fit_residual_rms : rms(held_rows);
    return out;
}

std::vector<IntegralSample> s1_average(const std::vector<IntegralSample> &raw)
{
    struct Group {
        double radius;
        double sum = 0.0;
        double err_sq = 0.0;
        std::size_t count = 0;
    };
    std::vector<Group> groups;
    for (const auto &s : raw) {
        const double r = std::abs(s.t);
        auto it = std::find_if(groups.begin(), groups.end(), [r](const Group &g) {
            return std::abs(g.radius - r) <= 1e-12 * std::max(g.radius, r);
        });
        if (it == groups.end()) {
            groups.push_back({r});
            it = groups.end() - 1;
        }
        it->sum += s.value;
        it->err_sq += s.est_error * s.est_error;
        ++it->count;
    }
    std::vector<IntegralSample> out;
    out.reserve(groups.size());
    for (const auto &g : groups) {
        const double n = static_cast<double>(g.count);
        out.push_back({std::complex<double>(g.radius, 0.0), g.sum / n, std::sqrt(g.err_sq / n) / std::sqrt(n)});
    }
    return out;
}

ExpansionModel exponent_scan(const std::vector<IntegralSample> &samples, const ExpansionModel &base,
                             const std::vector<Rational> &candidates, const FitOptions &options)
{
    auto residual = [&](const ExpansionModel &m) {
        try {
            return fit_b0(samples, m, options).residual_rms;
        } catch (const ill_conditioned &) {
            return std::numeric_limits<double>::infinity();
        } catch (const insufficient_samples &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    double scale = 0.0;
    for (const auto &s : samples) {
        scale += s.value * s.value;
    }
    scale = std::sqrt(scale / std::max<std::size_t>(samples.size(), 1));
    const double floor = 1e-10 * std::max(scale, 1e-300);

    ExpansionModel current = base;
    double current_res = residual(current);
    while (current_res > floor) {
        ExpansionModel best_model;
        double best_res = std::numeric_limits<double>::infinity();
        for (const auto &r : candidates) {
            for (unsigned k = 0; k <= base.max_log_power; ++k) {
                const SingularTerm term{r, k};
                if (std::find(current.terms.begin(), current.terms.end(), term) != current.terms.end()) {
                    continue;
                }
                ExpansionModel trial = current;
                trial.terms.push_back(term);
                const double res = residual(trial);
                if (res < best_res) {
                    best_res = res;
                    best_model = std::move(trial);
                }
            }
        }
        if (!(best_res < 0.1 * current_res)) {
            break;
        }
        current = std::move(best_model);
        current_res = best_res;
    }
    return current;
}

std::map<std::pair<double, unsigned>, double> euler_derivative(const FitResult &fit)
{
    std::map<std::pair<double, unsigned>, double> out;
    for (const auto &[col, c] : fit.coefficients) {
        if (col.is_log) {
            out[{0.0, 0}] += 2.0 * c;
            continue;
        }
        if (col.power != 0.0) {
            out[{col.power, col.log_power}] += col.power * c;
        }
        if (col.log_power > 0) {
            out[{col.power, col.log_power - 1}] += static_cast<double>(col.log_power) * c;
        }
    }
    return out;
}

std::map<std::pair<double, unsigned>, double> coefficient_table(const FitResult &fit)
{
    std::map<std::pair<double, unsigned>, double> out;
    for (const auto &[col, c] : fit.coefficients) {
        if (col.is_log) {
            out[{0.0, 1}] += 2.0 * c;
        } else {
            out[{col.power, col.log_power}] += c;
        }
    }
    return out;
}

} // namespace degen
