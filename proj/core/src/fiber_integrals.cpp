#include <degen/errors.hpp>
#include <degen/fiber_integrals.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace degen
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();
// x_i = log|z_i|^2 is integrated over [-half_width, half_width]; the logistic tails
// beyond contribute below 1e-15 even against the linear growth of the integrand.
constexpr double half_width = 40.0;

// Density of log|z|^2 under the Fubini-Study form on P^1: e^x/(1+e^x)^2.
double logistic_density(double x)
{
    const double e = std::exp(-std::abs(x));
    return e / ((1.0 + e) * (1.0 + e));
}

// log(e^a + e^b), tolerating b = -inf.
double log_sum_exp(double a, double b)
{
    if (b == -inf) {
        return a;
    }
    if (a == -inf) {
        return b;
    }
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::abs(a - b)));
}

std::vector<unsigned> nonzero_exponents(const MonomialExponents &nu)
{
    std::vector<unsigned> out;
    for (unsigned v : nu.nu) {
        if (v > 0) {
            out.push_back(v);
        }
    }
    return out;
}

double log_abs_sq(std::complex<double> t)
{
    const double n = std::norm(t);
    return n > 0.0 ? std::log(n) : -inf;
}

void check_tolerance(const quad::Result &r, double tolerance)
{
    if (!(r.error <= tolerance) || !std::isfinite(r.value)) {
        throw quadrature_failure(r.error, tolerance);
    }
}

// Integrates `inner(partial_sum)` against prod_{i >= level} logistic(x_i) dx_i, where
// partial_sum accumulates coeffs[i] * x_i. `kink(level, partial)` returns an optional
// breakpoint for variable `level`. Each x_i is written as 2 sinh(v) so the exponential
// tails of the logistic weight shrink to a short v-interval.
template <typename Inner, typename Kink>
quad::Result nested_logistic(std::size_t level, double partial, const std::vector<double> &coeffs, const Inner &inner,
                             const Kink &kink, const quad::Options &opt)
{
    if (level == coeffs.size()) {
        return {inner(partial), 0.0, 1, true};
    }
    constexpr double stretch = 2.0;
    const double v_max = std::asinh(half_width / stretch);
    std::array<double, 2> cuts{0.0, inf};
    const double k = kink(level, partial);
    if (std::isfinite(k)) {
        cuts[1] = std::asinh(k / stretch);
    }
    auto integrand = [&](double v) {
        const double x = stretch * std::sinh(v);
        const double jac = stretch * std::cosh(v);
        return jac * logistic_density(x) * nested_logistic(level + 1, partial + coeffs[level] * x, coeffs, inner, kink, opt).value;
    };
    return quad::integrate(integrand, -v_max, v_max, opt, cuts);
}

} // namespace

bool MonomialExponents::is_trivial() const
{
    return std::all_of(nu.begin(), nu.end(), [](unsigned v) { return v == 0; });
}

SampleGrid SampleGrid::geometric(double r_min, double r_max, std::size_t count, std::size_t angles)
{
    if (!(r_min > 0.0) || !(r_max > r_min) || !(r_max < 1.0) || count < 2 || angles < 1) {
        throw std::invalid_argument("sample grid needs 0 < r_min < r_max < 1, count >= 2, angles >= 1");
    }
    SampleGrid g;
    g.angles = angles;
    const double ratio = std::log(r_max / r_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        g.radii.push_back(i + 1 == count ? r_max : r_min * std::exp(ratio * static_cast<double>(i)));
    }
    return g;
}

SampleGrid SampleGrid::default_grid()
{
    return geometric(1e-6, 1e-1, 40, 8);
}

std::vector<std::complex<double>> SampleGrid::points() const
{
    std::vector<std::complex<double>> out;
    out.reserve(radii.size() * angles);
    for (double r : radii) {
        for (std::size_t j = 0; j < angles; ++j) {
            out.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles)));
        }
    }
    return out;
}

void SampleGrid::validate() const
{
    if (radii.empty() || angles == 0) {
        throw std::invalid_argument("empty sample grid");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] < 1.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
            throw std::invalid_argument("grid radii must be strictly increasing inside (0, 1)");
        }
    }
}

double base_p1_integral(std::complex<double> a, std::complex<double> b, unsigned nu)
{
    if (nu == 0) {
        throw std::invalid_argument("base_p1_integral needs nu >= 1");
    }
    if (a == 0.0 && b == 0.0) {
        throw both_zero();
    }
    const double inv = 1.0 / static_cast<double>(nu);
    // nu * log(|A|^{2/nu} + |B|^{2/nu}) in log-sum-exp form.
    return static_cast<double>(nu) * log_sum_exp(inv * log_abs_sq(a), inv * log_abs_sq(b));
}

quad::Result monomial_f_detailed(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options)
{
    const auto w = nonzero_exponents(nu);
    if (w.empty()) {
        throw std::invalid_argument("monomial_f needs some nu_i > 0");
    }
    const unsigned last = w.back();
    // |z'^{nu'}|^{2/last} = exp(sum (nu_i/last) x_i); |t|^{2/last} = exp(log_t).
    const double log_t = log_abs_sq(t) / static_cast<double>(last);
    std::vector<double> coeffs;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        coeffs.push_back(static_cast<double>(w[i]) / static_cast<double>(last));
    }
    // Peeled integrand: base_p1_integral(z'^{nu'}, -t, last) = last * log(e^y + |t|^{2/last}).
    auto inner = [&](double y) { return static_cast<double>(last) * log_sum_exp(y, log_t); };
    auto kink = [&](std::size_t level, double partial) {
        return level + 1 == coeffs.size() && std::isfinite(log_t) ? (log_t - partial) / coeffs[level] : inf;
    };
    quad::Result r = nested_logistic(0, 0.0, coeffs, inner, kink, options.quad);
    check_tolerance(r, options.tolerance);
    return r;
}

double monomial_f(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options)
{
    return monomial_f_detailed(t, nu, options).value;
}

quad::Result monomial_f_direct(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options)
{
    const auto w = nonzero_exponents(nu);
    if (w.empty()) {
        throw std::invalid_argument("monomial_f_direct needs some nu_i > 0");
    }
    const double tau = log_abs_sq(t);
    std::vector<double> coeffs(w.begin(), w.end());
    // Angular average of log|R e^{i phi} - t|^2 is log max(R^2, |t|^2) (Jensen).
    auto inner = [&](double y) { return std::max(y, tau); };
    auto kink = [&](std::size_t level, double partial) {
        return std::isfinite(tau) ? (tau - partial) / coeffs[level] : inf;
    };
    quad::Result r = nested_logistic(0, 0.0, coeffs, inner, kink, options.quad);
    check_tolerance(r, options.tolerance);
    return r;
}

double monomial_density(double r, const MonomialExponents &nu, const MonomialOptions &options)
{
    const auto w = nonzero_exponents(nu);
    if (w.empty()) {
        throw std::invalid_argument("monomial_density needs some nu_i > 0");
    }
    if (!(r > 0.0)) {
        throw std::invalid_argument("monomial_density needs r > 0");
    }
    const double tau = 2.0 * std::log(r);
    const double last = static_cast<double>(w.back());
    std::vector<double> coeffs;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        coeffs.push_back(static_cast<double>(w[i]));
    }
    // Density of X = sum nu_i x_i at tau: the last variable is solved for.
    auto inner = [&](double partial) { return logistic_density((tau - partial) / last) / last; };
    auto kink = [&](std::size_t level, double partial) {
        return level + 1 == coeffs.size() ? (tau - partial) / coeffs[level] : inf;
    };
    const quad::Result p = nested_logistic(0, 0.0, coeffs, inner, kink, options.quad);
    check_tolerance(p, options.tolerance);
    return 4.0 * p.value;
}

void BumpSpec::validate() const
{
    if (kind == Kind::fubini_study) {
        return;
    }
    if (!(inner >= 0.0) || !(outer > inner)) {
        throw std::invalid_argument("bump needs 0 <= inner < outer");
    }
    if (!(outer < 1.0)) {
        throw non_compact_support("bump support radius " + std::to_string(outer) + " leaves the unit polydisc");
    }
}

double BumpSpec::profile(double rho) const
{
    if (kind == Kind::fubini_study) {
        return 1.0 / (std::numbers::pi * (1.0 + rho * rho) * (1.0 + rho * rho));
    }
    if (rho <= inner) {
        return 1.0;
    }
    if (rho >= outer) {
        return 0.0;
    }
    const double x = (rho - inner) / (outer - inner);
    return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double BumpSpec::mass_per_variable() const
{
    if (kind == Kind::fubini_study) {
        return 1.0;
    }
    const double cuts[] = {inner};
    return quad::integrate([this](double rho) { return 2.0 * std::numbers::pi * rho * profile(rho); }, 0.0, outer,
                           {1e-14, 1e-14, 200}, cuts)
        .value;
}

double BumpSpec::mass(std::size_t nvars) const
{
    return std::pow(mass_per_variable(), static_cast<double>(nvars));
}

namespace
{

double safe_log_abs_sq(std::complex<double> z)
{
    return std::log(std::max(std::norm(z), 1e-300));
}

IntegralSample psi_one_variable(const PolynomialGerm &f, const BumpSpec &chi, std::complex<double> t,
                                const PsiOptions &options)
{
    auto angular_mean = [&](double rho) {
        auto g = [&](double theta) {
            const std::complex<double> z = std::polar(rho, theta);
            return safe_log_abs_sq(f.evaluate(std::span(&z, 1)) - t);
        };
        quad::Options inner = options.quad;
        inner.abs_tol *= 0.1;
        inner.rel_tol *= 0.1;
        return quad::integrate(g, 0.0, 2.0 * std::numbers::pi, inner).value / (2.0 * std::numbers::pi);
    };
    // |F(z)| crosses |t| near |z| = |t|^{1/k}; without these cuts the adaptive rule can
    // step over the region |z| < |t| entirely when |t| is small.
    std::vector<double> radial_cuts;
    if (std::abs(t) > 0.0) {
        for (unsigned k = 1; k <= std::max(f.total_degree(), 1U); ++k) {
            radial_cuts.push_back(std::pow(std::abs(t), 1.0 / k));
        }
    }
    quad::Result r;
    if (chi.kind == BumpSpec::Kind::fubini_study) {
        // u = rho^2/(1+rho^2) makes the radial Fubini-Study measure uniform on [0, 1).
        std::vector<double> cuts;
        for (double rho : radial_cuts) {
            cuts.push_back(rho * rho / (1.0 + rho * rho));
        }
        r = quad::integrate([&](double u) { return angular_mean(std::sqrt(u / (1.0 - u))); }, 0.0, 1.0, options.quad,
                            cuts);
    } else {
        radial_cuts.push_back(chi.inner);
        r = quad::integrate(
            [&](double rho) { return 2.0 * std::numbers::pi * rho * chi.profile(rho) * angular_mean(rho); }, 0.0,
            chi.outer, options.quad, radial_cuts);
    }
    check_tolerance(r, options.tolerance);
    return {t, r.value, r.error};
}

// Additive recurrence with the generalised golden ratio (Roberts' R_d sequence).
std::vector<double> kronecker_generator(std::size_t dim)
{
    double phi = 2.0;
    for (int i = 0; i < 64; ++i) {
        phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
    }
    std::vector<double> alpha(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        alpha[i] = std::fmod(std::pow(1.0 / phi, static_cast<double>(i + 1)), 1.0);
    }
    return alpha;
}

IntegralSample psi_qmc(const PolynomialGerm &f, const BumpSpec &chi, std::complex<double> t, std::uint64_t seed,
                       const PsiOptions &options)
{
    const std::size_t nv = f.nvars();
    const std::size_t dim = 2 * nv;
    const auto alpha = kronecker_generator(dim);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const double disc_area = std::numbers::pi * chi.outer * chi.outer;
    std::vector<double> means;
    std::vector<double> shift(dim);
    std::vector<std::complex<double>> z(nv);
    for (std::size_t s = 0; s < std::max<std::size_t>(options.qmc_shifts, 2); ++s) {
        for (auto &v : shift) {
            v = unif(rng);
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < options.qmc_points; ++k) {
            double weight = 1.0;
            for (std::size_t j = 0; j < nv; ++j) {
                const double u = std::fmod(shift[2 * j] + static_cast<double>(k) * alpha[2 * j], 1.0);
                const double v = std::fmod(shift[2 * j + 1] + static_cast<double>(k) * alpha[2 * j + 1], 1.0);
                double rho;
                if (chi.kind == BumpSpec::Kind::fubini_study) {
                    rho = std::sqrt(u / (1.0 - u));
                } else {
                    rho = chi.outer * std::sqrt(u);
                    weight *= disc_area * chi.profile(rho);
                }
                z[j] = std::polar(rho, 2.0 * std::numbers::pi * v);
            }
            if (weight != 0.0) {
                sum += weight * safe_log_abs_sq(f.evaluate(z) - t);
            }
        }
        means.push_back(sum / static_cast<double>(options.qmc_points));
    }
    double mean = 0.0;
    for (double m : means) {
        mean += m;
    }
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) {
        var += (m - mean) * (m - mean);
    }
    var /= static_cast<double>(means.size() - 1);
    const double err = std::sqrt(var / static_cast<double>(means.size()));

    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t h = sorted.size() / 2;
    const double median = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    if (!(err <= options.tolerance)) {
        throw quadrature_failure(err, options.tolerance);
    }
    return {t, median, err};
}

} // namespace

IntegralSample psi_integral(const PolynomialGerm &f, const BumpSpec &chi, std::complex<double> t, std::uint64_t seed,
                            const PsiOptions &options)
{
    chi.validate();
    if (f.nvars() == 1) {
        return psi_one_variable(f, chi, t, options);
    }
    return psi_qmc(f, chi, t, seed, options);
}

GaussNormFamily classify_gauss_norm_germ(const PolynomialGerm &germ)
{
    const auto &terms = germ.terms();
    if (germ.nvars() == 2 && terms.size() == 1 && terms.begin()->first == Exponents{1, 1}) {
        return GaussNormFamily::node;
    }
    if (germ.nvars() >= 2 && terms.size() == germ.nvars()) {
        const Rational &c = terms.begin()->second;
        bool ok = true;
        for (const auto &[e, coef] : terms) {
            unsigned total = 0;
            unsigned nonzero = 0;
            for (unsigned p : e) {
                total += p;
                nonzero += p > 0;
            }
            ok = ok && total == 2 && nonzero == 1 && coef == c;
        }
        if (ok) {
            return GaussNormFamily::sum_of_squares;
        }
    }
    return GaussNormFamily::unsupported;
}

quad::Result gauss_norm_integral(std::complex<double> t, const PolynomialGerm &germ, double cutoff_radius,
                                 const quad::Options &options)
{
    const auto family = classify_gauss_norm_germ(germ);
    if (family == GaussNormFamily::unsupported) {
        throw unsupported_germ("gauss_norm_integral supports c*z0*z1 and c*(z0^2+...+zn^2), got " + germ.to_string());
    }
    if (t == 0.0) {
        throw std::invalid_argument("gauss_norm_integral diverges at t = 0");
    }
    if (!(cutoff_radius > 0.0)) {
        throw std::invalid_argument("cutoff radius must be positive");
    }
    const double c = germ.terms().begin()->second.to_double();
    const double log_c2 = std::log(c * c);
    // Fiber pi = t is {c * Q(z) = t}; work with s = t/c.
    const double abs_s = std::abs(t) / std::abs(c);
    const double r2 = cutoff_radius * cutoff_radius;

    if (family == GaussNormFamily::node) {
        // z0 = z, z1 = s/z; ||d pi||^2 = |c|^2 (e^u + S e^{-u}) with u = log|z|^2, S = |s|^2.
        const double log_s2 = 2.0 * std::log(abs_s);
        const double disc = r2 * r2 - 4.0 * abs_s * abs_s;
        if (disc < 0.0) {
            throw std::invalid_argument("|t| too large for the cutoff ball");
        }
        const double sq = std::sqrt(disc);
        // Roots of e^{2u} - R^2 e^u + S = 0; the small one via S / large root.
        const double big = 0.5 * (r2 + sq);
        const double u_hi = std::log(big);
        const double u_lo = log_s2 - u_hi;
        auto h = [&](double u) { return log_sum_exp(u, log_s2 - u); };
        // (dd^c h) = h''(u) du with h'' = 4 S e^{-2 h}.
        auto integrand = [&](double u) {
            const double hu = h(u);
            return (log_c2 + hu) * 4.0 * std::exp(log_s2 - 2.0 * hu);
        };
        const double cuts[] = {0.5 * log_s2};
        return quad::integrate(integrand, u_lo, u_hi, options, cuts);
    }

    // Sum of squares in N = n + 1 variables. The Gauss map z -> [z] is 2:1 from the fiber
    // onto P^n, |z|^2 = |s|/q with q = |w.w|/|w|^2, and q = sqrt(1 - sigma^2) where sigma
    // has density n sigma^{n-1} on [0, 1] under the Fubini-Study measure.
    const double n = static_cast<double>(germ.nvars() - 1);
    const double q_min = abs_s / r2;
    if (q_min > 1.0) {
        throw std::invalid_argument("|t| too large for the cutoff ball");
    }
    const double sigma_max = std::sqrt((1.0 - q_min) * (1.0 + q_min));
    const double log_4c2s = std::log(4.0) + log_c2 + std::log(abs_s);
    auto integrand = [&](double sigma) {
        const double log_q = 0.5 * std::log((1.0 - sigma) * (1.0 + sigma));
        return 2.0 * (log_4c2s - log_q) * n * std::pow(sigma, n - 1.0);
    };
    return quad::integrate(integrand, 0.0, sigma_max, options);
}

std::vector<IntegralSample>
evaluate_on_grid(const SampleGrid &grid, const std::function<IntegralSample(std::complex<double>, std::uint64_t)> &eval,
                 std::uint64_t master_seed, std::size_t threads)
{
    grid.validate();
    const auto pts = grid.points();
    std::vector<IntegralSample> out(pts.size());
    std::vector<std::exception_ptr> errors(pts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pts.size(); i = next++) {
            try {
                out[i] = eval(pts[i], quad::derive_seed(master_seed, i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(pts.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n_threads; ++k) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    // First failure in grid order, so the reported error is deterministic.
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace degen
