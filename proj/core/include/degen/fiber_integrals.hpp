#ifndef DEGEN_FIBER_INTEGRALS_HPP
#define DEGEN_FIBER_INTEGRALS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <degen/polynomial.hpp>
#include <degen/quadrature.hpp>

namespace degen
{

// Exponents of F(z) = z_1^{nu_1} ... z_n^{nu_n}.
struct MonomialExponents {
    std::vector<unsigned> nu;

    bool is_trivial() const;
};

// Radii geometric in [r_min, r_max], each sampled at `angles` equally spaced arguments.
struct SampleGrid {
    std::vector<double> radii;
    std::size_t angles = 1;

    static SampleGrid geometric(double r_min, double r_max, std::size_t count, std::size_t angles);
    // Default fitting grid: 40 radii in [1e-6, 1e-1], 8 angles.
    static SampleGrid default_grid();

    // Radius-major list of t values.
    std::vector<std::complex<double>> points() const;
    void validate() const;
};

struct IntegralSample {
    std::complex<double> t;
    double value = 0.0;
    double est_error = 0.0;

    friend bool operator==(const IntegralSample &, const IntegralSample &) = default;
};

/// Integral over P^1 of log|A z^nu + B|^2 against the Fubini-Study form of mass 1,
/// which is nu * log(|A|^{2/nu} + |B|^{2/nu}). Throws both_zero for A = B = 0.
double base_p1_integral(std::complex<double> a, std::complex<double> b, unsigned nu);

struct MonomialOptions {
    double tolerance = 1e-8;
    quad::Options quad{1e-13, 1e-13, 4000};
};

/// f(t) = integral over (P^1)^n of log|z^nu - t|^2 w_1 ... w_n.
///
/// The last non-zero exponent is integrated in closed form with base_p1_integral; the
/// remaining factors depend only on |z_i|, so they are integrated in x_i = log|z_i|^2
/// where each Fubini-Study form becomes the logistic density. Throws quadrature_failure
/// if the error estimate exceeds options.tolerance.
quad::Result monomial_f_detailed(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options = {});
double monomial_f(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options = {});

/// The same integral without the closed-form step: after the exact angular average
/// (Jensen) the integrand is max(sum nu_i x_i, log|t|^2) and all n radial variables are
/// integrated numerically, splitting the innermost one at the kink.
quad::Result monomial_f_direct(std::complex<double> t, const MonomialExponents &nu, const MonomialOptions &options = {});

/// Density g(r) of the pushforward of w_1 ... w_n along z -> z^nu, normalised so that
/// (r d/dr)^2 f(r) = g(r). Equals 4 times the density of sum nu_i x_i (x_i iid logistic)
/// at 2 log r.
double monomial_density(double r, const MonomialExponents &nu, const MonomialOptions &options = {});

// Smooth compactly supported weight chi = prod_i phi(|z_i|) times the Euclidean volume form,
// with phi = 1 on [0, inner], 0 beyond outer and a quintic smoothstep in between. The
// Fubini-Study kind instead uses prod_i w_i, the model weight on (P^1)^n.
struct BumpSpec {
    enum class Kind { bump, fubini_study };
    Kind kind = Kind::bump;
    double inner = 0.5;
    double outer = 0.9;

    // Throws non_compact_support if the bump leaves the unit polydisc.
    void validate() const;
    double profile(double rho) const;
    // Integral of chi over one coordinate disc.
    double mass_per_variable() const;
    double mass(std::size_t nvars) const;
};

struct PsiOptions {
    // Bound on est_error. Quasi-Monte-Carlo over the log singularity of log|F - t|^2
    // reaches a few 1e-3 with the default point count, hence the loose default.
    double tolerance = 2e-2;
    // Quasi-Monte-Carlo settings for two or more variables.
    std::size_t qmc_points = 1 << 14;
    std::size_t qmc_shifts = 8;
    quad::Options quad{1e-10, 1e-10, 2000};
};

/// psi(t) = integral of log|F(z) - t|^2 chi(z).
///
/// One variable: nested adaptive quadrature in polar coordinates. Several variables:
/// randomised rank-1 (Kronecker) quasi-Monte-Carlo with independent random shifts;
/// the value is the median of the shift means and est_error their standard error.
IntegralSample psi_integral(const PolynomialGerm &f, const BumpSpec &chi, std::complex<double> t, std::uint64_t seed,
                            const PsiOptions &options = {});

/// L(t) = integral over X_t within |z| <= cutoff of log||d pi||^2 (dd^c log||d pi||^2)^n.
///
/// Supported germs: c z0 z1 (two variables), reduced to a 1-D integral in u = log|z0|^2,
/// and c (z0^2 + ... + zn^2), reduced through the 2:1 Gauss map onto P^n. Anything else
/// throws unsupported_germ. The log|t|^2 slope of L is the Milnor number.
quad::Result gauss_norm_integral(std::complex<double> t, const PolynomialGerm &germ, double cutoff_radius = 1.0,
                                 const quad::Options &options = {1e-12, 1e-12, 4000});

// Which closed reduction gauss_norm_integral uses for a germ.
enum class GaussNormFamily { node, sum_of_squares, unsupported };
GaussNormFamily classify_gauss_norm_germ(const PolynomialGerm &germ);

/// Evaluates `eval(t, seed)` at every grid point on up to `threads` worker threads.
/// Output is in grid order; seed i is derived from master_seed and the point index,
/// so results do not depend on the thread count.
std::vector<IntegralSample>
evaluate_on_grid(const SampleGrid &grid, const std::function<IntegralSample(std::complex<double>, std::uint64_t)> &eval,
                 std::uint64_t master_seed, std::size_t threads);

} // namespace degen

#endif
