#include <doctest.h>

#include <degen/asym_fit.hpp>
#include <degen/errors.hpp>
#include <degen/fiber_integrals.hpp>

#include <cmath>
#include <numbers>

using degen::BumpSpec;
using degen::IntegralSample;
using degen::MonomialExponents;
using degen::PolynomialGerm;
using degen::SampleGrid;

namespace
{

constexpr double pi = std::numbers::pi;

// Integral over P^1 of log|A z^nu + B|^2 against the Fubini-Study form, by nested
// quadrature in u = |z|^2/(1 + |z|^2) (uniform radial measure) and the angle.
double p1_integral_oracle(std::complex<double> a, std::complex<double> b, unsigned nu)
{
    auto radial = [&](double u) {
        const double rho = std::sqrt(u / (1.0 - u));
        auto angular = [&](double theta) {
            const auto z = std::polar(rho, theta);
            return std::log(std::max(std::norm(a * std::pow(z, static_cast<int>(nu)) + b), 1e-300));
        };
        return degen::quad::integrate(angular, 0.0, 2.0 * pi, {1e-12, 1e-12, 4000}).value / (2.0 * pi);
    };
    const double rho0 = std::abs(a) > 0.0 ? std::pow(std::abs(b) / std::abs(a), 1.0 / nu) : 0.0;
    const double cuts[] = {rho0 * rho0 / (1.0 + rho0 * rho0)};
    return degen::quad::integrate(radial, 0.0, 1.0, {1e-10, 1e-10, 4000}, cuts).value;
}

IntegralSample node_sample(std::complex<double> t, std::uint64_t)
{
    static const auto node = PolynomialGerm::parse("z0*z1");
    const auto r = degen::gauss_norm_integral(t, node);
    return {t, r.value, r.error};
}

} // namespace

TEST_SUITE("fiber_integrals")
{
    TEST_CASE("base P^1 integral: direct substitutions")
    {
        CHECK(degen::base_p1_integral(1.0, 0.0, 1) == doctest::Approx(0.0));
        CHECK(degen::base_p1_integral(1.0, std::polar(1.0, 0.7), 1) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
        CHECK(degen::base_p1_integral(0.0, 1.0, 2) == doctest::Approx(0.0));
        CHECK_THROWS_AS(degen::base_p1_integral(0.0, 0.0, 1), degen::both_zero);
    }

    TEST_CASE("base P^1 integral against polar quadrature")
    {
        const std::complex<double> a(1.3, 0.2);
        for (unsigned nu : {1U, 2U, 3U}) {
            for (std::complex<double> b : {std::complex<double>(-0.4, 0.0), std::complex<double>(0.0, 2.5)}) {
                CAPTURE(nu);
                CHECK(degen::base_p1_integral(a, b, nu) == doctest::Approx(p1_integral_oracle(a, b, nu)).epsilon(1e-8));
            }
        }
    }

    TEST_CASE("monomial_f closed forms for one factor")
    {
        for (double r : {1e-6, 1e-3, 0.05, 0.3, 0.9}) {
            const std::complex<double> t = std::polar(r, 1.1);
            CHECK(std::abs(degen::monomial_f(t, {{1}}) - std::log1p(r * r)) < 1e-10);
            // nu log(1 + |t|^{2/nu}) with nu = 2.
            CHECK(std::abs(degen::monomial_f(t, {{2}}) - 2.0 * std::log1p(r)) < 1e-10);
            CHECK(std::abs(degen::monomial_f(t, {{3}}) - 3.0 * std::log1p(std::pow(r, 2.0 / 3.0))) < 1e-10);
        }
        CHECK(degen::monomial_f(0.0, {{1, 2}}) == doctest::Approx(0.0));
    }

    TEST_CASE("zero exponents drop out")
    {
        CHECK(degen::monomial_f(0.2, {{0, 1}}) == doctest::Approx(degen::monomial_f(0.2, {{1}})).epsilon(1e-12));
        CHECK_THROWS_AS(degen::monomial_f(0.2, {{0, 0}}), std::invalid_argument);
    }

    TEST_CASE("S^1 invariance")
    {
        for (const auto &nu : std::vector<std::vector<unsigned>>{{1}, {2, 1}, {1, 3}}) {
            for (double r : {1e-3, 0.1, 0.4}) {
                const double ref = degen::monomial_f(r, {nu});
                for (int k = 1; k < 6; ++k) {
                    CHECK(std::abs(degen::monomial_f(std::polar(r, k * 1.0), {nu}) - ref) < 1e-10);
                }
            }
        }
    }

    TEST_CASE("peeled and direct quadrature agree in two variables")
    {
        for (const auto &nu : std::vector<std::vector<unsigned>>{{1, 1}, {1, 2}, {3, 2}}) {
            for (double r : {1e-3, 0.02, 0.5}) {
                CHECK(std::abs(degen::monomial_f(r, {nu}) - degen::monomial_f_direct(r, {nu}).value) < 1e-8);
            }
        }
    }

    TEST_CASE("pushforward density")
    {
        // One factor: g = 4u/(nu (1+u)^2) with u = r^{2/nu}.
        for (unsigned nu : {1U, 2U, 3U}) {
            for (double r : {0.01, 0.3, 2.0}) {
                const double u = std::pow(r, 2.0 / nu);
                CHECK(degen::monomial_density(r, {{nu}}) == doctest::Approx(4.0 * u / (nu * (1.0 + u) * (1.0 + u))));
            }
        }
        // Several factors: (r d/dr)^2 f = g, by central differences in log r.
        const MonomialExponents nu{{1, 2}};
        for (double r : {0.05, 0.3}) {
            const double h = 1e-3;
            const double s = std::log(r);
            const double second = (degen::monomial_f(std::exp(s + h), nu) - 2.0 * degen::monomial_f(r, nu)
                                   + degen::monomial_f(std::exp(s - h), nu))
                                  / (h * h);
            CHECK(second == doctest::Approx(degen::monomial_density(r, nu)).epsilon(1e-4));
        }
    }

    TEST_CASE("grid")
    {
        const auto g = SampleGrid::default_grid();
        CHECK(g.radii.size() == 40);
        CHECK(g.angles == 8);
        CHECK(g.radii.front() == doctest::Approx(1e-6));
        CHECK(g.radii.back() == doctest::Approx(1e-1));
        const auto pts = g.points();
        CHECK(pts.size() == 320);
        CHECK(std::abs(pts[9]) == doctest::Approx(g.radii[1]));
        CHECK_THROWS_AS(SampleGrid::geometric(0.1, 0.01, 5, 1), std::invalid_argument);
        CHECK_THROWS_AS(SampleGrid::geometric(1e-3, 1.5, 5, 1), std::invalid_argument);
    }

    TEST_CASE("bump")
    {
        BumpSpec chi;
        CHECK(chi.profile(0.2) == 1.0);
        CHECK(chi.profile(0.95) == 0.0);
        const double m = chi.mass_per_variable();
        CHECK(m > pi * 0.25);
        CHECK(m < pi * 0.81);
        CHECK(chi.mass(2) == doctest::Approx(m * m));
        BumpSpec wide{BumpSpec::Kind::bump, 0.5, 1.2};
        CHECK_THROWS_AS(wide.validate(), degen::non_compact_support);
        CHECK_THROWS_AS(degen::psi_integral(PolynomialGerm::parse("z0"), wide, 0.1, 1), degen::non_compact_support);
    }

    TEST_CASE("psi in one variable is continuous at 0")
    {
        const auto f = PolynomialGerm::parse("z0");
        const BumpSpec chi;
        const double at0 = degen::psi_integral(f, chi, 0.0, 1).value;
        double prev = 1.0;
        for (double r : {1e-1, 1e-2, 1e-3}) {
            const double d = std::abs(degen::psi_integral(f, chi, r, 1).value - at0);
            CHECK(d < prev);
            prev = d;
        }
        CHECK(prev < 1e-4);
    }

    TEST_CASE("psi with the Fubini-Study weight reproduces monomial_f")
    {
        BumpSpec fs;
        fs.kind = BumpSpec::Kind::fubini_study;
        for (double r : {1e-3, 0.1, 0.6}) {
            CHECK(std::abs(degen::psi_integral(PolynomialGerm::parse("z0"), fs, r, 1).value - std::log1p(r * r)) < 1e-9);
        }
        // Two variables go through quasi-Monte-Carlo: compare within the reported error.
        for (double r : {0.1, 0.5}) {
            const auto s = degen::psi_integral(PolynomialGerm::parse("z0*z1"), fs, r, 99);
            CHECK(std::abs(s.value - degen::monomial_f(r, {{1, 1}})) < 5.0 * s.est_error + 1e-3);
        }
    }

    TEST_CASE("psi of a submersion has no log term")
    {
        const auto f = PolynomialGerm::parse("z0 + 1/4");
        const auto grid = SampleGrid::geometric(1e-4, 1e-1, 30, 2);
        const auto raw = degen::evaluate_on_grid(
            grid, [&](std::complex<double> t, std::uint64_t s) { return degen::psi_integral(f, BumpSpec{}, t, s); }, 5, 2);
        const auto fit = degen::fit_b0(degen::s1_average(raw), degen::ExpansionModel{});
        CHECK(std::abs(fit.log_coeff) < 1e-3);
    }

    TEST_CASE("psi quasi-Monte-Carlo is reproducible and reports failure")
    {
        const auto f = PolynomialGerm::parse("z0*z1");
        degen::PsiOptions opts;
        opts.qmc_points = 2048;
        opts.tolerance = 1.0;
        const auto a = degen::psi_integral(f, BumpSpec{}, 0.05, 42, opts);
        const auto b = degen::psi_integral(f, BumpSpec{}, 0.05, 42, opts);
        CHECK(a == b);
        opts.tolerance = 1e-9;
        CHECK_THROWS_AS(degen::psi_integral(f, BumpSpec{}, 0.05, 42, opts), degen::quadrature_failure);
    }

    TEST_CASE("Gauss-norm integral of the node")
    {
        const auto node = PolynomialGerm::parse("z0*z1");
        const double l1 = degen::gauss_norm_integral(1e-3, node).value;
        const double l2 = degen::gauss_norm_integral(1e-5, node).value;
        const double slope = (l1 - l2) / (std::log(1e-6) - std::log(1e-10));
        CHECK(slope == doctest::Approx(1.0).epsilon(1e-3));
        CHECK_THROWS_AS(degen::gauss_norm_integral(0.0, node), std::invalid_argument);
        CHECK_THROWS_AS(degen::gauss_norm_integral(0.1, PolynomialGerm::parse("z0^3 + z1^3")), degen::unsupported_germ);
        CHECK(degen::classify_gauss_norm_germ(PolynomialGerm::parse("2 z0 z1")) == degen::GaussNormFamily::node);
        CHECK(degen::classify_gauss_norm_germ(PolynomialGerm::parse("z0^2 + z1^2 + z2^2"))
              == degen::GaussNormFamily::sum_of_squares);
        CHECK(degen::classify_gauss_norm_germ(PolynomialGerm::parse("z0^2 + 2 z1^2"))
              == degen::GaussNormFamily::unsupported);
    }

    TEST_CASE("sum of squares in two variables is the node after a linear change")
    {
        // z0^2 + z1^2 = w0 w1 with w = (z0 + i z1, z0 - i z1); |w| = sqrt(2)|z| and the
        // Gauss norm doubles, adding log 2 times the fiber mass 2 sqrt(1 - |t|^2/R^4).
        const auto sq = PolynomialGerm::parse("z0^2 + z1^2");
        const auto node = PolynomialGerm::parse("z0*z1");
        for (double r : {1e-5, 1e-3, 0.05}) {
            const double lhs = degen::gauss_norm_integral(r, sq, 1.0).value;
            const double rhs = degen::gauss_norm_integral(r, node, std::sqrt(2.0)).value
                               + 2.0 * std::log(2.0) * std::sqrt(1.0 - r * r);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }

    TEST_CASE("cutoff changes the integral by O(1) only")
    {
        for (const char *text : {"z0*z1", "z0^2 + z1^2", "z0^2 + z1^2 + z2^2"}) {
            const auto g = PolynomialGerm::parse(text);
            auto slope = [&](double cutoff) {
                const double a = degen::gauss_norm_integral(1e-3, g, cutoff).value;
                const double b = degen::gauss_norm_integral(1e-5, g, cutoff).value;
                return (a - b) / (std::log(1e-6) - std::log(1e-10));
            };
            CAPTURE(text);
            CHECK(slope(2.0) == doctest::Approx(slope(1.0)).epsilon(0.02));
            CHECK(slope(1.0) == doctest::Approx(1.0).epsilon(0.01));
        }
    }

    TEST_CASE("grid evaluation is ordered and independent of the thread count")
    {
        const auto grid = SampleGrid::geometric(1e-4, 1e-1, 12, 3);
        const auto one = degen::evaluate_on_grid(grid, node_sample, 9, 1);
        const auto four = degen::evaluate_on_grid(grid, node_sample, 9, 4);
        CHECK(one == four);
        const auto pts = grid.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(one[i].t == pts[i]);
        }
        // Seeds depend on the point index only.
        std::vector<std::uint64_t> s1(pts.size());
        std::vector<std::uint64_t> s2(pts.size());
        degen::evaluate_on_grid(grid, [&](std::complex<double> t, std::uint64_t s) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (pts[i] == t) {
                    s1[i] = s;
                }
            }
            return IntegralSample{t, 0.0, 0.0};
        }, 9, 3);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s2[i] = degen::quad::derive_seed(9, i);
        }
        CHECK(s1 == s2);
    }

    TEST_CASE("grid evaluation reports the first failure in grid order")
    {
        const auto grid = SampleGrid::geometric(1e-3, 1e-1, 10, 1);
        auto eval = [](std::complex<double> t, std::uint64_t) -> IntegralSample {
            if (std::abs(t) > 0.01) {
                throw degen::quadrature_failure(std::abs(t), 0.0);
            }
            return {t, 0.0, 0.0};
        };
        for (std::size_t threads : {1U, 3U}) {
            try {
                degen::evaluate_on_grid(grid, eval, 1, threads);
                FAIL("expected a failure");
            } catch (const degen::quadrature_failure &e) {
                CHECK(e.estimate() == doctest::Approx(grid.radii[5]));
            }
        }
    }
}
