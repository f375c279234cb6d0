#include <doctest.h>

#include "oracles.hpp"

#include <degen/errors.hpp>
#include <degen/milnor.hpp>

#include <map>

using degen::Exponents;
using degen::PolynomialGerm;
using degen::Rational;

namespace
{

using Poly = std::map<Exponents, Rational>;

Poly multiply(const Poly &a, const Poly &b)
{
    Poly out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            out[e] += ca * cb;
        }
    }
    return out;
}

// f(M z) for an integer matrix M, by expanding each monomial as a product of linear forms.
PolynomialGerm substitute(const PolynomialGerm &f, const std::vector<std::vector<long>> &m)
{
    const std::size_t n = f.nvars();
    std::vector<Poly> linear(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] != 0) {
                Exponents e(n, 0);
                e[j] = 1;
                linear[i][e] = Rational(m[i][j]);
            }
        }
    }
    PolynomialGerm out(n);
    for (const auto &[e, c] : f.terms()) {
        Poly acc{{Exponents(n, 0), c}};
        for (std::size_t i = 0; i < n; ++i) {
            for (unsigned p = 0; p < e[i]; ++p) {
                acc = multiply(acc, linear[i]);
            }
        }
        for (const auto &[ee, cc] : acc) {
            out.add_term(ee, cc);
        }
    }
    return out;
}

std::size_t mu(const std::string &text)
{
    const auto r = degen::milnor_number(PolynomialGerm::parse(text));
    REQUIRE(r.mu.has_value());
    return *r.mu;
}

} // namespace

TEST_SUITE("milnor")
{
    TEST_CASE("basic germs")
    {
        CHECK(mu("z0*z1") == 1);
        CHECK(mu("z0^3+z1^3") == 4);
        CHECK(mu("z0^3+z1^3+z2^3") == 8);
        for (unsigned k = 1; k <= 5; ++k) {
            CHECK(mu("z0^" + std::to_string(k + 1) + " + z1^2") == k);
        }
        CHECK(mu("z0^2*z1 - z1^3") == 4); // D4
        CHECK(mu("z0^3 + z1^4") == 6);    // E6
        CHECK(mu("z0^3 + z0*z1^3") == 7); // E7
        CHECK(mu("z0^3 + z1^5") == 8);    // E8
    }

    TEST_CASE("no critical point")
    {
        const auto r = degen::milnor_number(PolynomialGerm::parse("z0"));
        CHECK(r.mu == std::optional<std::size_t>(0));
        CHECK(mu("z0 + z1^2") == 0);
        // f(0) != 0: the origin is not on the zero fiber.
        CHECK(mu("1 + z0^2 + z1^2") == 0);
    }

    TEST_CASE("one variable")
    {
        CHECK(mu("z0^2") == 1);
        CHECK(mu("z0^7") == 6);
    }

    TEST_CASE("non-isolated critical point")
    {
        const auto r = degen::milnor_number(PolynomialGerm::parse("z0^2*z1"));
        CHECK(r.is_infinite());
        CHECK(degen::milnor_number(PolynomialGerm::parse("z0^2")).mu == std::optional<std::size_t>(1));
        CHECK(degen::milnor_number(PolynomialGerm::parse("z0^2", 2)).is_infinite());
        CHECK_THROWS_AS(degen::milnor_sum(std::vector{PolynomialGerm::parse("z0*z1"), PolynomialGerm::parse("z0^2*z1")}),
                        degen::bound_exceeded);
    }

    TEST_CASE("explicit degree bound too small")
    {
        const auto r = degen::milnor_number(PolynomialGerm::parse("z0^6 + z1^2"), 3);
        CHECK(r.is_infinite());
        CHECK(r.degree_bound_used == 3);
        CHECK(degen::milnor_number(PolynomialGerm::parse("z0^6 + z1^2"), 12).mu == std::optional<std::size_t>(5));
    }

    TEST_CASE("dimension sequence is monotone and stabilises")
    {
        const auto r = degen::milnor_number(PolynomialGerm::parse("z0^4 + z1^3"));
        REQUIRE(r.dimension_sequence.size() >= 2);
        for (std::size_t i = 1; i < r.dimension_sequence.size(); ++i) {
            CHECK(r.dimension_sequence[i - 1] <= r.dimension_sequence[i]);
        }
        CHECK(r.dimension_sequence.back() == 6);
        CHECK(r.dimension_sequence[r.dimension_sequence.size() - 2] == 6);
    }

    TEST_CASE("quasi-homogeneous formula")
    {
        const std::vector<Rational> w11{1, 1};
        CHECK(degen::milnor_quasihomogeneous(w11, 2) == 1);
        CHECK(degen::milnor_quasihomogeneous(w11, 3) == 4);
        const std::vector<Rational> w5(5, Rational(1));
        CHECK(degen::milnor_quasihomogeneous(w5, 2) == 1);
        CHECK_THROWS_AS(degen::milnor_quasihomogeneous(w11, 1), std::invalid_argument);
        const std::vector<Rational> w22{2, 2};
        CHECK_THROWS_AS(degen::milnor_quasihomogeneous(w22, 3), degen::not_integer);
    }

    TEST_CASE("weights")
    {
        const auto w = degen::quasihomogeneous_weights(PolynomialGerm::parse("z0^3 + z1^2"));
        REQUIRE(w.has_value());
        CHECK((*w)[0] == Rational(1, 3));
        CHECK((*w)[1] == Rational(1, 2));
        CHECK_FALSE(degen::quasihomogeneous_weights(PolynomialGerm::parse("z0^2 + z1^2 + z0^3")).has_value());
    }

    TEST_CASE("sum")
    {
        const std::vector<PolynomialGerm> two{PolynomialGerm::parse("z0*z1"), PolynomialGerm::parse("z0*z1")};
        CHECK(degen::milnor_sum(two) == 2);
        CHECK(degen::milnor_sum(std::vector<PolynomialGerm>{}) == 0);
        CHECK(degen::milnor_sum(std::vector{PolynomialGerm::parse("z0^3+z1^3")}) == 4);
    }

    TEST_CASE("Morse points in 2 to 5 variables")
    {
        for (std::size_t n = 2; n <= 5; ++n) {
            PolynomialGerm sq(n);
            PolynomialGerm chain(n);
            for (std::size_t i = 0; i < n; ++i) {
                Exponents e(n, 0);
                e[i] = 2;
                sq.add_term(e, 1);
            }
            // z0 z1 + z1 z2 + ... + z_{n-1}^2 has an invertible Hessian for every n.
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Exponents e(n, 0);
                e[i] = 1;
                e[i + 1] = 1;
                chain.add_term(e, 1);
            }
            Exponents last(n, 0);
            last[n - 1] = 2;
            chain.add_term(last, 1);
            CHECK(degen::milnor_number(sq).mu == std::optional<std::size_t>(1));
            CHECK(degen::milnor_number(chain).mu == std::optional<std::size_t>(1));
        }
    }

    TEST_CASE("invariance under linear changes of coordinates")
    {
        CHECK(mu("z0*z1") == mu("z0^2 - z1^2"));
        degen::oracle::RationalGen gen(2024);
        std::uniform_int_distribution<long> entry(-2, 2);
        const std::vector<std::string> germs{"z0^3 + z1^2", "z0^4 + z1^2", "z0^2*z1 - z1^3", "z0^3 + z1^3", "z0^3 + z1^4"};
        for (const auto &text : germs) {
            const auto f = PolynomialGerm::parse(text);
            const std::size_t expected = *degen::milnor_number(f).mu;
            int done = 0;
            while (done < 3) {
                std::vector<std::vector<long>> m{{entry(gen.engine()), entry(gen.engine())},
                                                 {entry(gen.engine()), entry(gen.engine())}};
                if (m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0) {
                    continue;
                }
                const auto g = substitute(f, m);
                CAPTURE(g.to_string());
                CHECK(degen::milnor_number(g).mu == std::optional<std::size_t>(expected));
                ++done;
            }
        }
    }

    TEST_CASE("agrees with the quasi-homogeneous count on weighted germs")
    {
        for (const char *text : {"z0^2 + z1^7", "z0^3 + z1^3 + z2^4", "z0^2*z1 + z1^4", "z0^2 + z1^2 + z2^2 + z3^5"}) {
            const auto f = PolynomialGerm::parse(text);
            const auto w = degen::quasihomogeneous_weights(f);
            REQUIRE(w.has_value());
            CAPTURE(text);
            CHECK(degen::milnor_number(f).mu == std::optional<std::size_t>(degen::milnor_quasihomogeneous(*w, 1)));
        }
    }
}
