#include <doctest.h>

#include <degen/cli/commands.hpp>

#include <string>

using degen::Rational;
using degen::cli::FamilySpec;
using degen::cli::Report;
using nlohmann::json;

namespace
{

std::string data(const std::string &name)
{
    return std::string(DEGEN_TEST_DATA_DIR) + "/" + name;
}

std::string spec_error_path(const json &j)
{
    try {
        FamilySpec::from_json(j);
    } catch (const degen::cli::spec_error &e) {
        return e.path();
    }
    return "<no error>";
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("genus")
    {
        CHECK(degen::cli::cmd_genus("td", 4) == "1, 1/2, 1/12, 0, -1/720");
        CHECK(degen::cli::cmd_genus("td-inv", 2) == "1, -1/2, 1/6");
        CHECK(degen::cli::cmd_genus("e", 0) == "1/3");
        CHECK_THROWS_AS(degen::cli::cmd_genus("chi", 2), degen::cli::unknown_genus);
        CHECK_THROWS_AS(degen::cli::cmd_genus("td", 65), degen::degree_out_of_range);
        CHECK_NOTHROW(degen::cli::cmd_genus("td", 64));
    }

    TEST_CASE("predict")
    {
        const auto node = degen::cli::cmd_predict(FamilySpec::load(data("node_curve.json")));
        CHECK(node.predicted_coeff == Rational(-1, 6));
        CHECK(node.milnor_sum == std::optional<std::size_t>(1));
        const auto fermat = degen::cli::cmd_predict(FamilySpec::load(data("fermat_surface.json")));
        CHECK(fermat.milnor_table.at(0).mu == std::optional<std::size_t>(8));
        CHECK(fermat.predicted_coeff == Rational(1, 3));
        const auto empty = degen::cli::cmd_predict(FamilySpec::load(data("empty_family.json")));
        CHECK(empty.predicted_coeff == Rational(0));
        CHECK(empty.ok());
    }

    TEST_CASE("predict with characteristic numbers cross-checks")
    {
        const auto r = degen::cli::cmd_predict(FamilySpec::load(data("two_nodes_rank2.json")));
        CHECK(r.predicted_coeff == Rational(-2, 3));
        CHECK(r.theorem71_coeff == Rational(-2, 3));
        CHECK(r.cross_check == std::optional<bool>(true));
    }

    TEST_CASE("non-isolated germ is an error")
    {
        const json j = {{"fiber_dimension", 1}, {"germs", {"z0^2*z1"}}};
        const auto r = degen::cli::cmd_predict(FamilySpec::from_json(j));
        CHECK(r.error.has_value());
        CHECK_FALSE(r.predicted_coeff.has_value());
        CHECK_FALSE(r.milnor_table.at(0).mu.has_value());
    }

    TEST_CASE("spec validation names the field")
    {
        CHECK(spec_error_path({{"bundle_rank", 1}}) == "fiber_dimension");
        CHECK(spec_error_path({{"fiber_dimension", 0}}) == "fiber_dimension");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"bundle_rank", 0}}) == "bundle_rank");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"germs", {{{"poly", "z0*z1*z2"}}}}}) == "germs[0]");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"germs", {{{"poly", "z0^"}}}}}) == "germs[0].poly");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"germs", {{{"terms", {{{"exps", {1}}}}}}}}})
              == "germs[0].terms[0].exps");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"verify", {{"mode", "bogus"}}}}) == "verify.mode");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"verify", {{"mode", "psi"}, {"grid", {{"count", -3}}}}}})
              == "verify.grid.count");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"verify", {{"mode", "psi"}, {"chi", {{"outer", 1.5}}}}}})
              == "verify.chi");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"verify", {{"mode", "monomial"}}}}) == "verify.nu");
        CHECK(spec_error_path({{"fiber_dimension", 1},
                               {"verify", {{"mode", "gauss-norm"}, {"model", {{"exponents", {"1/2", "1/2"}}}}}}})
              == "verify.model.exponents[1]");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"char_numbers", {{"dimension", 0}, {"numbers", {{{"td", 1}, {"value", 1}}}}}}})
              == "char_numbers.numbers[0]");
        CHECK(spec_error_path({{"fiber_dimension", 1}, {"colour", "red"}}) == "colour");
    }

    TEST_CASE("grid flag")
    {
        const auto g = degen::cli::parse_grid_flag("1e-5,0.1,20,4");
        CHECK(g.radii.size() == 20);
        CHECK(g.angles == 4);
        CHECK_THROWS_AS(degen::cli::parse_grid_flag("1e-5,0.1,20"), degen::cli::spec_error);
        CHECK_THROWS_AS(degen::cli::parse_grid_flag("a,b,c,d"), degen::cli::spec_error);
    }

    TEST_CASE("verify node in gauss-norm mode")
    {
        const auto r = degen::cli::cmd_verify(FamilySpec::load(data("node_curve.json")));
        REQUIRE(r.verify.has_value());
        CHECK_FALSE(r.verify->error.has_value());
        CHECK(r.verify->fitted_log_coeff == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(r.verify->relative_error < 0.05);
        CHECK(r.verify->passed);
        CHECK(r.ok());
    }

    TEST_CASE("verify monomial mode")
    {
        const auto r = degen::cli::cmd_verify(FamilySpec::load(data("monomial_nu1.json")));
        REQUIRE(r.verify.has_value());
        CHECK(std::abs(r.verify->fitted_log_coeff) < 1e-6);
        bool found = false;
        for (const auto &[label, c] : r.verify->coefficients) {
            if (label == "|t|^2") {
                CHECK(c == doctest::Approx(1.0).epsilon(1e-6));
                found = true;
            }
        }
        CHECK(found);
        CHECK(r.ok());
    }

    TEST_CASE("verify psi mode on a submersion")
    {
        const auto r = degen::cli::cmd_verify(FamilySpec::load(data("psi_smooth.json")));
        REQUIRE(r.verify.has_value());
        CHECK_FALSE(r.verify->error.has_value());
        CHECK(std::abs(r.verify->fitted_log_coeff) < 1e-3);
        CHECK(r.ok());
    }

    TEST_CASE("verify surfaces unsupported germs")
    {
        json j = {{"fiber_dimension", 1}, {"germs", {"z0^3 + z1^3"}}, {"verify", {{"mode", "gauss-norm"}}}};
        const auto r = degen::cli::cmd_verify(FamilySpec::from_json(j));
        REQUIRE(r.verify.has_value());
        CHECK(r.verify->error.has_value());
        CHECK_FALSE(r.ok());
    }

    TEST_CASE("failed check gives a non-ok report")
    {
        degen::cli::VerifyOverrides ov;
        ov.tolerance = 1e-300;
        const auto r = degen::cli::cmd_verify(FamilySpec::load(data("node_curve.json")), ov);
        REQUIRE(r.verify.has_value());
        CHECK_FALSE(r.verify->error.has_value());
        CHECK_FALSE(r.verify->passed);
        CHECK_FALSE(r.ok());
    }

    TEST_CASE("report round trip")
    {
        degen::cli::VerifyOverrides ov;
        ov.timings = true;
        for (const char *name : {"node_curve.json", "monomial_nu1.json", "two_nodes_rank2.json"}) {
            const auto spec = FamilySpec::load(data(name));
            const Report r = spec.verify ? degen::cli::cmd_verify(spec, ov) : degen::cli::cmd_predict(spec);
            const Report back = Report::from_json(json::parse(r.dump()));
            CHECK(back == r);
            CHECK(back.dump() == r.dump());
        }
    }

    TEST_CASE("verify is deterministic across thread counts")
    {
        const auto spec = FamilySpec::load(data("psi_smooth.json"));
        degen::cli::VerifyOverrides one;
        degen::cli::VerifyOverrides many;
        many.threads = 4;
        CHECK(degen::cli::cmd_verify(spec, one).dump() == degen::cli::cmd_verify(spec, many).dump());
    }

    TEST_CASE("milnor")
    {
        CHECK(degen::cli::cmd_milnor("z0*z1").mu == std::optional<std::size_t>(1));
        CHECK(degen::cli::cmd_milnor("z0^3+z1^3").mu == std::optional<std::size_t>(4));
        CHECK(degen::cli::cmd_milnor("z0").mu == std::optional<std::size_t>(0));
    }

    TEST_CASE("fit")
    {
        json samples = json::array();
        for (double r : degen::SampleGrid::geometric(1e-5, 1e-1, 30, 1).radii) {
            samples.push_back({{"t", {r, 0.0}}, {"value", 2.0 * std::log(r) - 1.0}});
        }
        const auto out = degen::cli::cmd_fit({{"samples", samples}});
        CHECK(out["log_coeff"].get<double>() == doctest::Approx(1.0));
        CHECK(out["constant"].get<double>() == doctest::Approx(-1.0));
        const auto bare = degen::cli::cmd_fit(samples);
        CHECK(bare["log_coeff"].get<double>() == doctest::Approx(1.0));
        CHECK_THROWS_AS(degen::cli::cmd_fit({{"samples", {{{"value", 1.0}}}}}), degen::cli::spec_error);
    }
}
