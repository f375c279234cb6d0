#include <degen/cli/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace
{

enum exit_code { ok = 0, check_failed = 1, failure = 2 };

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw degen::error("cannot write " + path);
    }
    out << text;
}

int emit_report(const degen::cli::Report &report, const std::string &format, const std::string &output)
{
    if (!output.empty()) {
        write_file(output, report.dump());
    }
    std::cout << (format == "json" ? report.dump() : report.summary());
    if (report.error) {
        return failure;
    }
    return report.ok() ? ok : check_failed;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Log|t|^2 coefficients of Quillen-metric degenerations: predictions and numerical checks"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;
    auto add_format = [&](CLI::App *cmd) {
        cmd->add_option("--format", format, "Output on stdout")->check(CLI::IsMember({"json", "text"}));
    };

    auto *genus = app.add_subcommand("genus", "Print exact genus coefficients");
    std::string genus_name;
    std::size_t order = degen::default_series_order;
    genus->add_option("name", genus_name, "td, td-inv or e")->required();
    genus->add_option("order,--order", order, "Truncation order N (at most 64)");

    auto *predict = app.add_subcommand("predict", "Predict the log|t|^2 coefficient of a family");
    std::string spec_path;
    predict->add_option("--spec", spec_path, "Family specification (JSON)")->required();
    predict->add_option("--output", output, "Write the JSON report to this file");
    add_format(predict);

    auto *verify = app.add_subcommand("verify", "Predict, then check numerically against fiber integrals");
    std::string grid_text;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
    bool timings = false;
    verify->add_option("--spec", spec_path, "Family specification (JSON)")->required();
    auto *grid_opt = verify->add_option("--grid", grid_text, "rmin,rmax,count,angles");
    auto *seed_opt = verify->add_option("--seed", seed, "Master seed (overrides the spec)");
    auto *tol_opt = verify->add_option("--tolerance", tolerance, "Pass threshold")->check(CLI::PositiveNumber);
    verify->add_option("--threads", threads, "Worker threads for sampling")->check(CLI::PositiveNumber);
    verify->add_flag("--timings", timings, "Include runtimes in the report");
    verify->add_option("--output", output, "Write the JSON report to this file");
    add_format(verify);

    auto *milnor = app.add_subcommand("milnor", "Milnor number of a germ at the origin");
    std::string germ_text;
    int bound = 0;
    milnor->add_option("germ", germ_text, "Polynomial, e.g. \"z0^3 + z1^3\"");
    milnor->add_option("--spec", spec_path, "Compute for every germ of a family specification");
    auto *bound_opt = milnor->add_option("--bound", bound, "Degree bound D_max")->check(CLI::PositiveNumber);
    add_format(milnor);

    auto *fit = app.add_subcommand("fit", "Fit samples to the Barlet expansion space");
    std::string samples_path;
    std::size_t log_power = 1;
    fit->add_option("--samples", samples_path, "JSON samples file")->required();
    fit->add_option("--max-log-power", log_power, "Default k_max when the file has no model");
    fit->add_option("--output", output, "Write the JSON fit to this file");
    add_format(fit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (genus->parsed()) {
            std::cout << degen::cli::cmd_genus(genus_name, order) << "\n";
            return ok;
        }
        if (predict->parsed()) {
            return emit_report(degen::cli::cmd_predict(degen::cli::FamilySpec::load(spec_path)), format, output);
        }
        if (verify->parsed()) {
            degen::cli::VerifyOverrides ov;
            if (*grid_opt) {
                ov.grid = degen::cli::parse_grid_flag(grid_text);
            }
            if (*seed_opt) {
                ov.seed = seed;
            }
            if (*tol_opt) {
                ov.tolerance = tolerance;
            }
            ov.threads = threads;
            ov.timings = timings;
            return emit_report(degen::cli::cmd_verify(degen::cli::FamilySpec::load(spec_path), ov), format, output);
        }
        if (milnor->parsed()) {
            const std::optional<int> d = *bound_opt ? std::optional<int>(bound) : std::nullopt;
            std::vector<std::pair<std::string, std::string>> germs;
            if (!spec_path.empty()) {
                for (const auto &g : degen::cli::FamilySpec::load(spec_path).germs) {
                    germs.emplace_back(g.label, g.germ.to_string());
                }
            }
            if (!germ_text.empty()) {
                germs.emplace_back("", germ_text);
            }
            if (germs.empty()) {
                std::cerr << "milnor: give a germ or --spec\n";
                return failure;
            }
            nlohmann::ordered_json all = nlohmann::ordered_json::array();
            for (const auto &[label, text] : germs) {
                const auto res = degen::cli::cmd_milnor(text, d);
                const std::string mu = res.mu ? std::to_string(*res.mu) : "INFINITE";
                if (format == "json") {
                    nlohmann::ordered_json j;
                    if (!label.empty()) {
                        j["label"] = label;
                    }
                    j["germ"] = text;
                    if (res.mu) {
                        j["mu"] = *res.mu;
                    } else {
                        j["mu"] = "INFINITE";
                    }
                    j["method"] = degen::to_string(res.method);
                    j["degree_bound_used"] = res.degree_bound_used;
                    j["dimension_sequence"] = res.dimension_sequence;
                    all.push_back(j);
                } else {
                    std::cout << (label.empty() ? "" : label + ": ") << mu << "\n";
                }
            }
            if (format == "json") {
                std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
            }
            return ok;
        }
        if (fit->parsed()) {
            std::ifstream in(samples_path);
            if (!in) {
                throw degen::error("cannot open " + samples_path);
            }
            const auto result = degen::cli::cmd_fit(nlohmann::json::parse(in), log_power);
            const std::string text = result.dump(2) + "\n";
            if (!output.empty()) {
                write_file(output, text);
            }
            if (format == "json") {
                std::cout << text;
            } else {
                std::cout << "log|t|^2 coefficient: " << result["log_coeff"].get<double>() << "\n"
                          << "constant: " << result["constant"].get<double>() << "\n"
                          << "condition: " << result["condition_estimate"].get<double>()
                          << "  held-out rms: " << result["residual_rms"].get<double>() << "\n";
            }
            return ok;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}
