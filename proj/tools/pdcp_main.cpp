#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pdcp/harness.hpp"

namespace fs = std::filesystem;

namespace {

int check_method(const std::string& name) {
    try {
        pdcp::MethodConfig::from_name(name);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    return os;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"American option pricing by splitting and penalty methods"};
    app.require_subcommand(1);

    std::string spec_path, out_path, method, steps, csv_path;
    int m_target = 100;
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_method) {
        cmd->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
        if (needs_method)
            cmd->add_option("--method", method, "method name, e.g. CN-P")->required();
        cmd->add_option("--steps", steps, "override step mode")
            ->check(CLI::IsMember({"constant", "quadratic"}));
    };

    auto* price = app.add_subcommand("price", "run one pricing and print the surface");
    add_common(price, true);
    price->add_option("--m", m_target, "target mesh resolution");
    price->add_option("--out", out_path, "output CSV (default stdout)");

    auto* converge = app.add_subcommand("converge", "temporal-convergence experiment");
    add_common(converge, false);
    converge->add_option("--out", out_path, "output directory")->required();
    converge->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
    std::vector<std::string> method_filter;
    converge->add_option("--method", method_filter, "restrict to these methods");

    auto* mult = app.add_subcommand("multipliers", "export the multiplier history");
    add_common(mult, true);
    mult->add_option("--m", m_target, "target mesh resolution");
    mult->add_option("--out", out_path, "output directory")->required();

    auto* region = app.add_subcommand("region", "export the early exercise region");
    add_common(region, true);
    region->add_option("--m", m_target, "target mesh resolution");
    region->add_option("--out", out_path, "output directory")->required();

    auto* plot = app.add_subcommand("plot", "re-render the error chart from a CSV");
    plot->add_option("--csv", csv_path, "errors.csv from a converge run")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plot->parsed()) {
            std::ifstream is(csv_path);
            if (!is) throw std::runtime_error("cannot open '" + csv_path + "'");
            pdcp::ErrorReport report =
                pdcp::read_errors_csv(is, fs::path(csv_path).stem().string());
            auto os = open_out(out_path);
            os << pdcp::render_plot(report);
            return 0;
        }

        pdcp::ExperimentSpec spec = pdcp::ExperimentSpec::from_json_file(spec_path);
        if (!steps.empty()) spec.steps = pdcp::step_mode_from_name(steps);

        if (converge->parsed()) {
            for (const auto& name : method_filter)
                if (int rc = check_method(name)) return rc;
            if (!method_filter.empty()) spec.methods = method_filter;
            pdcp::RunOptions options;
            options.out_dir = out_path;
            options.jobs = jobs;
            pdcp::ErrorReport report = pdcp::run_experiment(spec, options);
            pdcp::write_orders_csv(report, std::cout);
            return 0;
        }

        if (int rc = check_method(method)) return rc;
        const int nu = pdcp::nu_for_target_m(spec.grid, m_target);

        if (price->parsed()) {
            if (out_path.empty()) {
                pdcp::export_price_surface(spec, method, nu, std::cout);
            } else {
                auto os = open_out(out_path);
                pdcp::export_price_surface(spec, method, nu, os);
            }
            return 0;
        }
        if (mult->parsed()) {
            fs::create_directories(out_path);
            auto os = open_out((fs::path(out_path) / "multipliers.csv").string());
            const double max_lambda =
                pdcp::export_multipliers(spec, method, nu, os);
            std::printf("max lambda over the run: %.10g\n", max_lambda);
            return 0;
        }
        if (region->parsed()) {
            fs::create_directories(out_path);
            auto os = open_out((fs::path(out_path) / "region.csv").string());
            pdcp::export_exercise_region(spec, method, nu, os);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
