#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fhdg/harness.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Convergence studies for the fractional-diffusion HDG solver"};

    std::string config_path;
    std::string problem_kind = "manufactured";
    std::string problem_path;
    std::string out_path;
    double alpha = 0.5;
    int degree = 1;
    double tau = 1.0;
    std::vector<int> levels;
    double ratio_c = 0.5;
    double final_time = 1.0;
    std::string format = "csv";
    int norm_points = 4;
    int norm_refine = 4;
    bool full_precision = false;

    app.add_option("--config", config_path, "Key=value config file; flags override it");
    auto* opt_alpha = app.add_option("--alpha", alpha, "Fractional order in (0,1)");
    auto* opt_degree = app.add_option("--degree", degree, "Polynomial degree k >= 0");
    auto* opt_tau = app.add_option("--tau", tau, "Uniform stabilization value");
    auto* opt_levels = app.add_option("--levels", levels, "Mesh sizes, e.g. 4,8,16,32")
                           ->delimiter(',');
    auto* opt_ratio = app.add_option("--ratio-c", ratio_c,
                                     "Constant c in the step rule delta = sqrt(c h^{k+2})");
    auto* opt_final = app.add_option("--final-time", final_time, "End of the time interval");
    auto* opt_format = app.add_option("--format", format, "Output format: csv or md");
    auto* opt_norm = app.add_option("--norm-points", norm_points,
                                    "Gauss points per norm-mesh interval in error norms");
    auto* opt_refine = app.add_option("--norm-refine", norm_refine,
                                      "Norm-mesh subdivisions per finest-level interval");
    auto* opt_full = app.add_flag("--full-precision", full_precision,
                                  "Emit 17 significant digits");
    app.add_option("--problem", problem_kind, "Problem source: manufactured or file")
        ->check(CLI::IsMember({"manufactured", "file"}));
    app.add_option("--problem-file", problem_path, "Power-sine problem description file");
    app.add_option("--out", out_path, "Write the table to this path instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        fhdg::RunConfig config;
        if (!config_path.empty())
            config = fhdg::load_config_file(config_path);
        if (opt_alpha->count() > 0)
            config.alpha = alpha;
        if (opt_degree->count() > 0)
            config.degree = degree;
        if (opt_tau->count() > 0)
            config.tau = tau;
        if (opt_levels->count() > 0)
            config.levels = levels;
        if (opt_ratio->count() > 0)
            config.ratio_c = ratio_c;
        if (opt_final->count() > 0)
            config.final_time = final_time;
        if (opt_format->count() > 0)
            config.format = format;
        if (opt_norm->count() > 0)
            config.norm_points = norm_points;
        if (opt_refine->count() > 0)
            config.norm_refine = norm_refine;
        if (opt_full->count() > 0)
            config.full_precision = full_precision;

        fhdg::ConvergenceTable table;
        if (problem_kind == "file") {
            if (problem_path.empty())
                throw std::invalid_argument("--problem file requires --problem-file");
            const fhdg::ManufacturedProblem problem = fhdg::load_problem_file(problem_path);
            if (opt_alpha->count() > 0 && config.alpha != problem.data.alpha)
                throw std::invalid_argument("--alpha conflicts with the problem file");
            config.alpha = problem.data.alpha;
            if (opt_final->count() == 0)
                config.final_time = problem.final_time;
            table = fhdg::convergence_study(config, problem);
        } else {
            table = fhdg::convergence_study(config);
        }

        const std::string text = fhdg::emit_table(table, config.format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out)
                throw std::runtime_error("cannot write to " + out_path);
            out << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
