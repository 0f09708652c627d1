#pragma once

#include <string>
#include <vector>

#include "fhdg/hdg.hpp"
#include "fhdg/postprocess.hpp"
#include "fhdg/problem.hpp"

namespace fhdg {

/// Settings of one convergence study.
struct RunConfig {
    double alpha = 0.5;
    int degree = 1;
    double tau = 1.0;
    std::vector<int> levels = {4, 8, 16, 32};
    double ratio_c = 0.5;
    double final_time = 1.0;
    std::string format = "csv";
    int norm_points = 4;
    /// The norm mesh has norm_refine times the intervals of the finest
    /// level. On the finest level's own mesh the 4-point Gauss nodes are
    /// the roots of the leading Legendre error mode of u* at k = 2, which
    /// would silently cancel it from the norm; subdividing restores an
    /// unbiased measurement at every level.
    int norm_refine = 4;
    bool full_precision = false;
    /// Extra factor on the time step before rounding; 0.5 reruns a study
    /// with halved steps to confirm the spatial error dominates.
    double delta_scale = 1.0;
};

/// Time step for a level with n elements: sqrt(ratio_c * h^{k+2}) scaled by
/// delta_scale, then shrunk so an integer number of steps lands exactly on
/// final_time. Requires 0 < ratio_c < 1.
double time_step_for(const RunConfig& config, int n);

struct ErrorTriple {
    double u = 0.0;
    double q = 0.0;
    double ustar = 0.0;
};

/// L2(0,1) errors of u, q, and u* at the final time, by composite Gauss
/// quadrature with `points` nodes on every interval of `finest`, which must
/// refine the run mesh (std::invalid_argument otherwise).
ErrorTriple error_norms(const Discretization& disc, const HDGState& state,
                        const PostprocessedField& ustar,
                        const SpaceTimeFn& exact_u, const SpaceTimeFn& exact_q,
                        double final_time, const Mesh1D& finest, int points = 4);

struct ConvergenceRow {
    int n = 0;
    double err_u = 0.0;
    double err_q = 0.0;
    double err_ustar = 0.0;
    double rate_u = 0.0;
    double rate_q = 0.0;
    double rate_ustar = 0.0;
    /// False on the first row, where no rate can be formed.
    bool has_rates = false;
    /// True when the errors sit at the quadrature floor, making rates noise.
    bool at_floor = false;
};

struct ConvergenceTable {
    RunConfig config;
    std::vector<ConvergenceRow> rows;
};

/// Run the study on the default benchmark problem for config.alpha, or on
/// an explicitly supplied problem. Every level must divide the finest one
/// so the norm meshes nest.
ConvergenceTable convergence_study(const RunConfig& config);
ConvergenceTable convergence_study(const RunConfig& config,
                                   const ManufacturedProblem& problem);

/// Render a table as "csv" (comment header with the run settings, then
/// N,err_u,rate_u,err_q,rate_q,err_ustar,rate_ustar) or "md". Errors carry
/// 4 significant digits and rates 3 decimals, or 17 significant digits in
/// full-precision mode. Rates are left empty where undefined or flagged.
std::string emit_table(const ConvergenceTable& table, const std::string& format);

/// Read a RunConfig from a plain key=value file ('#' starts a comment).
/// Keys: alpha, degree, tau, levels (comma-separated), ratio_c, final_time,
/// format, norm_points, norm_refine, full_precision, delta_scale.
RunConfig load_config_file(const std::string& path);

/// Read a power-sine problem from a key=value file. Keys: alpha (required),
/// exponent (default 3 - alpha), frequency, amplitude, final_time.
ManufacturedProblem load_problem_file(const std::string& path);

} // namespace fhdg
