#include "fhdg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fhdg/basis.hpp"
#include "fhdg/quadrature.hpp"

namespace fhdg {

namespace {

constexpr double kErrorFloor = 1e-12;

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ": expected key=value, got '" + line + "'");
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("bad numeric value for " + key + ": '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value)
{
    const double v = parse_double(key, value);
    const int i = static_cast<int>(std::lround(v));
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("expected an integer for " + key + ": '" + value + "'");
    return i;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "1" || value == "true" || value == "yes" || value == "on")
        return true;
    if (value == "0" || value == "false" || value == "no" || value == "off")
        return false;
    throw std::invalid_argument("expected a boolean for " + key + ": '" + value + "'");
}

std::vector<int> parse_levels(const std::string& value)
{
    std::vector<int> levels;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        levels.push_back(parse_int("levels", trim(item)));
    if (levels.empty())
        throw std::invalid_argument("levels: empty list");
    return levels;
}

std::string format_number(double v, const char* spec)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string format_error(double v, bool full)
{
    return format_number(v, full ? "%.17g" : "%.3e");
}

std::string format_rate(double v, bool full)
{
    return format_number(v, full ? "%.17g" : "%.3f");
}

bool rate_is_shown(const ConvergenceTable& table, std::size_t i)
{
    return table.rows[i].has_rates && !table.rows[i].at_floor
        && !table.rows[i - 1].at_floor;
}

std::string settings_line(const RunConfig& c)
{
    std::ostringstream os;
    os << "alpha=" << c.alpha << " degree=" << c.degree << " tau=" << c.tau
       << " ratio_c=" << c.ratio_c << " final_time=" << c.final_time
       << " norm_points=" << c.norm_points << " norm_refine=" << c.norm_refine;
    if (c.delta_scale != 1.0)
        os << " delta_scale=" << c.delta_scale;
    return os.str();
}

} // namespace

double time_step_for(const RunConfig& config, int n)
{
    if (n < 1)
        throw std::invalid_argument("time_step_for: level must be >= 1");
    if (!(config.ratio_c > 0.0) || !(config.ratio_c < 1.0))
        throw std::invalid_argument("time_step_for: ratio_c must lie in (0, 1)");
    if (!(config.delta_scale > 0.0))
        throw std::invalid_argument("time_step_for: delta_scale must be > 0");
    if (!(config.final_time > 0.0))
        throw std::invalid_argument("time_step_for: final_time must be > 0");

    const double h = 1.0 / n;
    const double raw = config.delta_scale
        * std::sqrt(config.ratio_c * std::pow(h, config.degree + 2));
    const double steps = std::ceil(config.final_time / raw);
    return config.final_time / steps;
}

ErrorTriple error_norms(const Discretization& disc, const HDGState& state,
                        const PostprocessedField& ustar,
                        const SpaceTimeFn& exact_u, const SpaceTimeFn& exact_q,
                        double final_time, const Mesh1D& finest, int points)
{
    const int n = disc.degree + 1;
    if (state.u.rows() != n || state.u.cols() != disc.mesh.num_elements())
        throw std::invalid_argument("error_norms: state does not match the discretization");
    if (ustar.rows() != n + 1 || ustar.cols() != disc.mesh.num_elements())
        throw std::invalid_argument("error_norms: postprocessed field shape mismatch");

    const double span = disc.mesh.b() - disc.mesh.a();
    const double tol = 1e-12 * span;
    const auto& fine_nodes = finest.nodes();
    for (double x : disc.mesh.nodes()) {
        const auto it = std::lower_bound(fine_nodes.begin(), fine_nodes.end(), x - tol);
        if (it == fine_nodes.end() || std::abs(*it - x) > tol)
            throw std::invalid_argument("error_norms: meshes are not nested");
    }

    const QuadratureRule rule = gauss_rule(points);
    const ElementBasis basis(disc.degree);
    const ElementBasis star_basis(disc.degree + 1);

    ErrorTriple acc;
    for (int fe = 0; fe < finest.num_elements(); ++fe) {
        const Element cell = finest.element(fe);
        const int e = disc.mesh.locate(cell.midpoint());
        const Element elem = disc.mesh.element(e);
        for (int qn = 0; qn < rule.size(); ++qn) {
            const double x = cell.midpoint() + 0.5 * cell.length() * rule.nodes[qn];
            const double w = 0.5 * cell.length() * rule.weights[qn];
            const double xi = (2.0 * x - elem.left - elem.right) / elem.length();
            const Eigen::VectorXd vals = basis.values(xi);
            const double du = exact_u(x, final_time) - vals.dot(state.u.col(e));
            const double dq = exact_q(x, final_time) - vals.dot(state.q.col(e));
            const double ds = exact_u(x, final_time)
                - star_basis.values(xi).dot(ustar.col(e));
            acc.u += w * du * du;
            acc.q += w * dq * dq;
            acc.ustar += w * ds * ds;
        }
    }
    acc.u = std::sqrt(acc.u);
    acc.q = std::sqrt(acc.q);
    acc.ustar = std::sqrt(acc.ustar);
    return acc;
}

ConvergenceTable convergence_study(const RunConfig& config)
{
    return convergence_study(config, manufactured_source(config.alpha));
}

ConvergenceTable convergence_study(const RunConfig& config,
                                   const ManufacturedProblem& problem)
{
    if (config.levels.size() < 2)
        throw std::invalid_argument("convergence_study: needs at least two refinement levels");
    for (std::size_t i = 0; i + 1 < config.levels.size(); ++i)
        if (config.levels[i] >= config.levels[i + 1])
            throw std::invalid_argument("convergence_study: levels must be strictly increasing");
    const int finest_n = config.levels.back();
    for (int n : config.levels)
        if (n < 1 || finest_n % n != 0)
            throw std::invalid_argument("convergence_study: every level must divide the "
                                        "finest one so the norm meshes nest");
    if (config.norm_refine < 1)
        throw std::invalid_argument("convergence_study: norm_refine must be at least 1");

    const Mesh1D finest = build_uniform_mesh(0.0, 1.0, finest_n * config.norm_refine);

    ConvergenceTable table;
    table.config = config;
    for (int n : config.levels) {
        const Discretization disc(build_uniform_mesh(0.0, 1.0, n), config.degree,
                                  Stabilization(n, config.tau));
        const double delta = time_step_for(config, n);
        const TransientResult result = run_transient(disc, problem.data, delta,
                                                     config.final_time);
        const PostprocessedField star = postprocess_field(result.state.u, result.state.q,
                                                          disc.mesh, config.degree);
        const ErrorTriple err = error_norms(disc, result.state, star, problem.exact_u,
                                            problem.exact_q, config.final_time, finest,
                                            config.norm_points);

        ConvergenceRow row;
        row.n = n;
        row.err_u = err.u;
        row.err_q = err.q;
        row.err_ustar = err.ustar;
        row.at_floor = err.u < kErrorFloor || err.q < kErrorFloor || err.ustar < kErrorFloor;
        if (!table.rows.empty()) {
            const ConvergenceRow& prev = table.rows.back();
            const double scale = std::log(static_cast<double>(n) / prev.n);
            row.has_rates = true;
            if (!row.at_floor && !prev.at_floor) {
                row.rate_u = std::log(prev.err_u / err.u) / scale;
                row.rate_q = std::log(prev.err_q / err.q) / scale;
                row.rate_ustar = std::log(prev.err_ustar / err.ustar) / scale;
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string emit_table(const ConvergenceTable& table, const std::string& format)
{
    if (table.rows.empty())
        throw std::invalid_argument("emit_table: empty table");
    const bool full = table.config.full_precision;

    std::ostringstream out;
    if (format == "csv") {
        out << "# " << settings_line(table.config) << "\n";
        for (const ConvergenceRow& row : table.rows)
            if (row.at_floor) {
                out << "# note: errors at the quadrature floor on some rows; "
                       "their rates are omitted\n";
                break;
            }
        out << "N,err_u,rate_u,err_q,rate_q,err_ustar,rate_ustar\n";
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const ConvergenceRow& row = table.rows[i];
            const bool shown = rate_is_shown(table, i);
            out << row.n
                << ',' << format_error(row.err_u, full)
                << ',' << (shown ? format_rate(row.rate_u, full) : "")
                << ',' << format_error(row.err_q, full)
                << ',' << (shown ? format_rate(row.rate_q, full) : "")
                << ',' << format_error(row.err_ustar, full)
                << ',' << (shown ? format_rate(row.rate_ustar, full) : "")
                << '\n';
        }
        return out.str();
    }
    if (format == "md") {
        out << settings_line(table.config) << "\n\n";
        out << "| N | err_u | rate | err_q | rate | err_ustar | rate |\n";
        out << "|---|-------|------|-------|------|-----------|------|\n";
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const ConvergenceRow& row = table.rows[i];
            const bool shown = rate_is_shown(table, i);
            out << "| " << row.n
                << " | " << format_error(row.err_u, full)
                << " | " << (shown ? format_rate(row.rate_u, full) : "-")
                << " | " << format_error(row.err_q, full)
                << " | " << (shown ? format_rate(row.rate_q, full) : "-")
                << " | " << format_error(row.err_ustar, full)
                << " | " << (shown ? format_rate(row.rate_ustar, full) : "-")
                << " |\n";
        }
        return out.str();
    }
    throw std::invalid_argument("emit_table: unknown format '" + format + "'");
}

RunConfig load_config_file(const std::string& path)
{
    RunConfig config;
    for (const auto& [key, value] : read_key_values(path)) {
        if (key == "alpha")
            config.alpha = parse_double(key, value);
        else if (key == "degree")
            config.degree = parse_int(key, value);
        else if (key == "tau")
            config.tau = parse_double(key, value);
        else if (key == "levels")
            config.levels = parse_levels(value);
        else if (key == "ratio_c")
            config.ratio_c = parse_double(key, value);
        else if (key == "final_time")
            config.final_time = parse_double(key, value);
        else if (key == "format")
            config.format = value;
        else if (key == "norm_points")
            config.norm_points = parse_int(key, value);
        else if (key == "norm_refine")
            config.norm_refine = parse_int(key, value);
        else if (key == "full_precision")
            config.full_precision = parse_bool(key, value);
        else if (key == "delta_scale")
            config.delta_scale = parse_double(key, value);
        else
            throw std::invalid_argument(path + ": unknown config key '" + key + "'");
    }
    return config;
}

ManufacturedProblem load_problem_file(const std::string& path)
{
    bool have_alpha = false;
    double alpha = 0.5;
    double exponent = 0.0;
    bool have_exponent = false;
    int frequency = 1;
    double amplitude = 1.0;
    double final_time = 1.0;
    for (const auto& [key, value] : read_key_values(path)) {
        if (key == "alpha") {
            alpha = parse_double(key, value);
            have_alpha = true;
        } else if (key == "exponent") {
            exponent = parse_double(key, value);
            have_exponent = true;
        } else if (key == "frequency")
            frequency = parse_int(key, value);
        else if (key == "amplitude")
            amplitude = parse_double(key, value);
        else if (key == "final_time")
            final_time = parse_double(key, value);
        else
            throw std::invalid_argument(path + ": unknown problem key '" + key + "'");
    }
    if (!have_alpha)
        throw std::invalid_argument(path + ": problem file must set alpha");
    if (!have_exponent)
        exponent = 3.0 - alpha;
    return power_sine_problem(alpha, exponent, frequency, amplitude, final_time);
}

} // namespace fhdg
