#include "fhdg/hdg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fhdg/basis.hpp"
#include "fhdg/quadrature.hpp"

namespace fhdg {

namespace {

void validate_face_values(const std::vector<double>& vals, const char* where)
{
    for (double t : vals)
        if (t < 0.0)
            throw std::invalid_argument(std::string(where) + ": stabilization must be >= 0");
}

} // namespace

Stabilization::Stabilization(int num_elements, double uniform)
{
    if (num_elements < 1)
        throw std::invalid_argument("Stabilization: needs at least one element");
    if (uniform <= 0.0)
        throw std::invalid_argument("Stabilization: uniform value must be > 0");
    left_.assign(num_elements, uniform);
    right_.assign(num_elements, uniform);
}

Stabilization::Stabilization(std::vector<double> left, std::vector<double> right)
    : left_(std::move(left))
    , right_(std::move(right))
{
    if (left_.empty() || left_.size() != right_.size())
        throw std::invalid_argument("Stabilization: face value lists must be nonempty and equal-sized");
    validate_face_values(left_, "Stabilization");
    validate_face_values(right_, "Stabilization");
    for (std::size_t e = 0; e < left_.size(); ++e)
        if (left_[e] <= 0.0 && right_[e] <= 0.0)
            throw std::invalid_argument("Stabilization: element " + std::to_string(e)
                                        + " has no positive face value");
}

Discretization::Discretization(Mesh1D m, int k, Stabilization t)
    : mesh(std::move(m))
    , degree(k)
    , tau(std::move(t))
{
    if (degree < 0)
        throw std::invalid_argument("Discretization: degree must be >= 0");
    if (tau.num_elements() != mesh.num_elements())
        throw std::invalid_argument("Discretization: stabilization does not match the mesh");
}

Discretization::Discretization(Mesh1D m, int k, double uniform_tau)
    : Discretization(Mesh1D(m), k, Stabilization(m.num_elements(), uniform_tau))
{
}

LocalMatrices assemble_local(const Element& element, int degree,
                             double tau_left, double tau_right, double kappa)
{
    if (tau_left < 0.0 || tau_right < 0.0)
        throw std::invalid_argument("assemble_local: stabilization must be >= 0");
    if (kappa < 0.0)
        throw std::invalid_argument("assemble_local: reaction coefficient must be >= 0");
    if (element.length() <= 0.0)
        throw std::invalid_argument("assemble_local: degenerate element");

    const int n = degree + 1;
    const ElementBasis basis(degree);
    const Eigen::VectorXd mass = mass_diagonal(degree, element.length());
    const Eigen::MatrixXd grad = gradient_matrix(degree);
    const Eigen::VectorXd el = basis.trace_left();
    const Eigen::VectorXd er = basis.trace_right();

    LocalMatrices lm;
    lm.degree = degree;
    lm.tau_left = tau_left;
    lm.tau_right = tau_right;

    lm.system = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    lm.system.topLeftCorner(n, n) = mass.asDiagonal();
    lm.system.topRightCorner(n, n) = -grad;
    lm.system.bottomLeftCorner(n, n) = 0.5 * grad.transpose();
    lm.system.bottomRightCorner(n, n) = kappa * Eigen::MatrixXd(mass.asDiagonal())
        + 0.5 * tau_right * er * er.transpose()
        + 0.5 * tau_left * el * el.transpose();

    lm.trace_coupling = Eigen::MatrixXd::Zero(2 * n, 2);
    lm.trace_coupling.col(0).head(n) = el;
    lm.trace_coupling.col(0).tail(n) = 0.5 * tau_left * el;
    lm.trace_coupling.col(1).head(n) = -er;
    lm.trace_coupling.col(1).tail(n) = 0.5 * tau_right * er;

    lm.flux_rows = Eigen::MatrixXd::Zero(2, 2 * n);
    lm.flux_rows.row(0).head(n) = -el.transpose();
    lm.flux_rows.row(0).tail(n) = tau_left * el.transpose();
    lm.flux_rows.row(1).head(n) = er.transpose();
    lm.flux_rows.row(1).tail(n) = tau_right * er.transpose();

    lm.solver.compute(lm.system);
    if (lm.solver.isInvertible()) {
        lm.recovery = lm.solver.solve(lm.trace_coupling);
        lm.trace_block = lm.flux_rows * lm.recovery;
        lm.trace_block(0, 0) -= tau_left;
        lm.trace_block(1, 1) -= tau_right;
    } else {
        lm.recovery = Eigen::MatrixXd::Zero(2 * n, 2);
        lm.trace_block = Eigen::Matrix2d::Zero();
    }
    return lm;
}

TridiagonalCholesky::TridiagonalCholesky(const Eigen::VectorXd& diag,
                                         const Eigen::VectorXd& off)
{
    const int n = static_cast<int>(diag.size());
    if (off.size() != std::max(n - 1, 0))
        throw std::invalid_argument("TridiagonalCholesky: off-diagonal size mismatch");
    d_ = diag;
    l_ = Eigen::VectorXd::Zero(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            d_[i] -= l_[i - 1] * l_[i - 1] * d_[i - 1];
        if (d_[i] <= 0.0)
            throw std::runtime_error("TridiagonalCholesky: matrix is not positive definite");
        if (i + 1 < n)
            l_[i] = off[i] / d_[i];
    }
}

Eigen::VectorXd TridiagonalCholesky::solve(const Eigen::VectorXd& rhs) const
{
    const int n = size();
    if (rhs.size() != n)
        throw std::invalid_argument("TridiagonalCholesky: right-hand side size mismatch");
    Eigen::VectorXd x = rhs;
    for (int i = 1; i < n; ++i)
        x[i] -= l_[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i)
        x[i] /= d_[i];
    for (int i = n - 2; i >= 0; --i)
        x[i] -= l_[i] * x[i + 1];
    return x;
}

CondensedStep::CondensedStep(std::vector<LocalMatrices> locals, double kappa)
    : locals_(std::move(locals))
    , kappa_(kappa)
{
    if (locals_.empty())
        throw std::invalid_argument("CondensedStep: no elements");
    const int num = static_cast<int>(locals_.size());
    for (int e = 0; e < num; ++e)
        if (!locals_[e].solver.isInvertible())
            throw std::runtime_error("condense: local system of element "
                                     + std::to_string(e) + " is singular");

    // Transmission at interior face i: the flux leaving element i-1 on its
    // right plus the flux leaving element i on its left vanishes. Writing
    // those fluxes through the 2x2 trace blocks gives a tridiagonal system
    // whose negation is symmetric positive definite.
    const int interior = num - 1;
    Eigen::VectorXd diag(interior);
    Eigen::VectorXd off(std::max(interior - 1, 0));
    for (int i = 0; i < interior; ++i) {
        diag[i] = -(locals_[i].trace_block(1, 1) + locals_[i + 1].trace_block(0, 0));
        if (i + 1 < interior)
            off[i] = -locals_[i + 1].trace_block(0, 1);
    }
    trace_solver_ = TridiagonalCholesky(diag, off);
}

CondensedSolution CondensedStep::apply(const Eigen::MatrixXd& loads,
                                       double g_left, double g_right) const
{
    const int num = num_elements();
    const int n = static_cast<int>(loads.rows());
    if (loads.cols() != num || 2 * n != locals_[0].system.rows())
        throw std::invalid_argument("CondensedStep: load block has the wrong shape");

    // Local solves with zero traces; their fluxes drive the trace system.
    Eigen::MatrixXd bases(2 * n, num);
    Eigen::MatrixXd load_flux(2, num);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(2 * n);
    for (int e = 0; e < num; ++e) {
        full.tail(n) = loads.col(e);
        bases.col(e) = locals_[e].solver.solve(full);
        load_flux.col(e) = locals_[e].flux_rows * bases.col(e);
    }

    CondensedSolution sol;
    sol.trace.resize(num + 1);
    sol.trace[0] = g_left;
    sol.trace[num] = g_right;
    if (num > 1) {
        Eigen::VectorXd b(num - 1);
        for (int i = 0; i + 1 < num; ++i)
            b[i] = load_flux(1, i) + load_flux(0, i + 1);
        b[0] += locals_[0].trace_block(1, 0) * g_left;
        b[num - 2] += locals_[num - 1].trace_block(0, 1) * g_right;
        sol.trace.segment(1, num - 1) = trace_solver_.solve(b);
    }

    sol.q.resize(n, num);
    sol.u.resize(n, num);
    for (int e = 0; e < num; ++e) {
        const Eigen::VectorXd local = bases.col(e)
            + locals_[e].recovery * Eigen::Vector2d(sol.trace[e], sol.trace[e + 1]);
        sol.q.col(e) = local.head(n);
        sol.u.col(e) = local.tail(n);
    }
    return sol;
}

CondensedStep condense(std::vector<LocalMatrices> locals, double kappa)
{
    return CondensedStep(std::move(locals), kappa);
}

CondensedStep condense(const Discretization& disc, double kappa)
{
    std::vector<LocalMatrices> locals;
    locals.reserve(disc.mesh.num_elements());
    for (int e = 0; e < disc.mesh.num_elements(); ++e)
        locals.push_back(assemble_local(disc.mesh.element(e), disc.degree,
                                        disc.tau.left(e), disc.tau.right(e), kappa));
    return CondensedStep(std::move(locals), kappa);
}

ProjectionPair hdg_projection(const SpaceFn& u, const SpaceFn& q,
                              const Element& element, int degree,
                              double tau_left, double tau_right)
{
    if (tau_left < 0.0 || tau_right < 0.0)
        throw std::invalid_argument("hdg_projection: stabilization must be >= 0");
    if (tau_left + tau_right <= 0.0)
        throw std::runtime_error("hdg_projection: stabilization vanishes on both faces, "
                                 "the projection system is singular");

    const int n = degree + 1;
    const QuadratureRule rule = gauss_rule(assembly_points(degree));
    const Eigen::VectorXd mu = basis_moments(u, degree, element.left, element.right, rule);
    const Eigen::VectorXd mq = basis_moments(q, degree, element.left, element.right, rule);
    const Eigen::VectorXd mass = mass_diagonal(degree, element.length());

    // Moments against P_{k-1} fix all but the top coefficient of each
    // component; the two stabilized face conditions close the system.
    ProjectionPair pp;
    pp.u.resize(n);
    pp.q.resize(n);
    for (int m = 0; m < degree; ++m) {
        pp.u[m] = mu[m] / mass[m];
        pp.q[m] = mq[m] / mass[m];
    }

    const double sign = (degree % 2 == 0) ? 1.0 : -1.0; // P_k(-1)
    double rhs_left = -q(element.left) + tau_left * u(element.left);
    double rhs_right = q(element.right) + tau_right * u(element.right);
    for (int m = 0; m < degree; ++m) {
        const double sm = (m % 2 == 0) ? 1.0 : -1.0;
        rhs_left -= sm * (-pp.q[m] + tau_left * pp.u[m]);
        rhs_right -= pp.q[m] + tau_right * pp.u[m];
    }
    Eigen::Matrix2d face;
    face << -sign, tau_left * sign,
        1.0, tau_right;
    const Eigen::Vector2d top = face.inverse() * Eigen::Vector2d(rhs_left, rhs_right);
    pp.q[degree] = top[0];
    pp.u[degree] = top[1];
    return pp;
}

HDGState initialize(const Discretization& disc, const SpaceFn& u0,
                    double g_left, double g_right,
                    const std::optional<SpaceFn>& q0)
{
    const int num = disc.mesh.num_elements();
    const int n = disc.degree + 1;
    const ElementBasis basis(disc.degree);
    const Eigen::VectorXd el = basis.trace_left();
    const Eigen::VectorXd er = basis.trace_right();
    const Eigen::MatrixXd grad = gradient_matrix(disc.degree);

    HDGState state;
    state.time = 0.0;
    state.g_left = g_left;
    state.g_right = g_right;
    state.u.resize(n, num);
    state.q.resize(n, num);
    state.trace.resize(num + 1);

    for (int e = 0; e < num; ++e) {
        const Element elem = disc.mesh.element(e);
        if (q0)
            state.u.col(e) = hdg_projection(u0, *q0, elem, disc.degree,
                                            disc.tau.left(e), disc.tau.right(e))
                                 .u;
        else
            state.u.col(e) = project_l2(u0, disc.degree, elem.left, elem.right);
    }

    state.trace[0] = g_left;
    state.trace[num] = g_right;
    for (int i = 1; i < num; ++i)
        state.trace[i] = 0.5 * (er.dot(state.u.col(i - 1)) + el.dot(state.u.col(i)));

    // q from the first local equation, so it holds exactly at t = 0.
    for (int e = 0; e < num; ++e) {
        const Eigen::VectorXd mass = mass_diagonal(disc.degree, disc.mesh.element(e).length());
        const Eigen::VectorXd rhs = grad * state.u.col(e)
            - state.trace[e + 1] * er + state.trace[e] * el;
        state.q.col(e) = rhs.cwiseQuotient(mass);
    }
    return state;
}

Eigen::MatrixXd build_step_loads(const Discretization& disc,
                                 const KernelWeights& weights,
                                 const std::vector<Eigen::MatrixXd>& u_history,
                                 const HDGState& previous,
                                 const SpaceTimeFn& f)
{
    const int num = disc.mesh.num_elements();
    const int n = disc.degree + 1;
    if (previous.u.rows() != n || previous.u.cols() != num)
        throw std::invalid_argument("build_step_loads: state does not match the discretization");

    const double delta = weights.delta();
    const double kappa = weights.latest() / (delta * delta);
    const double t_prev = previous.time;
    const double t_next = previous.time + delta;

    const ElementBasis basis(disc.degree);
    const Eigen::VectorXd el = basis.trace_left();
    const Eigen::VectorXd er = basis.trace_right();
    const Eigen::MatrixXd grad = gradient_matrix(disc.degree);
    const QuadratureRule rule = gauss_rule(assembly_points(disc.degree));
    const Eigen::MatrixXd history = memory_term(u_history, weights);

    Eigen::MatrixXd loads(n, num);
    for (int e = 0; e < num; ++e) {
        const Element elem = disc.mesh.element(e);
        const Eigen::VectorXd mass = mass_diagonal(disc.degree, elem.length());

        const auto f_mid = [&](double x) { return 0.5 * (f(x, t_prev) + f(x, t_next)); };
        Eigen::VectorXd load = basis_moments(f_mid, disc.degree, elem.left, elem.right, rule);

        load += mass.cwiseProduct(kappa * previous.u.col(e) - history.col(e) / delta);
        load += 0.5 * grad * previous.q.col(e);

        const double flux_right = er.dot(previous.q.col(e))
            + disc.tau.right(e) * (er.dot(previous.u.col(e)) - previous.trace[e + 1]);
        const double flux_left = -el.dot(previous.q.col(e))
            + disc.tau.left(e) * (el.dot(previous.u.col(e)) - previous.trace[e]);
        load -= 0.5 * (flux_right * er + flux_left * el);

        loads.col(e) = load;
    }
    return loads;
}

HDGState solve_step(const Discretization& disc, const CondensedStep& step,
                    const KernelWeights& weights,
                    const std::vector<Eigen::MatrixXd>& u_history,
                    const HDGState& previous, const SpaceTimeFn& f)
{
    const double kappa = weights.latest() / (weights.delta() * weights.delta());
    if (std::abs(step.kappa() - kappa) > 1e-12 * std::max(kappa, 1.0))
        throw std::invalid_argument("solve_step: step was condensed for a different "
                                    "reaction coefficient than these weights imply");

    const Eigen::MatrixXd loads = build_step_loads(disc, weights, u_history, previous, f);
    const CondensedSolution sol = step.apply(loads, previous.g_left, previous.g_right);

    HDGState next;
    next.time = previous.time + weights.delta();
    next.u = sol.u;
    next.q = sol.q;
    next.trace = sol.trace;
    next.g_left = previous.g_left;
    next.g_right = previous.g_right;
    return next;
}

double local_equation_residual(const Discretization& disc, const HDGState& state)
{
    const ElementBasis basis(disc.degree);
    const Eigen::VectorXd el = basis.trace_left();
    const Eigen::VectorXd er = basis.trace_right();
    const Eigen::MatrixXd grad = gradient_matrix(disc.degree);

    double worst = 0.0;
    for (int e = 0; e < disc.mesh.num_elements(); ++e) {
        const Eigen::VectorXd mass = mass_diagonal(disc.degree, disc.mesh.element(e).length());
        const Eigen::VectorXd res = mass.cwiseProduct(state.q.col(e)) - grad * state.u.col(e)
            + state.trace[e + 1] * er - state.trace[e] * el;
        worst = std::max(worst, res.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

TransientResult run_transient(const Discretization& disc,
                              const TransientProblem& problem,
                              double delta, double final_time)
{
    if (!(delta > 0.0) || !(final_time > 0.0))
        throw std::invalid_argument("run_transient: delta and final_time must be > 0");
    const long steps = std::lround(final_time / delta);
    if (steps < 1 || std::abs(static_cast<double>(steps) * delta - final_time)
            > 1e-9 * std::max(final_time, 1.0))
        throw std::invalid_argument("run_transient: delta must divide final_time");
    const double dt = final_time / static_cast<double>(steps);

    TransientResult result;
    result.delta = dt;
    result.steps = static_cast<int>(steps);
    result.state = initialize(disc, problem.u0, problem.g_left, problem.g_right, problem.q0);
    result.u_history.reserve(steps + 1);
    result.u_history.push_back(result.state.u);

    const double kappa = cn_weights(problem.alpha, dt, 1).latest() / (dt * dt);
    const CondensedStep step = condense(disc, kappa);
    for (long j = 1; j <= steps; ++j) {
        const KernelWeights weights = cn_weights(problem.alpha, dt, static_cast<int>(j));
        result.state = solve_step(disc, step, weights, result.u_history, result.state, problem.f);
        result.u_history.push_back(result.state.u);
    }
    return result;
}

} // namespace fhdg
