#include "fhdg/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhdg/special_functions.hpp"

namespace fhdg {

ManufacturedProblem power_sine_problem(double alpha, double p, int m,
                                       double amplitude, double final_time)
{
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("power_sine_problem: requires 0 < alpha < 1");
    if (!(p + alpha > 1.0))
        throw std::invalid_argument("power_sine_problem: requires p + alpha > 1");
    if (m < 1)
        throw std::invalid_argument("power_sine_problem: frequency must be >= 1");
    if (!(final_time > 0.0))
        throw std::invalid_argument("power_sine_problem: final time must be > 0");

    const double w = m * std::numbers::pi;
    const double caputo = gamma_fn(p + 1.0) / gamma_fn(p + alpha);

    ManufacturedProblem mp;
    mp.final_time = final_time;
    mp.data.alpha = alpha;
    mp.data.u0 = [](double) { return 0.0; };
    mp.data.g_left = 0.0;
    mp.data.g_right = 0.0;
    mp.data.f = [=](double x, double t) {
        if (t <= 0.0)
            return 0.0;
        return amplitude * (caputo * std::pow(t, p + alpha - 1.0) + w * w * std::pow(t, p))
            * std::sin(w * x);
    };
    mp.exact_u = [=](double x, double t) {
        return t <= 0.0 ? 0.0 : amplitude * std::pow(t, p) * std::sin(w * x);
    };
    mp.exact_q = [=](double x, double t) {
        return t <= 0.0 ? 0.0 : -amplitude * w * std::pow(t, p) * std::cos(w * x);
    };
    return mp;
}

ManufacturedProblem manufactured_source(double alpha)
{
    return power_sine_problem(alpha, 3.0 - alpha, 1, 1.0, 1.0);
}

} // namespace fhdg
