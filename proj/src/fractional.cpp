#include "fhdg/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fhdg/quadrature.hpp"
#include "fhdg/special_functions.hpp"

namespace fhdg {

namespace {

// w_a(x) extended by its limit 0 at x = 0 (valid for a > 1, the only way
// it is used here).
double omega_or_zero(double a, double x)
{
    return x <= 0.0 ? 0.0 : std::pow(x, a - 1.0) / gamma_fn(a);
}

// (m+1)^p - 2 m^p + (m-1)^p for integer m >= 0, with d2(0) := 1.
double second_difference_pow(long m, double p)
{
    if (m == 0)
        return 1.0;
    if (m <= 1000) {
        const double md = static_cast<double>(m);
        return std::pow(md + 1.0, p) - 2.0 * std::pow(md, p) + std::pow(md - 1.0, p);
    }
    // Even binomial series of (1+x)^p + (1-x)^p - 2 at x = 1/m; four terms
    // leave a relative remainder of order m^{-10}.
    const double x2 = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
    const double c2 = p * (p - 1.0) / 2.0;
    const double c4 = c2 * (p - 2.0) * (p - 3.0) / 12.0;
    const double c6 = c4 * (p - 4.0) * (p - 5.0) / 30.0;
    const double c8 = c6 * (p - 6.0) * (p - 7.0) / 56.0;
    const double series = x2 * (c2 + x2 * (c4 + x2 * (c6 + x2 * c8)));
    return 2.0 * std::pow(static_cast<double>(m), p) * series;
}

double interpolate(const TimeSamples& v, double t)
{
    const auto& ts = v.times;
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = (it == ts.begin()) ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
    if (i + 1 >= ts.size())
        i = ts.size() - 2;
    const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return v.values[i] + w * (v.values[i + 1] - v.values[i]);
}

void validate_samples(const TimeSamples& v)
{
    if (v.times.empty() || v.values.empty())
        throw std::invalid_argument("TimeSamples: empty sample set");
    if (v.times.size() != v.values.size())
        throw std::invalid_argument("TimeSamples: times/values size mismatch");
    if (v.times.front() != 0.0)
        throw std::invalid_argument("TimeSamples: samples must start at t = 0");
    for (std::size_t i = 0; i + 1 < v.times.size(); ++i)
        if (!(v.times[i] < v.times[i + 1]))
            throw std::invalid_argument("TimeSamples: times must be strictly increasing");
}

} // namespace

FracOrder::FracOrder(double a)
    : value(a)
{
    if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("FracOrder: requires 0 < alpha < 1");
}

KernelWeights::KernelWeights(FracOrder alpha, double delta, int step)
    : alpha_(alpha.value)
    , delta_(delta)
    , step_(step)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("KernelWeights: requires delta > 0");
    if (step < 1)
        throw std::invalid_argument("KernelWeights: requires step >= 1");

    const double p = alpha_ + 1.0;
    const double scale = std::pow(delta, p) / gamma_fn(p + 1.0);
    weights_.resize(step);
    for (int i = 1; i <= step; ++i)
        weights_[i - 1] = scale * second_difference_pow(step - i, p);
}

KernelWeights cn_weights(double alpha, double delta, int step)
{
    return KernelWeights(FracOrder(alpha), delta, step);
}

Eigen::MatrixXd memory_term(const std::vector<Eigen::MatrixXd>& history,
                            const KernelWeights& weights)
{
    const int j = weights.step();
    if (static_cast<int>(history.size()) != j)
        throw std::invalid_argument("memory_term: history must hold levels 0..j-1");

    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(history[0].rows(), history[0].cols());
    for (int i = 1; i <= j - 1; ++i) {
        if (history[i].rows() != acc.rows() || history[i].cols() != acc.cols())
            throw std::invalid_argument("memory_term: inconsistent history shapes");
        acc += (weights.weight(i) / weights.delta()) * (history[i] - history[i - 1]);
    }
    return acc;
}

double riemann_liouville_integral(double alpha, const TimeSamples& v, double t)
{
    validate_samples(v);
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("riemann_liouville_integral: requires 0 < alpha <= 1");
    if (t < 0.0 || t > v.times.back() * (1.0 + 1e-12))
        throw std::invalid_argument("riemann_liouville_integral: t outside the sampled range");
    if (t <= 0.0)
        return 0.0;

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.times.size(); ++i) {
        const double s0 = v.times[i];
        if (s0 >= t)
            break;
        const double s1 = std::min(v.times[i + 1], t);
        const double v0 = v.values[i];
        const double slope = (v.values[i + 1] - v.values[i]) / (v.times[i + 1] - v.times[i]);
        // Exact moments of the kernel over [s0, s1]:
        //   int w_a(t-s) ds           = w_{a+1}(t-s0) - w_{a+1}(t-s1)
        //   int (t-s) w_a(t-s) ds     = a * (w_{a+2}(t-s0) - w_{a+2}(t-s1))
        const double m0 = omega_or_zero(alpha + 1.0, t - s0) - omega_or_zero(alpha + 1.0, t - s1);
        const double m1 = alpha * (omega_or_zero(alpha + 2.0, t - s0) - omega_or_zero(alpha + 2.0, t - s1));
        acc += v0 * m0 + slope * ((t - s0) * m0 - m1);
    }
    return acc;
}

std::pair<double, double> coercivity_check(double alpha, const TimeSamples& v)
{
    validate_samples(v);
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("coercivity_check: requires 0 < alpha < 1");

    // I^a v has algebraic kinks at the sample points, so integrate each
    // sample interval with panels graded toward its left endpoint.
    const QuadratureRule rule = gauss_rule(8);
    const int panels = 12;

    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < v.times.size(); ++i) {
        const double a = v.times[i];
        const double len = v.times[i + 1] - a;
        double lo = a;
        for (int g = panels; g >= 1; --g) {
            const double hi = a + len * std::pow(0.5, g - 1);
            lhs += rule.integrate(
                [&](double t) { return riemann_liouville_integral(alpha, v, t) * interpolate(v, t); },
                lo, hi);
            rhs += rule.integrate(
                [&](double t) {
                    const double half = riemann_liouville_integral(alpha / 2.0, v, t);
                    return half * half;
                },
                lo, hi);
            lo = hi;
        }
    }
    return {lhs, rhs};
}

} // namespace fhdg
