#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace debx {

/// Tolerances and refinement limits shared by all quadrature routines.
/// Refinement stops once two successive panel subdivisions agree to within
/// max(abs_tol, rel_tol * |I|); exceeding max_panel_doublings raises
/// ConvergenceError rather than silently returning a truncated result.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_panel_doublings = 20;
    int nodes_per_panel = 16;

    void validate() const;
};

class NumericsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when panel refinement exhausts its budget before the requested
/// tolerance is met. Carries the best estimate so callers can decide whether
/// a degraded value is still usable.
class ConvergenceError : public NumericsError {
  public:
    ConvergenceError(const std::string& msg, double best, double bound)
        : NumericsError(msg), best_estimate(best), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

class DivergenceError : public NumericsError {
  public:
    using NumericsError::NumericsError;
};

class BracketingError : public NumericsError {
  public:
    using NumericsError::NumericsError;
};

class TabulationError : public NumericsError {
  public:
    using NumericsError::NumericsError;
};

/// Evaluation outside a function's supported domain (e.g. past the grid of a
/// tabulated function with no tail model attached).
class DomainError : public NumericsError {
  public:
    using NumericsError::NumericsError;
};

class ConsistencyError : public NumericsError {
  public:
    using NumericsError::NumericsError;
};

/// Gauss-Legendre rule on [-1, 1]. Nodes are computed by Newton iteration on
/// the Legendre polynomial, which is deterministic and accurate to roundoff.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

template <class T>
struct IntegralResult {
    T value{};
    double error_bound = 0.0;
    int levels = 0;
};

enum class Direction { plus, minus };

namespace detail {

template <class T>
inline double scalar_norm(const T& v) {
    return std::abs(v);
}

template <class F, class T = std::invoke_result_t<F&, double>>
T panel_sum(F& f, double lo, double hi, int n_panels, const GaussLegendreRule& rule) {
    const double width = (hi - lo) / n_panels;
    T total{};
    for (int p = 0; p < n_panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        const double half = 0.5 * width;
        T acc{};
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
        total += half * acc;
    }
    return total;
}

}  // namespace detail

/// Composite Gauss-Legendre quadrature over [lo, hi] with uniform panels,
/// refined by doubling the panel count until two successive levels agree.
/// Node layout is a pure function of the inputs, so repeated calls are
/// bitwise reproducible.
template <class F, class T = std::invoke_result_t<F&, double>>
IntegralResult<T> integrate_finite_ex(F&& f, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi))
        throw std::invalid_argument("integrate_finite: requires lo < hi");
    const GaussLegendreRule rule = gauss_legendre(spec.nodes_per_panel);

    T prev = detail::panel_sum(f, lo, hi, 1, rule);
    for (int level = 1; level <= spec.max_panel_doublings; ++level) {
        const int n_panels = 1 << level;
        T cur = detail::panel_sum(f, lo, hi, n_panels, rule);
        const double diff = detail::scalar_norm<T>(cur - prev);
        const double tol =
            std::max(spec.abs_tol, spec.rel_tol * detail::scalar_norm<T>(cur));
        if (diff <= tol) {
            const double floor = 1e-15 * (detail::scalar_norm<T>(cur) + 1.0);
            return {cur, std::max(diff, floor), level};
        }
        prev = cur;
    }
    throw ConvergenceError("integrate_finite: panel refinement did not converge",
                           detail::scalar_norm<T>(prev),
                           std::numeric_limits<double>::infinity());
}

template <class F>
auto integrate_finite(F&& f, double lo, double hi, const QuadratureSpec& spec) {
    return integrate_finite_ex(std::forward<F>(f), lo, hi, spec).value;
}

/// Integral over [origin, +inf) or (-inf, origin]. Panels are laid out
/// geometrically away from the origin with widths keyed to decay_rate_hint,
/// capped so a single panel never spans more than ~24 e-folding lengths.
/// Termination extrapolates the remaining tail from the measured decay of
/// panel contributions, so slower-than-hinted (e.g. power-law) decay is still
/// handled correctly, just with more panels.
template <class F, class T = std::invoke_result_t<F&, double>>
IntegralResult<T> integrate_semi_infinite_ex(F&& f, double origin, Direction dir,
                                             double decay_rate_hint,
                                             const QuadratureSpec& spec) {
    spec.validate();
    if (!(decay_rate_hint > 0.0) || !std::isfinite(decay_rate_hint))
        throw std::invalid_argument("integrate_semi_infinite: decay_rate_hint must be positive");
    if (!std::isfinite(origin))
        throw std::invalid_argument("integrate_semi_infinite: origin must be finite");

    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = spec.abs_tol > 0 ? spec.abs_tol / 8.0 : 0.0;
    panel_spec.rel_tol = spec.rel_tol > 0 ? std::max(spec.rel_tol / 8.0, 1e-13) : 0.0;

    const double sgn = (dir == Direction::plus) ? 1.0 : -1.0;
    const double cap = 24.0 / decay_rate_hint;
    const double growth = 1.6;
    constexpr int max_panels = 200000;
    // Integrands may plateau for several e-folding lengths before the decay
    // regime (e.g. a slowly varying factor times a bounded oscillation), and
    // panel widths grow geometrically, so a handful of nondecreasing panel
    // contributions is legitimate. Only a sustained run signals divergence.
    constexpr int grace = 6;

    T total{};
    double err_acc = 0.0;
    double t0 = origin;
    double width = std::min(3.0 / decay_rate_hint, cap);
    double prev_abs = std::numeric_limits<double>::infinity();
    int nondecreasing = 0;
    int levels = 0;

    for (int k = 0; k < max_panels; ++k) {
        const double t1 = t0 + sgn * width;
        auto pr = (dir == Direction::plus)
                      ? integrate_finite_ex(f, t0, t1, panel_spec)
                      : integrate_finite_ex(f, t1, t0, panel_spec);
        total += pr.value;
        err_acc += pr.error_bound;
        levels = std::max(levels, pr.levels);

        const double pa = detail::scalar_norm<T>(pr.value);
        const double tol = std::max(spec.abs_tol, spec.rel_tol * detail::scalar_norm<T>(total));

        if (k > 0 && pa >= prev_abs && pa > tol) {
            if (++nondecreasing >= grace)
                throw DivergenceError(
                    "integrate_semi_infinite: panel contributions are not decreasing");
        } else {
            nondecreasing = 0;
        }

        double ratio = std::exp(-decay_rate_hint * width);
        if (k > 0 && prev_abs > 0.0 && pa < prev_abs)
            ratio = pa / prev_abs;
        ratio = std::min(ratio, 0.999);
        const double tail_estimate = pa * ratio / (1.0 - ratio);

        if (k >= 1 && pa + tail_estimate < 0.25 * tol)
            return {total, err_acc + tail_estimate, levels};

        prev_abs = pa;
        t0 = t1;
        width = std::min(width * growth, cap);
    }
    throw ConvergenceError("integrate_semi_infinite: panel budget exhausted",
                           detail::scalar_norm<T>(total), err_acc);
}

template <class F>
auto integrate_semi_infinite(F&& f, double origin, Direction dir, double decay_rate_hint,
                             const QuadratureSpec& spec) {
    return integrate_semi_infinite_ex(std::forward<F>(f), origin, dir, decay_rate_hint, spec)
        .value;
}

struct RootResult {
    double root = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

/// Bisection with secant acceleration. The sign-change bracket is maintained
/// at every step, so convergence to a width <= tol is guaranteed.
RootResult bracket_root_ex(const std::function<double(double)>& f, double lo, double hi,
                           double tol);

double bracket_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace debx
