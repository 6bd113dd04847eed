#include "debx/numerics.hpp"

#include <numbers>

namespace debx {

void QuadratureSpec::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be nonnegative");
    if (abs_tol <= 0.0 && rel_tol <= 0.0)
        throw std::invalid_argument("QuadratureSpec: at least one tolerance must be positive");
    if (max_panel_doublings < 1 || max_panel_doublings > 30)
        throw std::invalid_argument("QuadratureSpec: max_panel_doublings out of range");
    if (nodes_per_panel < 2 || nodes_per_panel > 128)
        throw std::invalid_argument("QuadratureSpec: nodes_per_panel out of range");
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 2 || n > 128)
        throw std::invalid_argument("gauss_legendre: order out of range");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        // One clean-up pass so dp matches the converged node.
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

RootResult bracket_root_ex(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("bracket_root: tol must be positive");
    if (!(lo < hi))
        throw std::invalid_argument("bracket_root: requires lo < hi");
    double fl = f(lo);
    double fh = f(hi);
    if (!std::isfinite(fl) || !std::isfinite(fh))
        throw BracketingError("bracket_root: endpoint evaluation is not finite");
    if (fl == 0.0)
        return {lo, lo, lo, 0};
    if (fh == 0.0)
        return {hi, hi, hi, 0};
    if ((fl > 0.0) == (fh > 0.0))
        throw BracketingError("bracket_root: no sign change over [lo, hi]");

    int it = 0;
    for (; it < 200 && (hi - lo) > tol; ++it) {
        double c = 0.5 * (lo + hi);
        // Secant proposal on alternate iterations, used only if it lands
        // strictly inside the bracket; the interleaved bisections guarantee
        // the bracket halves at least every other step.
        const double denom = fh - fl;
        if (denom != 0.0 && it % 2 == 0) {
            const double s = hi - fh * (hi - lo) / denom;
            const double margin = 0.01 * (hi - lo);
            if (s > lo + margin && s < hi - margin)
                c = s;
        }
        const double fc = f(c);
        if (!std::isfinite(fc))
            throw BracketingError("bracket_root: interior evaluation is not finite");
        if (fc == 0.0)
            return {c, c, c, it + 1};
        if ((fc > 0.0) == (fl > 0.0)) {
            lo = c;
            fl = fc;
        } else {
            hi = c;
            fh = fc;
        }
    }
    if ((hi - lo) > tol)
        throw ConvergenceError("bracket_root: failed to reach tolerance", 0.5 * (lo + hi),
                               hi - lo);
    return {0.5 * (lo + hi), lo, hi, it};
}

double bracket_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    return bracket_root_ex(f, lo, hi, tol).root;
}

}  // namespace debx
