#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "debx/numerics.hpp"
#include "debx/report.hpp"
#include "debx/sampled_function.hpp"

namespace debx::lp {

using Complex = std::complex<double>;

/// An even entire function F of the Laguerre-Polya class with a double zero
/// at the origin, described by an evaluation callback plus the metadata the
/// inversion engine needs: the first positive zero tau (the inversion
/// contour sits at tau/2) and the exponential type (which controls the decay
/// of 1/F along vertical lines).
struct LPDescriptor {
    std::function<Complex(Complex)> eval;
    double tau = 0.0;
    double exp_type = 0.0;
    bool even = true;
    bool double_zero_at_origin = true;
    double contour_re = 0.0;
    /// F(z)/z^2 in a form that stays accurate through the origin.
    std::function<Complex(Complex)> eval_over_z2;
};

/// Checks the structural assumptions: F real on the real axis, positive on
/// (0, tau) (sampled), nonzero at the contour, conjugate-symmetric at a few
/// complex points. Throws ConsistencyError on violation.
void validate_descriptor(const LPDescriptor& d);

/// g^(order)(t) where g is the inverse two-sided Laplace transform of 1/F
/// along the vertical line Re s = contour_re. The integral is truncated at a
/// height U chosen from a calibrated decay bound for 1/F, then evaluated by
/// adaptive panels. The result is real for a valid descriptor; an imaginary
/// part above 1e-6 (relative to the value) aborts, since it signals a wrong
/// descriptor rather than roundoff.
double bromwich_eval(const LPDescriptor& d, double t, int order, const QuadratureSpec& spec);

/// Tabulated g, g', g'' with tail models. Left tails are least-squares fits
/// of (c0 + c1 dt) e^{tau dt}; right tails are the exact large-t forms
/// (alpha*t, alpha, 0) where alpha = 2 g'(0) is the slope of g at +infinity.
/// noise_scale models the absolute node noise noise_scale * e^{c t}, which
/// grows to the right because the contour factor amplifies quadrature error.
struct GTables {
    SampledFunction g;
    SampledFunction g1;
    SampledFunction g2;
    double g1_at_0 = 0.0;
    double alpha = 0.0;
    double tau = 0.0;
    double contour_re = 0.0;
    double f_at_contour = 0.0;
    double noise_scale = 0.0;

    double node_noise(double t) const;
};

/// Largest |t| for which tabulated g'' stays above -1e-9 given the noise
/// amplification e^{c t}; the default grid is [-halfwidth, halfwidth].
double default_g_halfwidth(const LPDescriptor& d);

GTables build_g_tables(const LPDescriptor& d, double t_min, double t_max, std::size_t n,
                       const QuadratureSpec& spec);

/// Integral of e^{-z t} g^(order)(t) over the real line from the tables,
/// valid for 0 < z < tau.
double laplace_of_g(const GTables& G, int order, double z, const QuadratureSpec& spec);

/// Reciprocal identity: the Laplace transform of g must reproduce 1/F at
/// five points across the strip. Reports the worst relative discrepancy.
CheckEntry one_over_f_check(const LPDescriptor& d, const GTables& G, const QuadratureSpec& spec);

/// Moment identity at the contour point: transform of g^(order) vs
/// contour_re^order / F(contour_re), order 1 or 2.
CheckEntry moment_check(const LPDescriptor& d, const GTables& G, int order,
                        const QuadratureSpec& spec);

/// Inversion along Re s = 0.3 tau and Re s = 0.7 tau must agree.
CheckEntry contour_independence_check(const LPDescriptor& d, const QuadratureSpec& spec);

/// Integral of g''(l) cos(zeta l) against -zeta^2 / F(i zeta).
CheckEntry cosine_transform_check(const LPDescriptor& d, const GTables& G, double zeta,
                                  const QuadratureSpec& spec);

/// Integral of g''(l + w) sin(zeta l) against zeta^2 sin(zeta w) / F(i zeta).
CheckEntry sine_transform_check(const LPDescriptor& d, const GTables& G, double zeta, double w,
                                const QuadratureSpec& spec);

/// Shape contracts on the tables: nonnegativity, evenness of g'', monotone
/// decay of g'' away from the origin, argmax at the origin.
std::vector<CheckEntry> verify_g_shape(const GTables& G);

}  // namespace debx::lp
