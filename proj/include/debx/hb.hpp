#pragma once

#include <complex>
#include <vector>

#include "debx/numerics.hpp"
#include "debx/report.hpp"

namespace debx::hb {

using Complex = std::complex<double>;

/// Parameters of the structure function family indexed by a > 0. The
/// canonical decomposition E = A - iB splits E into components that are real
/// on the real axis; tau is the smallest positive zero of B, which always
/// lies in (1, 1.5). Hyperbolic factors are cached because every evaluation
/// needs them.
struct HBParams {
    double a = 1.0;
    double norm_const = 0.0;  // sqrt(2 / sinh(2*pi*a))
    double tau = 0.0;
    double cosh_pi_a = 0.0;
    double sinh_pi_a = 0.0;
};

HBParams make_params(double a);

/// E(z) = norm * sin(pi*(z + ia)) / (z + ia), entire; the apparent pole at
/// z = -ia is removable and handled by a series.
Complex eval_e(const HBParams& p, Complex z);

/// A(z) = norm * (z*cosh(pi a)*sin(pi z) + a*sinh(pi a)*cos(pi z)) / (z^2+a^2),
/// even, real on the real axis. The zeros of z^2+a^2 are removable; close to
/// them the numerator is rewritten so the cancellation is exact.
Complex eval_a(const HBParams& p, Complex z);

/// B(z) = norm * (a*cosh(pi a)*sin(pi z) - z*sinh(pi a)*cos(pi z)) / (z^2+a^2),
/// odd, real on the real axis, with a simple zero at the origin.
Complex eval_b(const HBParams& p, Complex z);

/// B(z)/z, entire (B vanishes at the origin).
Complex eval_b_over_z(const HBParams& p, Complex z);

Complex eval_a_prime(const HBParams& p, Complex z);
Complex eval_b_prime(const HBParams& p, Complex z);

/// |E(x)|^2 on the real axis, via the closed form
/// norm^2 * (sinh(pi a)^2 + sin(pi x)^2) / (x^2 + a^2).
double abs_e_squared(const HBParams& p, double x);

/// 1 / |E(x)|^2, the measure weight on the real axis.
double weight(const HBParams& p, double x);

/// Reproducing kernel K(w, z) = [B(z)A(w*) - A(z)B(w*)] / (pi (z - w*)).
/// Confluent points are served by the derivative form.
Complex kernel(const HBParams& p, Complex w, Complex z);

/// K(x, x) on the real axis in a cancellation-free arrangement.
double kernel_diag(const HBParams& p, double x);

double b_prime_at_zero(const HBParams& p);

/// First `count` nonnegative zeros of B in increasing order, starting with 0.
/// The k-th positive zero lies in (k, k + 1/2).
std::vector<double> zeros_of_b(const HBParams& p, std::size_t count);

/// Harmonic-extension identity for the weight: the Poisson integral of
/// 1/|E|^2 against the kernel of the upper half plane reproduces
/// coth(2 pi a) - exp(-2 pi y) cos(2 pi x) / sinh(2 pi a) at x + iy. The
/// window [x-T, x+T] is complemented by the closed-form tail of the constant
/// part. Checked at T = 100 against an absolute tolerance of 1e-5.
CheckEntry verify_poisson_identity(const HBParams& p, double x, double y,
                                   const QuadratureSpec& spec = {});

/// int_{-X}^{X} B(x)^2 / |E(x)|^2 dx. Grows linearly in X, so the ratio of
/// the proxy at 10X to the proxy at X should sit near 10; callers use that as
/// a cheap divergence witness for the norm of B.
double condition_iv_proxy(const HBParams& p, double X,
                          const QuadratureSpec& spec = {});

}  // namespace debx::hb
