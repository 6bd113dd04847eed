#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "debx/hb.hpp"
#include "debx/interpolation.hpp"
#include "debx/lp_laplace.hpp"
#include "debx/report.hpp"

namespace debx::ext {

using Complex = std::complex<double>;

/// Which target the extremal pair brackets: the kernel-normalized
/// interpolation problem itself (de_branges), or the one-sided Heaviside
/// problem obtained by multiplying through with z^2 + a^2 (heaviside). The
/// Heaviside pair vanishes at i*a by construction.
enum class PairKind { de_branges, heaviside };

enum class Side { minus, plus };

/// Laplace descriptor for F = B^2: even, exponential type 2*pi, double zero
/// at the origin, first positive zero of 1/F-relevance at tau.
lp::LPDescriptor make_b_squared_descriptor(const hb::HBParams& params);

/// A fully assembled extremal pair at vanishing parameter `a` and exponential
/// type 2*pi*delta. Everything downstream of the structure functions is
/// computed at the effective parameter a*delta and evaluated at delta*z; the
/// tables are shared so that rebinding the kind is cheap.
struct ExtremalPair {
    double a = 1.0;
    double delta = 1.0;
    PairKind kind = PairKind::heaviside;
    hb::HBParams params;  // built at a * delta
    lp::LPDescriptor descriptor;
    std::shared_ptr<const lp::GTables> tables;
    std::shared_ptr<const interp::HTable> h;
    interp::InterpolantM lower;
    interp::InterpolantM upper;
    QuadratureSpec spec;
};

ExtremalPair build_extremal(double a, PairKind kind, double delta = 1.0,
                            const QuadratureSpec& spec = {});

/// Rebind the kind of an existing pair without rebuilding any tables.
ExtremalPair with_kind(const ExtremalPair& pair, PairKind kind);

/// Evaluate the chosen side at z. For the Heaviside kind this is
/// M(delta z) * ((delta z)^2 + (a delta)^2), which vanishes identically at
/// z = i a because the quadratic factor is exact in floating point.
Complex eval_pair(const ExtremalPair& pair, Side side, Complex z);

/// pi b / (pi b delta - tanh(pi b delta)): the optimal L1 gap of the
/// Heaviside pair at vanishing parameter b and type 2*pi*delta, normalized by
/// the measure of the problem.
double closed_form_heaviside_optimal(double b, double delta);

/// Closed-form optimal gap for the pair's own kind. The de Branges form
/// 1 / (a_eff^2 K(0,0)) agrees with the Heaviside form identically.
double closed_form_optimal(const ExtremalPair& pair);

struct QuadratureValue {
    double value = 0.0;
    double tail_bound = 0.0;  // estimate of the mass beyond the window
};

/// Integrate the gap (upper - lower) against the pair's measure over
/// [-X, X]; X must be at least 50 and should be an integer so the cosine
/// envelope averages out. The tail bound comes from one measured period of
/// the asymptotic envelope.
QuadratureValue quadrature_optimal(const ExtremalPair& pair, double X,
                                   const QuadratureSpec& spec = {});

/// Gap value scaling across extreme types: delta -> infinity makes
/// value * delta approach 1 (plus an exponentially small excess), and
/// delta -> 0 makes value * (pi b)^2 delta^3 / 3 approach 1. Checked at 1%.
std::vector<CheckEntry> scaled_asymptotics_check(double b, const std::vector<double>& deltas);

/// Quadrature sum rule of the reproducing kernel: K(w, w) equals both the
/// integral of K(w, x)^2 against the weight and the sum of
/// K(w, xi)^2 / K(xi, xi) over the zeros of B. Both sides are truncated and
/// completed with closed-form tails before comparing against K(w, w).
std::vector<CheckEntry> verify_sampling_identity(const ExtremalPair& pair, double w,
                                                 std::size_t n_zeros,
                                                 const QuadratureSpec& spec = {});

/// Two independent witnesses that 1/|E|^2 dx acts like Lebesgue measure on
/// functions of exponential type 2*pi: a zero-mean identity for sinc^2
/// against the periodized weight defect, and equality of the two norms of a
/// type 2*pi function with a zero at i*a.
std::vector<CheckEntry> verify_isometry(double a, const QuadratureSpec& spec = {});

/// Structural requirements of the Heaviside pair: both sides vanish at i*a,
/// the underlying interpolants stay finite there, and F(i a_eff) < 0.
std::vector<CheckEntry> verify_heaviside_constraints(const ExtremalPair& pair);

/// The gap between the two sides at the first `count` positive zeros of B;
/// it collapses there because the gap is proportional to F.
CheckEntry gap_localization_check(const ExtremalPair& pair, std::size_t count);

/// Gap at the origin: 2 g'(0) B'(0)^2 / a^2 must equal 1 / a^2.
CheckEntry gap_at_origin_check(const ExtremalPair& pair);

/// Both sides interpolate the target 1/(x^2 + a^2) at the positive zeros
/// of B (first `count` of them).
CheckEntry interpolation_nodes_check(const ExtremalPair& pair, std::size_t count);

/// A pair built at (a, delta) evaluated at x must match, bitwise, the pair
/// built at (a*delta, 1) evaluated at delta*x: both routes run the same
/// arithmetic on the same tables.
CheckEntry covariance_check(const ExtremalPair& scaled, const ExtremalPair& flat,
                            const std::vector<double>& xs);

}  // namespace debx::ext
