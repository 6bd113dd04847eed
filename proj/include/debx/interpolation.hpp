#pragma once

#include <memory>
#include <vector>

#include "debx/lp_laplace.hpp"
#include "debx/numerics.hpp"
#include "debx/report.hpp"
#include "debx/sampled_function.hpp"

namespace debx::interp {

using Complex = std::complex<double>;

/// h(w) = (1/a) int_{-inf}^0 g'(l+w) (1 - cos(a l)) dl, the kernel that
/// drives the interpolation integrals. Nonnegative and nondecreasing, grows
/// like (alpha/a) w on the right, decays like the left tail of g on the left.
struct HTable {
    SampledFunction h;
    double a = 0.0;
    double h_at_0 = 0.0;
    double h1_at_0 = 0.0;
    std::shared_ptr<const lp::GTables> tables;
};

HTable build_h_table(std::shared_ptr<const lp::GTables> tables, double a, double w_min,
                     double w_max, std::size_t n, const QuadratureSpec& spec);

/// h''(w) computed directly as -int_{-inf}^0 g''(l+w) sin(a l) dl.
double eval_h_second(const lp::GTables& G, double a, double w, const QuadratureSpec& spec);

/// h'(0) from the table construction against g'(0)/a + a/(2 F(ia)).
CheckEntry h_prime0_identity_check(const lp::LPDescriptor& d, const HTable& H,
                                   const QuadratureSpec& spec);

/// h''(w) - h''(-w) against -sin(a w) a^2 / F(ia).
CheckEntry h_second_reflection_check(const lp::LPDescriptor& d, const lp::GTables& G, double a,
                                     double w, const QuadratureSpec& spec);

/// Definition cross-check at one point: -int_{-inf}^0 g(l+w) sin(a l) dl
/// must reproduce the tabulated h(w).
CheckEntry h_representation_check(const HTable& H, double w, const QuadratureSpec& spec);

/// Nonnegativity, monotonicity, and the (2/a) g(w) envelope on the grid.
std::vector<CheckEntry> verify_h_shape(const HTable& H);

enum class Branch { automatic, left, right };

/// The analytic interpolation kernel A. The left branch integrates
/// (F(z)/a) int_{-inf}^0 h(w) e^{-zw} dw (valid Re z < tau - margin), the
/// right branch 1/(z^2+a^2) - (F(z)/a) int_0^inf h(w) e^{-zw} dw (valid
/// Re z > margin); automatic picks left iff Re z <= tau/2.
Complex eval_A_interp(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H, double a,
                      Complex z, Branch branch, const QuadratureSpec& spec);

/// Both branches evaluated across the overlap strip; worst |A1 - A2|.
CheckEntry a_seam_check(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H,
                        double a, const QuadratureSpec& spec);

/// sup |A| / (1 + |F|) along the mid-strip vertical line.
CheckEntry a_boundedness_check(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H,
                               double a, const QuadratureSpec& spec);

enum class InterpKind { minus, plus };

/// One of the two extremal interpolants of 1/(x^2+a^2):
///   M-(z) = A(z) + (h(0)/a) F(z)/z,
///   M+(z) = M-(z) + (2 g'(0)/a^2) F(z)/z^2.
/// The z = 0 values are stored exactly (0 and 1/a^2).
struct InterpolantM {
    InterpKind kind = InterpKind::minus;
    lp::LPDescriptor descriptor;
    std::shared_ptr<const lp::GTables> tables;
    std::shared_ptr<const HTable> h;
    double a = 0.0;
    double g1_at_0 = 0.0;
    double value_at_0 = 0.0;
};

InterpolantM make_interpolant(InterpKind kind, const lp::LPDescriptor& d,
                              std::shared_ptr<const lp::GTables> tables,
                              std::shared_ptr<const HTable> h, double a);

Complex eval_m(const InterpolantM& m, Complex z, const QuadratureSpec& spec);

/// Target of the interpolation: 1/(x^2+a^2) for x >= 0, zero for x < 0.
double interpolation_target(double a, double x);

/// One-sidedness sweep: M- below the target, M+ above, within 1e-9 slack.
CheckEntry check_sign(const InterpolantM& m, const std::vector<double>& xs,
                      const QuadratureSpec& spec);

/// sup |M(x) - target(x)| (1 + x^2) / F(x) over xs, skipping points within
/// 1e-3 of a zero of F. Reports the growth constant.
CheckEntry check_growth_bound(const InterpolantM& m, const std::vector<double>& xs,
                              const std::vector<double>& f_zeros, const QuadratureSpec& spec);

}  // namespace debx::interp
