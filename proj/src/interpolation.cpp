#include "debx/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace debx::interp {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// One h node. Where g' has already reached its constant value alpha (beyond
// the right edge of the tables) the lambda-integral has a closed form; doing
// that stretch analytically matters because the integrand does not decay
// there and would defeat tail-based termination.
double h_node(const lp::GTables& G, double a, double w, const QuadratureSpec& spec) {
    const double cut = std::min(0.0, G.g1.hi() - w);
    double analytic = 0.0;
    if (cut < 0.0) {
        analytic = G.alpha * (-cut + std::sin(a * cut) / a);
    }
    const auto f = [&](double l) { return G.g1(l + w) * (1.0 - std::cos(a * l)); };
    const double numeric =
        integrate_semi_infinite(f, cut, Direction::minus, G.tau, spec);
    return (numeric + analytic) / a;
}

}  // namespace

HTable build_h_table(std::shared_ptr<const lp::GTables> tables, double a, double w_min,
                     double w_max, std::size_t n, const QuadratureSpec& spec) {
    spec.validate();
    if (!tables) throw std::invalid_argument("build_h_table: missing tables");
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("build_h_table: a must be positive");
    }
    if (!(w_min < 0.0) || !(w_max > 0.0)) {
        throw TabulationError("h grid must straddle the origin");
    }
    if (n < 128) throw TabulationError("h grid needs at least 128 nodes");
    const lp::GTables& G = *tables;

    HTable out;
    out.a = a;
    out.tables = tables;

    std::vector<double> grid(n), hv(n);
    const double nm1 = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double di = static_cast<double>(i);
        const double w = (w_min * (nm1 - di) + w_max * di) / nm1;
        grid[i] = w;
        // Deep on the left h shrinks like the left tail of g, so the node
        // tolerance must shrink with it: the envelope (2/a) g(w) sets the
        // scale of the value being computed.
        QuadratureSpec node_spec = spec;
        node_spec.abs_tol = std::max(2e-8 * G.g(w), 1e-300);
        node_spec.rel_tol = 1e-8;
        hv[i] = h_node(G, a, w, node_spec);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (hv[i] < -1e-9) {
            throw ConsistencyError("h went negative at w=" + fmt("%.17g", grid[i]));
        }
        if (i + 1 < n && hv[i + 1] < hv[i] - 1e-8) {
            throw ConsistencyError("h not nondecreasing at w=" + fmt("%.17g", grid[i]));
        }
        if (hv[i] > 2.0 / a * G.g(grid[i]) + 1e-9) {
            throw ConsistencyError("h exceeds its (2/a) g envelope at w=" +
                                   fmt("%.17g", grid[i]));
        }
    }

    QuadratureSpec tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-11;
    out.h_at_0 = h_node(G, a, 0.0, tight);
    const auto d1 = [&](double l) { return G.g2(l) * (1.0 - std::cos(a * l)); };
    out.h1_at_0 =
        integrate_semi_infinite(d1, 0.0, Direction::minus, G.tau, tight) / a;

    SampledFunction h_sf(std::move(grid), std::move(hv));
    const double step = (w_max - w_min) / nm1;
    const std::size_t window =
        std::clamp<std::size_t>(static_cast<std::size_t>(3.0 / (G.tau * step)) + 1, 8, n / 5);
    const TailFit fit = fit_left_exp_tail(h_sf, G.tau, window);
    if (fit.max_rel_residual > 0.10) {
        throw ConsistencyError("h left tail model residual " + fmt("%.3g", fit.max_rel_residual) +
                               " exceeds 10%");
    }
    h_sf.set_left_tail(fit.tail);
    out.h = std::move(h_sf);
    return out;
}

double eval_h_second(const lp::GTables& G, double a, double w, const QuadratureSpec& spec) {
    const auto f = [&](double l) { return G.g2(l + w) * std::sin(a * l); };
    return -integrate_semi_infinite(f, 0.0, Direction::minus, G.tau, spec);
}

CheckEntry h_prime0_identity_check(const lp::LPDescriptor& d, const HTable& H,
                                   const QuadratureSpec&) {
    const double a = H.a;
    const double f_ia = d.eval(Complex(0.0, a)).real();
    const double target = H.tables->g1_at_0 / a + a / (2.0 * f_ia);
    CheckEntry e;
    e.check_name = "h_prime0_identity";
    e.target = target;
    e.measured = H.h1_at_0;
    e.abs_err = std::abs(H.h1_at_0 - target);
    e.rel_err = e.abs_err / std::abs(target);
    e.tol = 1e-5 * std::abs(target);
    e.pass = e.abs_err <= e.tol;
    return e;
}

CheckEntry h_second_reflection_check(const lp::LPDescriptor& d, const lp::GTables& G, double a,
                                     double w, const QuadratureSpec& spec) {
    const double lhs = eval_h_second(G, a, w, spec) - eval_h_second(G, a, -w, spec);
    const double f_ia = d.eval(Complex(0.0, a)).real();
    const double rhs = -std::sin(a * w) * a * a / f_ia;
    CheckEntry e;
    e.check_name = "h_second_reflection_w" + fmt("%g", w);
    e.target = rhs;
    e.measured = lhs;
    e.abs_err = std::abs(lhs - rhs);
    if (std::abs(rhs) < 1e-12) {
        e.rel_err = e.abs_err;
        e.tol = 1e-8;
    } else {
        e.rel_err = e.abs_err / std::abs(rhs);
        e.tol = 1e-5 * std::abs(rhs);
    }
    e.pass = e.abs_err <= e.tol;
    return e;
}

CheckEntry h_representation_check(const HTable& H, double w, const QuadratureSpec& spec) {
    const lp::GTables& G = *H.tables;
    const double a = H.a;
    const auto f = [&](double l) { return G.g(l + w) * std::sin(a * l); };
    const double direct = -integrate_semi_infinite(f, 0.0, Direction::minus, G.tau, spec);
    const double tabulated = H.h(w);
    CheckEntry e;
    e.check_name = "h_definition_w" + fmt("%g", w);
    e.target = direct;
    e.measured = tabulated;
    e.abs_err = std::abs(direct - tabulated);
    e.rel_err = e.abs_err / std::max(std::abs(direct), 1e-300);
    e.tol = 1e-7 + 1e-6 * std::abs(direct);
    e.pass = e.abs_err <= e.tol;
    return e;
}

std::vector<CheckEntry> verify_h_shape(const HTable& H) {
    const auto& grid = H.h.grid();
    const auto& vals = H.h.values();
    const lp::GTables& G = *H.tables;
    double neg = 0.0, drop = 0.0, excess = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        neg = std::max(neg, -vals[i]);
        if (i + 1 < grid.size()) drop = std::max(drop, vals[i] - vals[i + 1]);
        excess = std::max(excess, vals[i] - 2.0 / H.a * G.g(grid[i]));
    }
    std::vector<CheckEntry> out;
    const auto push = [&out](const std::string& name, double measured, double tol) {
        CheckEntry e;
        e.check_name = name;
        e.measured = measured;
        e.abs_err = measured;
        e.rel_err = measured;
        e.tol = tol;
        e.pass = measured <= tol;
        out.push_back(e);
    };
    push("h_nonneg", neg, 1e-9);
    push("h_monotone", drop, 1e-8);
    push("h_envelope", excess, 1e-9);
    return out;
}

Complex eval_A_interp(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H, double a,
                      Complex z, Branch branch, const QuadratureSpec& spec) {
    spec.validate();
    const double tau = G.tau;
    const double margin = 0.05 * tau;
    const double sigma = z.real();
    if (branch == Branch::automatic) {
        branch = sigma <= 0.5 * tau ? Branch::left : Branch::right;
    }
    const Complex fz = d.eval(z);

    if (branch == Branch::left) {
        if (!(sigma < tau - margin)) {
            throw DomainError("left A branch requires Re z < tau - margin");
        }
        const auto f = [&](double w) { return H.h(w) * std::exp(-z * w); };
        const Complex integral =
            integrate_semi_infinite(f, 0.0, Direction::minus, tau - sigma, spec);
        return fz / a * integral;
    }

    if (!(sigma > margin)) {
        throw DomainError("right A branch requires Re z > margin");
    }
    const double reach = H.h.hi();
    const double tail_bound = std::abs(fz) / a * (2.0 / a) * std::exp(-sigma * reach) *
                              (G.g(reach) / sigma + G.alpha / (sigma * sigma));
    if (tail_bound > 0.25 * spec.abs_tol) {
        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "h table reach %.6g insufficient at Re z = %.6g (truncation bound %.3g)",
                      reach, sigma, tail_bound);
        throw ConvergenceError(detail, 0.0, tail_bound);
    }
    const auto f = [&](double w) {
        return w <= reach ? H.h(w) * std::exp(-z * w) : Complex{};
    };
    const Complex integral = integrate_semi_infinite(f, 0.0, Direction::plus, sigma, spec);
    return 1.0 / (z * z + a * a) - fz / a * integral;
}

CheckEntry a_seam_check(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H,
                        double a, const QuadratureSpec& spec) {
    // Stay close to the real segment (0, tau): far off axis F grows like
    // exp(2*pi*|Im z|) and amplifies table noise past any useful tolerance.
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
        const double fr = 0.25 + 0.5 * j / 19.0;
        const double im = -0.5 + 1.0 * j / 19.0;
        const Complex z(fr * G.tau, im);
        const Complex left = eval_A_interp(d, G, H, a, z, Branch::left, spec);
        const Complex right = eval_A_interp(d, G, H, a, z, Branch::right, spec);
        worst = std::max(worst, std::abs(left - right));
    }
    CheckEntry e;
    e.check_name = "a_seam_agreement";
    e.measured = worst;
    e.abs_err = worst;
    e.rel_err = worst;
    e.tol = 1e-7;
    e.pass = worst <= e.tol;
    return e;
}

CheckEntry a_boundedness_check(const lp::LPDescriptor& d, const lp::GTables& G, const HTable& H,
                               double a, const QuadratureSpec& spec) {
    double sup = 0.0;
    for (double im : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0, 10.0, 20.0, 40.0}) {
        const Complex z(0.5 * G.tau, im);
        const Complex av = eval_A_interp(d, G, H, a, z, Branch::automatic, spec);
        sup = std::max(sup, std::abs(av) / (1.0 + std::abs(d.eval(z))));
    }
    CheckEntry e;
    e.check_name = "a_boundedness";
    e.measured = sup;
    e.abs_err = sup;
    e.rel_err = sup;
    e.tol = 10.0;
    e.pass = sup <= e.tol;
    return e;
}

InterpolantM make_interpolant(InterpKind kind, const lp::LPDescriptor& d,
                              std::shared_ptr<const lp::GTables> tables,
                              std::shared_ptr<const HTable> h, double a) {
    if (!tables || !h) throw std::invalid_argument("make_interpolant: missing tables");
    if (!d.eval_over_z2) {
        throw std::invalid_argument("make_interpolant: descriptor needs eval_over_z2");
    }
    InterpolantM m;
    m.kind = kind;
    m.descriptor = d;
    m.tables = std::move(tables);
    m.h = std::move(h);
    m.a = a;
    m.g1_at_0 = m.tables->g1_at_0;
    m.value_at_0 = kind == InterpKind::minus ? 0.0 : 1.0 / (a * a);
    return m;
}

Complex eval_m(const InterpolantM& m, Complex z, const QuadratureSpec& spec) {
    if (z.real() == 0.0 && z.imag() == 0.0) return Complex(m.value_at_0, 0.0);
    const Complex av = eval_A_interp(m.descriptor, *m.tables, *m.h, m.a, z, Branch::automatic,
                                     spec);
    const Complex over_z2 = m.descriptor.eval_over_z2(z);
    Complex value = av + m.h->h_at_0 / m.a * z * over_z2;
    if (m.kind == InterpKind::plus) {
        value += 2.0 * m.g1_at_0 / (m.a * m.a) * over_z2;
    }
    return value;
}

double interpolation_target(double a, double x) {
    return x >= 0.0 ? 1.0 / (x * x + a * a) : 0.0;
}

CheckEntry check_sign(const InterpolantM& m, const std::vector<double>& xs,
                      const QuadratureSpec& spec) {
    double worst = 0.0;
    for (double x : xs) {
        const double v = eval_m(m, Complex(x, 0.0), spec).real();
        const double t = interpolation_target(m.a, x);
        worst = std::max(worst, m.kind == InterpKind::minus ? v - t : t - v);
    }
    CheckEntry e;
    e.check_name = m.kind == InterpKind::minus ? "m_sign_minus" : "m_sign_plus";
    e.measured = worst;
    e.abs_err = worst;
    e.rel_err = worst;
    e.tol = 1e-9;
    e.pass = worst <= e.tol;
    return e;
}

CheckEntry check_growth_bound(const InterpolantM& m, const std::vector<double>& xs,
                              const std::vector<double>& f_zeros, const QuadratureSpec& spec) {
    const double tol = 50.0;
    // The target jumps at the origin while F/z^2 stays finite there, so the
    // ratio below genuinely grows like (2 g1 / a^2) / x^2 as x -> 0. Exclude
    // the neighbourhood where that structural term alone exceeds half the
    // budget; elsewhere the bound is a real statement about the interpolant.
    const double origin_radius =
        std::max(1e-3, std::sqrt(4.0 * m.g1_at_0 / (m.a * m.a * tol)));
    double sup = 0.0;
    for (double x : xs) {
        if (std::abs(x) < origin_radius) continue;
        bool excluded = false;
        for (double xi : f_zeros) {
            if (std::abs(x - xi) < 1e-3 || std::abs(x + xi) < 1e-3) {
                excluded = true;
                break;
            }
        }
        if (excluded) continue;
        const double v = eval_m(m, Complex(x, 0.0), spec).real();
        const double t = interpolation_target(m.a, x);
        const double fx = std::abs(m.descriptor.eval(Complex(x, 0.0)));
        sup = std::max(sup, std::abs(v - t) * (1.0 + x * x) / fx);
    }
    CheckEntry e;
    e.check_name =
        m.kind == InterpKind::minus ? "growth_bound_minus" : "growth_bound_plus";
    e.measured = sup;
    e.abs_err = sup;
    e.rel_err = sup;
    e.tol = tol;
    e.pass = sup <= e.tol;
    return e;
}

}  // namespace debx::interp
