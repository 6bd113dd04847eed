#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "debx/hb.hpp"
#include "doctest.h"

using namespace debx;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

const hb::HBParams& params1() {
    static const hb::HBParams p = hb::make_params(1.0);
    return p;
}

double rel_diff(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

}  // namespace

TEST_CASE("structure function parameters") {
    const auto& p = params1();
    CHECK(p.norm_const == doctest::Approx(std::sqrt(2.0 / std::sinh(2.0 * kPi))).epsilon(1e-14));
    // tau solves tan(pi x) = x tanh(pi a) / a in (1, 1.5).
    const double resid = std::tan(kPi * p.tau) - p.tau * std::tanh(kPi) / 1.0;
    CHECK(std::abs(resid) < 1e-10);
    CHECK(p.tau > 1.0);
    CHECK(p.tau < 1.5);
    CHECK_THROWS_AS(hb::make_params(0.0), DomainError);
    CHECK_THROWS_AS(hb::make_params(-2.0), DomainError);
}

TEST_CASE("E agrees with its closed form at hand-computed points") {
    const auto& p = params1();
    const double norm = std::sqrt(2.0 / std::sinh(2.0 * kPi));

    // E(0) = norm * sin(pi i a) / (i a) = norm * sinh(pi a) / a.
    CHECK(rel_diff(hb::eval_e(p, Complex(0.0, 0.0)), Complex(norm * std::sinh(kPi), 0.0)) <
          1e-13);

    // E(i) = norm * sin(2 pi i) / (2 i) = norm * sinh(2 pi) / 2.
    CHECK(rel_diff(hb::eval_e(p, Complex(0.0, 1.0)),
                   Complex(norm * std::sinh(2.0 * kPi) / 2.0, 0.0)) < 1e-13);

    // E(i/2) = norm * sinh(3 pi / 2) / (3/2).
    CHECK(rel_diff(hb::eval_e(p, Complex(0.0, 0.5)),
                   Complex(norm * std::sinh(1.5 * kPi) / 1.5, 0.0)) < 1e-13);

    // At the removable point z = -ia the limit is norm * pi.
    CHECK(rel_diff(hb::eval_e(p, Complex(0.0, -1.0)), Complex(norm * kPi, 0.0)) < 1e-13);

    // Generic complex point against a direct evaluation.
    const Complex z(0.7, 0.4);
    const Complex direct = norm * std::sin(kPi * (z + Complex(0.0, 1.0))) / (z + Complex(0.0, 1.0));
    CHECK(rel_diff(hb::eval_e(p, z), direct) < 1e-13);
}

TEST_CASE("E splits as A - iB with A even and B odd") {
    const auto& p = params1();
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> re(-4.0, 4.0), im(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        const Complex z(re(rng), im(rng));
        const Complex e = hb::eval_e(p, z);
        const Complex split = hb::eval_a(p, z) - Complex(0.0, 1.0) * hb::eval_b(p, z);
        CHECK(rel_diff(e, split) < 1e-12);
        CHECK(rel_diff(hb::eval_a(p, -z), hb::eval_a(p, z)) < 1e-12);
        CHECK(rel_diff(hb::eval_b(p, -z), -hb::eval_b(p, z)) < 1e-12);
    }
    // A, B real on the real axis.
    for (double x : {0.33, 1.9, 7.25}) {
        CHECK(std::abs(hb::eval_a(p, Complex(x, 0.0)).imag()) < 1e-15);
        CHECK(std::abs(hb::eval_b(p, Complex(x, 0.0)).imag()) < 1e-15);
    }
}

TEST_CASE("E dominates its reflection in the upper half plane") {
    const auto& p = params1();
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> re(-6.0, 6.0), im(1e-3, 5.0);
    for (int k = 0; k < 1000; ++k) {
        const Complex z(re(rng), im(rng));
        CHECK(std::abs(hb::eval_e(p, std::conj(z))) < std::abs(hb::eval_e(p, z)));
    }
}

TEST_CASE("B at the top of the strip matches the hand-derived limit") {
    const auto& p = params1();
    const double norm = p.norm_const;
    const double sh = std::sinh(kPi), ch = std::cosh(kPi);
    // B(ia) = i norm (sinh cosh - pi a) / (2 a); at a = 1 about 5.6497 i.
    const Complex target(0.0, norm * (sh * ch - kPi) / 2.0);
    CHECK(rel_diff(hb::eval_b(p, Complex(0.0, 1.0)), target) < 1e-12);

    // Consistency with the conjugate split B = (E* - E) / (2i).
    const Complex e_up = hb::eval_e(p, Complex(0.0, 1.0));
    const Complex e_dn = hb::eval_e(p, Complex(0.0, -1.0));
    const Complex via_e = (std::conj(e_dn) - e_up) / Complex(0.0, 2.0);
    CHECK(rel_diff(hb::eval_b(p, Complex(0.0, 1.0)), via_e) < 1e-12);

    // A(ia) likewise.
    const Complex a_target = (std::conj(e_dn) + e_up) / 2.0;
    CHECK(rel_diff(hb::eval_a(p, Complex(0.0, 1.0)), a_target) < 1e-12);
}

TEST_CASE("removable singularities are continuous across the switch radius") {
    const auto& p = params1();
    // The near-pole rewrite activates inside |z -+ ia| < r; values on both
    // sides of the switch must agree.
    const double r = 0.05;
    for (double sign : {1.0, -1.0}) {
        const Complex center(0.0, sign);
        for (double angle : {0.0, kPi / 3.0, kPi, 1.7 * kPi}) {
            const Complex dir(std::cos(angle), std::sin(angle));
            const Complex inside = center + 0.999 * r * dir;
            const Complex outside = center + 1.001 * r * dir;
            CHECK(rel_diff(hb::eval_a(p, inside), hb::eval_a(p, outside)) < 2e-3);
            CHECK(rel_diff(hb::eval_b(p, inside), hb::eval_b(p, outside)) < 2e-3);
            // Tighter: difference should look like the derivative step.
            const Complex a_mid = 0.5 * (hb::eval_a(p, inside) + hb::eval_a(p, outside));
            CHECK(std::abs(hb::eval_a(p, inside) - hb::eval_a(p, outside)) <
                  0.1 * std::abs(a_mid) + 1e-12);
        }
    }
    // Exactly at the pole both A and B stay finite.
    CHECK(std::isfinite(std::abs(hb::eval_a(p, Complex(0.0, 1.0)))));
    CHECK(std::isfinite(std::abs(hb::eval_b(p, Complex(0.0, -1.0)))));
}

TEST_CASE("B/z is entire and consistent with B") {
    const auto& p = params1();
    for (const Complex z : {Complex(0.8, 0.0), Complex(-2.3, 1.1), Complex(0.01, -0.02)}) {
        CHECK(rel_diff(hb::eval_b_over_z(p, z) * z, hb::eval_b(p, z)) < 1e-12);
    }
    // Limit at the origin equals B'(0).
    CHECK(rel_diff(hb::eval_b_over_z(p, Complex(0.0, 0.0)),
                   Complex(hb::b_prime_at_zero(p), 0.0)) < 1e-12);
}

TEST_CASE("derivatives match high-order finite differences") {
    const auto& p = params1();
    const double h = 1e-3;
    auto fourth_order = [&](auto&& f, Complex z) {
        return (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12.0 * h);
    };
    for (const Complex z : {Complex(0.4, 0.0), Complex(1.3, 0.6)}) {
        auto fa = [&](Complex w) { return hb::eval_a(p, w); };
        auto fb = [&](Complex w) { return hb::eval_b(p, w); };
        CHECK(rel_diff(hb::eval_a_prime(p, z), fourth_order(fa, z)) < 1e-9);
        CHECK(rel_diff(hb::eval_b_prime(p, z), fourth_order(fb, z)) < 1e-9);
    }
    CHECK(rel_diff(Complex(hb::b_prime_at_zero(p), 0.0),
                   hb::eval_b_prime(p, Complex(0.0, 0.0))) < 1e-12);
}

TEST_CASE("weight is the exact reciprocal of |E|^2 on the real axis") {
    const auto& p = params1();
    for (double x : {0.0, 0.41, 1.5, 6.83, 40.0}) {
        CHECK(std::abs(hb::weight(p, x) * hb::abs_e_squared(p, x) - 1.0) < 1e-13);
        const Complex e = hb::eval_e(p, Complex(x, 0.0));
        CHECK(std::abs(hb::abs_e_squared(p, x) - std::norm(e)) <
              1e-12 * std::abs(std::norm(e)));
    }
}

TEST_CASE("kernel is Hermitian, positive on the diagonal, and stable") {
    const auto& p = params1();
    const std::vector<Complex> pts = {{0.3, 0.2}, {-1.1, 0.7}, {2.6, -0.4}};
    for (const Complex& w : pts) {
        for (const Complex& z : pts) {
            CHECK(std::abs(hb::kernel(p, w, z) - std::conj(hb::kernel(p, z, w))) < 1e-12);
        }
        const Complex diag = hb::kernel(p, w, w);
        CHECK(diag.real() > 0.0);
        CHECK(std::abs(diag.imag()) < 1e-12 * diag.real());
    }
    // The closed-form diagonal agrees with the generic kernel on the axis.
    for (double x : {0.0, 0.37, 1.9, 11.0}) {
        const double generic = hb::kernel(p, Complex(x, 0.0), Complex(x, 0.0)).real();
        CHECK(std::abs(hb::kernel_diag(p, x) - generic) < 1e-10 * std::abs(generic));
    }
    // K(0,0) = (pi a - tanh(pi a)) / (pi a^3).
    CHECK(hb::kernel_diag(p, 0.0) ==
          doctest::Approx((kPi - std::tanh(kPi)) / kPi).epsilon(1e-13));
    // Confluent path is continuous: K(x, x + eps) ~ K(x, x).
    const double k_eps = hb::kernel(p, Complex(0.3, 0.0), Complex(0.3 + 1e-9, 0.0)).real();
    CHECK(std::abs(k_eps - hb::kernel_diag(p, 0.3)) < 1e-7);
}

TEST_CASE("zeros of B start at the origin and interlace the integers") {
    const auto& p = params1();
    const auto xs = hb::zeros_of_b(p, 12);
    REQUIRE(xs.size() == 12);
    CHECK(xs[0] == 0.0);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        CHECK(xs[k] > static_cast<double>(k));
        CHECK(xs[k] < static_cast<double>(k) + 0.5);
        CHECK(std::abs(hb::eval_b(p, Complex(xs[k], 0.0)).real()) < 1e-10);
    }
    // First zero above the origin is tau.
    CHECK(xs[1] == doctest::Approx(p.tau).epsilon(1e-13));
}

TEST_CASE("Poisson extension of the weight matches the closed form") {
    const auto& p = params1();
    CHECK(hb::verify_poisson_identity(p, 0.3, 0.8).pass);
    CHECK(hb::verify_poisson_identity(p, 1.7, 0.5).pass);
    const auto small_a = hb::make_params(0.5);
    CHECK(hb::verify_poisson_identity(small_a, 0.0, 1.0).pass);
}

TEST_CASE("norm growth proxy of B scales linearly in the window") {
    const auto& p = params1();
    const double near = hb::condition_iv_proxy(p, 4.0);
    const double far = hb::condition_iv_proxy(p, 40.0);
    CHECK(near > 0.0);
    const double ratio = far / near;
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);
}
