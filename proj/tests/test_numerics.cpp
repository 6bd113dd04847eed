#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "debx/numerics.hpp"
#include "debx/sampled_function.hpp"
#include "doctest.h"

namespace {

constexpr double kPi = std::numbers::pi;

double sinc_sq(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double s = std::sin(kPi * x) / (kPi * x);
    return s * s;
}

// Independent oracle: composite Simpson on a fixed fine grid.
double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(lo + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
}

}  // namespace

using namespace debx;

TEST_CASE("finite quadrature integrates a polynomial to roundoff") {
    const double v = integrate_finite([](double x) { return x * x; }, 0.0, 1.0, {});
    CHECK(std::abs(v - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("finite quadrature matches a Simpson oracle on an oscillatory window") {
    const double v = integrate_finite(sinc_sq, -20.0, 20.0, {});
    const double oracle = simpson(sinc_sq, -20.0, 20.0, 800000);
    CHECK(std::abs(v - oracle) < 1e-9);
}

TEST_CASE("finite quadrature validates its inputs") {
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 1.0, 1.0, {}),
                    std::invalid_argument);
    QuadratureSpec bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0.0, 1.0, bad),
                    std::invalid_argument);
    QuadratureSpec zeros;
    zeros.abs_tol = 0.0;
    zeros.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0.0, 1.0, zeros),
                    std::invalid_argument);
}

TEST_CASE("semi-infinite quadrature handles exponential decay in both directions") {
    const double plus = integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0,
                                                Direction::plus, 1.0, {});
    CHECK(std::abs(plus - 1.0) < 1e-10);

    const double minus = integrate_semi_infinite([](double t) { return std::exp(2.0 * t); },
                                                 0.0, Direction::minus, 2.0, {});
    CHECK(std::abs(minus - 0.5) < 1e-10);

    // Shifted origin.
    const double shifted = integrate_semi_infinite([](double t) { return std::exp(-(t - 3.0)); },
                                                   3.0, Direction::plus, 1.0, {});
    CHECK(std::abs(shifted - 1.0) < 1e-10);
}

TEST_CASE("semi-infinite quadrature survives power-law decay at loose tolerance") {
    QuadratureSpec loose;
    loose.abs_tol = 1e-4;
    loose.rel_tol = 1e-4;
    const double v = integrate_semi_infinite([](double t) { return 1.0 / (1.0 + t * t); }, 0.0,
                                             Direction::plus, 1.0, loose);
    CHECK(std::abs(v - kPi / 2.0) < 1e-3);
}

TEST_CASE("finite quadrature is additive over subintervals") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> c(5);
    for (auto& x : c) x = coef(rng);
    auto f = [&](double t) {
        double poly = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) poly = poly * t + c[k];
        return poly * std::exp(-t);
    };
    const double whole = integrate_finite(f, 0.0, 7.0, {});
    const double split =
        integrate_finite(f, 0.0, 2.3, {}) + integrate_finite(f, 2.3, 7.0, {});
    CHECK(std::abs(whole - split) < 1e-12);
}

TEST_CASE("semi-infinite quadrature rejects divergent integrands") {
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }, 0.0, Direction::plus,
                                            1.0, QuadratureSpec{}),
                    DivergenceError);
    CHECK_THROWS_AS(integrate_semi_infinite([](double t) { return std::exp(t); }, 0.0,
                                            Direction::plus, 1.0, QuadratureSpec{}),
                    DivergenceError);
}

TEST_CASE("Gauss-Legendre rule has exactness and symmetry") {
    const auto rule = gauss_legendre(16);
    REQUIRE(rule.nodes.size() == 16);
    double weight_sum = 0.0, odd = 0.0, even = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        weight_sum += rule.weights[k];
        odd += rule.weights[k] * std::pow(rule.nodes[k], 31);
        even += rule.weights[k] * std::pow(rule.nodes[k], 30);
    }
    CHECK(std::abs(weight_sum - 2.0) < 1e-14);
    CHECK(std::abs(odd) < 1e-15);
    CHECK(std::abs(even - 2.0 / 31.0) < 1e-14);
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("root bracketing finds roots to the requested tolerance") {
    const double r = bracket_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-13);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-12);

    // tan(pi x) = x tanh(pi) has its first root above 1 in (1.2, 1.4); compare
    // against a plain bisection oracle.
    auto f = [](double x) { return std::tan(kPi * x) - x * std::tanh(kPi); };
    double lo = 1.2, hi = 1.4;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double fast = bracket_root(f, 1.2, 1.4, 1e-13);
    CHECK(std::abs(fast - 0.5 * (lo + hi)) < 1e-11);

    CHECK_THROWS_AS(bracket_root([](double x) { return x * x - 2.0; }, 0.2, 0.4, 1e-13),
                    BracketingError);
    CHECK_THROWS_AS(bracket_root([](double x) { return x; }, 2.0, 1.0, 1e-13),
                    std::invalid_argument);
}

TEST_CASE("quadrature is bitwise reproducible") {
    const double a = integrate_finite(sinc_sq, -20.0, 20.0, {});
    const double b = integrate_finite(sinc_sq, -20.0, 20.0, {});
    CHECK(a == b);
    const auto r1 = gauss_legendre(16);
    const auto r2 = gauss_legendre(16);
    CHECK(r1.nodes == r2.nodes);
    CHECK(r1.weights == r2.weights);
}

TEST_CASE("sampled function reproduces nodes bitwise and interpolates between them") {
    const auto f = tabulate([](double x) { return std::sin(x); }, 0.0, 3.0, 301);
    for (double x : {0.0, 0.01, 1.5, 2.99, 3.0}) {
        CHECK(f(x) == std::sin(x));  // grid nodes, exact short-circuit
    }
    for (double x : {0.005, 0.837, 2.456}) {
        CHECK(std::abs(f(x) - std::sin(x)) < 2e-9);
    }
    CHECK_THROWS_AS(f(-0.1), DomainError);
    CHECK_THROWS_AS(f(3.1), DomainError);
}

TEST_CASE("sampled function defers to tail models outside the grid") {
    auto f = tabulate([](double x) { return std::exp(x); }, -2.0, 2.0, 101);
    ExpTail left{2.0, 0.5, 3.0, -2.0};
    AffineTail right{1.0, -0.25, 2.0};
    f.set_left_tail(left);
    f.set_right_tail(right);
    CHECK(f(-3.5) == left.value(-3.5));
    CHECK(f(5.0) == right.value(5.0));
    CHECK(f(2.0) == std::exp(2.0));  // boundary still served by the grid
}

TEST_CASE("sampled function validates its construction") {
    CHECK_THROWS_AS(SampledFunction({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}), TabulationError);
    CHECK_THROWS_AS(SampledFunction({0.0, 1.0, 2.0, 3.0}, {1.0, 2.0}), TabulationError);
    CHECK_THROWS_AS(SampledFunction({0.0, 2.0, 1.0, 3.0}, {1.0, 2.0, 3.0, 4.0}),
                    TabulationError);
    CHECK_THROWS_AS(tabulate([](double) { return std::nan(""); }, 0.0, 1.0, 16),
                    TabulationError);
    CHECK_THROWS_AS(tabulate([](double) { return 0.0; }, 1.0, 0.0, 16),
                    std::invalid_argument);
}

TEST_CASE("left tail fit recovers an exact affine-exponential model") {
    const double rate = 1.7;
    auto model = [rate](double dt) { return (0.3 + 0.2 * dt) * std::exp(rate * dt); };
    std::vector<double> grid, values;
    const double lo = -10.0, hi = 0.0;
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        grid.push_back(t);
        values.push_back(model(t - lo));
    }
    const SampledFunction f(grid, values);
    const auto fit = fit_left_exp_tail(f, rate, 40);
    // The fit anchors at the right edge of its window; map the model there.
    const double shift = fit.tail.t_ref - lo;
    CHECK(fit.tail.t_ref == grid[39]);
    CHECK(std::abs(fit.tail.c0 - model(shift)) < 1e-9 * model(shift));
    CHECK(std::abs(fit.tail.c1 - 0.2 * std::exp(rate * shift)) <
          1e-9 * 0.2 * std::exp(rate * shift));
    CHECK(fit.max_rel_residual < 1e-9);
    CHECK(std::abs(fit.tail.value(-12.0) - model(-2.0)) < 1e-9 * std::abs(model(-2.0)));
}
