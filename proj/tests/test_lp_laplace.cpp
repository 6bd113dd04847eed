#include <cmath>
#include <complex>
#include <numbers>

#include "debx/extremal.hpp"
#include "debx/hb.hpp"
#include "debx/lp_laplace.hpp"
#include "doctest.h"
#include "fixture.hpp"

using namespace debx;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("descriptor validation accepts the B^2 family and rejects impostors") {
    const auto& P = fixtures::pipeline_a1();
    CHECK(P.pair.descriptor.tau == P.pair.params.tau);
    CHECK(P.pair.descriptor.exp_type == doctest::Approx(2.0 * kPi));

    lp::LPDescriptor bad = P.pair.descriptor;
    bad.eval = [](Complex z) { return z * z - 25.0; };  // negative on (0, tau)
    CHECK_THROWS_AS(lp::validate_descriptor(bad), NumericsError);

    lp::LPDescriptor off_strip = P.pair.descriptor;
    off_strip.contour_re = 2.0 * off_strip.tau;  // outside (0, tau)
    CHECK_THROWS_AS(lp::validate_descriptor(off_strip), NumericsError);

    lp::LPDescriptor no_eval;
    no_eval.tau = 1.0;
    no_eval.exp_type = 1.0;
    no_eval.contour_re = 0.5;
    CHECK_THROWS_AS(lp::validate_descriptor(no_eval), NumericsError);
}

TEST_CASE("recovered density has the proven shape") {
    const auto& G = *fixtures::pipeline_a1().pair.tables;
    for (const auto& entry : lp::verify_g_shape(G)) {
        INFO(entry.check_name, " measured ", entry.measured, " tol ", entry.tol);
        CHECK(entry.pass);
    }
    // g(0) is strictly positive and the slope settles at alpha on the right.
    CHECK(G.g(0.0) > 0.0);
    CHECK(G.g1(0.0) == doctest::Approx(G.g1_at_0).epsilon(1e-9));
    const double far = G.g.hi() - 0.5;
    CHECK(G.g1(far) == doctest::Approx(G.alpha).epsilon(1e-6));
    CHECK(std::abs(G.g2(far)) < 1e-6);
}

TEST_CASE("slope at the origin ties to the structure function derivative") {
    const auto& P = fixtures::pipeline_a1();
    const double bp = hb::b_prime_at_zero(P.pair.params);
    // alpha = 2 g'(0) = 1 / B'(0)^2.
    CHECK(P.pair.tables->alpha == doctest::Approx(1.0 / (bp * bp)).epsilon(1e-9));
}

TEST_CASE("Laplace transform of g returns 1/F across the strip") {
    const auto& P = fixtures::pipeline_a1();
    const auto entry = lp::one_over_f_check(P.pair.descriptor, *P.pair.tables, {});
    INFO("worst relative error ", entry.measured);
    CHECK(entry.pass);
}

TEST_CASE("derivative tables satisfy the moment identities") {
    const auto& P = fixtures::pipeline_a1();
    CHECK(lp::moment_check(P.pair.descriptor, *P.pair.tables, 1, {}).pass);
    CHECK(lp::moment_check(P.pair.descriptor, *P.pair.tables, 2, {}).pass);
    CHECK_THROWS_AS(lp::moment_check(P.pair.descriptor, *P.pair.tables, 3, {}), DomainError);
}

TEST_CASE("inversion is independent of the contour placement") {
    const auto& P = fixtures::pipeline_a1();
    CHECK(lp::contour_independence_check(P.pair.descriptor, {}).pass);
}

TEST_CASE("cosine and sine transforms reproduce values of 1/F on the imaginary axis") {
    const auto& P = fixtures::pipeline_a1();
    const auto& d = P.pair.descriptor;
    const auto& G = *P.pair.tables;
    CHECK(lp::cosine_transform_check(d, G, 0.5, {}).pass);
    CHECK(lp::cosine_transform_check(d, G, 1.0, {}).pass);
    CHECK(lp::sine_transform_check(d, G, 1.0, 0.0, {}).pass);
    CHECK(lp::sine_transform_check(d, G, 1.0, 0.7, {}).pass);
}

TEST_CASE("tabulated g'' is even") {
    const auto& G = *fixtures::pipeline_a1().pair.tables;
    for (double t : {0.7, 1.3, 2.9}) {
        CHECK(std::abs(G.g2(t) - G.g2(-t)) < 1e-7 * (1.0 + std::abs(G.g2(t))));
    }
}

TEST_CASE("node noise model grows with the contour factor") {
    const auto& G = *fixtures::pipeline_a1().pair.tables;
    CHECK(G.noise_scale > 0.0);
    CHECK(G.node_noise(1.0) > G.node_noise(-1.0));
    CHECK(G.node_noise(2.0) == doctest::Approx(G.noise_scale *
                                               std::exp(2.0 * G.contour_re)).epsilon(1e-12));
}

TEST_CASE("direct inversion agrees with the tabulated density") {
    const auto& P = fixtures::pipeline_a1();
    const auto& G = *P.pair.tables;
    for (double t : {-1.2, 0.0, 2.4}) {
        const double direct = lp::bromwich_eval(P.pair.descriptor, t, 0, {});
        CHECK(std::abs(direct - G.g(t)) < 1e-8 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("grid sizing keeps the far tail above the noise floor") {
    const auto& P = fixtures::pipeline_a1();
    const double half = lp::default_g_halfwidth(P.pair.descriptor);
    const double c = P.pair.descriptor.contour_re;
    CHECK(half >= 8.0 / c);
    CHECK(half <= 12.5 / c);
    // The halfwidth must keep quadrature noise below the g'' floor it needs.
    CHECK(P.pair.tables->node_noise(half) < 1e-9);
    CHECK_THROWS_AS(lp::build_g_tables(P.pair.descriptor, -1.0, 1.0, 8, {}), DomainError);
}
