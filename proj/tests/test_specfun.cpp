#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdinv/quadrature.hpp"
#include "fdinv/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

using namespace fdinv;
using specfun::complex;

namespace {

struct Row {
    double alpha, beta, gamma, zr, zi, er, ei;
};

const Row kReference[] = {
#include "reference_prabhakar.inc"
};

double rel(complex got, complex want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("prabhakar matches the high-precision series table") {
    double worst = 0.0;
    for (const Row& r : kReference) {
        const complex got = specfun::prabhakar({r.alpha, r.beta, r.gamma}, {r.zr, r.zi});
        const complex want(r.er, r.ei);
        const double err = std::abs(got - want) / std::max(std::abs(want), 1e-12);
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("exponential and erfc special cases") {
    for (double x : {-5.0, -1.0, 0.0, 0.3, 2.0, 7.5}) {
        CHECK(rel(specfun::prabhakar({1.0, 1.0, 1.0}, x), std::exp(x)) < 1e-12);
    }
    for (double x : {0.1, 1.0, 2.5, 5.0}) {
        const double want = std::exp(x * x) * std::erfc(x);
        CHECK(rel(specfun::mittag_leffler(0.5, 1.0, -x), want) < 1e-12);
    }
    // E_{1,2}(z) = (e^z - 1) / z
    CHECK(rel(specfun::prabhakar({1.0, 2.0, 1.0}, 3.0), (std::exp(3.0) - 1.0) / 3.0) < 1e-12);
}

TEST_CASE("value at the origin is 1/Gamma(beta)") {
    for (double b : {0.5, 1.0, 2.5, 4.0}) {
        CHECK(specfun::prabhakar({0.7, b, 2.0}, 0.0).real() == doctest::Approx(1.0 / std::tgamma(b)).epsilon(1e-15));
    }
    CHECK(specfun::rgamma(0.0) == 0.0);
    CHECK(specfun::rgamma(-2.0) == 0.0);
}

TEST_CASE("evaluation reports its error estimate") {
    const auto e = specfun::prabhakar_eval({0.6, 1.0, 1.0}, complex(-20.0, 3.0));
    CHECK(e.target_met);
    CHECK(e.error_estimate <= specfun::kTargetAccuracy);
    CHECK_THROWS_AS(specfun::PrabhakarParams({1.2, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(specfun::PrabhakarParams({0.5, -1.0, 1.0}).validate(), std::invalid_argument);
}

TEST_CASE("negative-axis evaluator agrees with the general evaluator") {
    for (double beta : {0.6, 1.0, 1.6, 3.6}) {
        for (double gamma : {1.0, 2.0}) {
            const specfun::PrabhakarParams p{0.6, beta, gamma};
            const specfun::NegativeAxisEvaluator fast(p);
            for (double x : {0.0, 0.01, 0.7, 4.0, 30.0, 400.0}) {
                const double want = specfun::prabhakar(p, -x).real();
                CHECK(std::abs(fast(x) - want) <= 1e-12 * std::max(std::abs(want), 1e-3));
            }
        }
    }
}

TEST_CASE("sector decay exponent matches gamma") {
    const std::array<double, 8> radii{1, 2, 5, 10, 20, 50, 100, 200};
    const auto rep = specfun::sector_decay_report({0.6, 1.0, 1.0}, 0.5, radii);
    CHECK(rep.fitted_exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(rep.c_theta > 0.0);
    CHECK(rep.samples.size() == radii.size() * 9);
}

TEST_CASE("Laplace identity residuals") {
    CHECK(specfun::laplace_identity_residual({0.6, 1.0, 1.0}, 2.0, 1.0, 60.0) <= 1e-6);
    CHECK(specfun::laplace_identity_residual({0.6, 0.6, 1.0}, 2.0, 2.0, 60.0) <= 1e-6);
    CHECK(specfun::laplace_identity_residual({1.0, 1.0, 1.0}, 3.0, 0.5, 100.0) <= 1e-8);
    CHECK_THROWS_AS(specfun::laplace_identity_residual({0.6, 1.0, 1.0}, 2.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("truncated monomial transform") {
    // int_0^2 e^{-st} t^m dt
    for (complex s : {complex(0.3, 0.0), complex(-4.0, 1.0), complex(6.0, -2.0), complex(1e-9, 0.0)}) {
        for (int m : {0, 1, 3}) {
            const auto rule = quad::mapped(quad::gauss_legendre(60), 0.0, 2.0);
            complex want = 0.0;
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                want += rule.weights(i) * std::exp(-s * rule.nodes(i)) * std::pow(rule.nodes(i), m);
            }
            CHECK(rel(specfun::truncated_monomial_laplace(m, s, 2.0), want) < 1e-12);
        }
    }
}

TEST_CASE("identity suite passes") {
    for (const auto& c : specfun::identity_suite()) {
        INFO(c.name);
        CHECK(c.pass());
    }
}

TEST_CASE("gauss rules integrate polynomials exactly") {
    const auto gl = quad::gauss_legendre(10);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
        sum += gl.weights(i) * std::pow(gl.nodes(i), 18);
    }
    CHECK(sum == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
    // int_{-1}^{1} (1 - x)^{-1/2} dx = 2 sqrt 2
    const auto gj = quad::gauss_jacobi(8, -0.5, 0.0);
    const double w = gj.weights.sum();
    CHECK(w == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-13));
}
