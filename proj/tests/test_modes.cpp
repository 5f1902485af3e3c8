#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdinv/modes.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fdinv;

namespace {

ModelParams coupled() {
    ModelParams p;
    p.alpha = 0.6;
    p.kappa = 1.0;
    p.varkappa = 2.0;
    p.a = 0.3;
    p.b = 0.1;
    p.c = 0.2;
    p.d = 0.5;
    p.t0 = 1.0;
    p.t1 = 2.0;
    return p;
}

std::string what_of(const ModelParams& p) {
    try {
        build_mode_table(p, 4);
    } catch (const AdmissibilityError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("admissibility messages name the violated inequality") {
    ModelParams p = coupled();
    p.a = 1.0;
    p.b = 1.0;
    CHECK(what_of(p).find("ab <= min(c^2, d^2)") != std::string::npos);
    p = coupled();
    p.alpha = 1.0;
    CHECK(what_of(p).find("0 < alpha < 1") != std::string::npos);
    p = coupled();
    p.varkappa = 0.0;
    CHECK(what_of(p).find("kappa > 0") != std::string::npos);
    p = coupled();
    p.d = -0.1;
    CHECK(what_of(p).find("c >= 0") != std::string::npos);
    p = coupled();
    p.t1 = 0.5;
    CHECK(what_of(p).find("0 < t0 < t1") != std::string::npos);
    CHECK(what_of(coupled()).empty());
}

TEST_CASE("discriminant failure is reported") {
    // ab < 0 with equal diffusivities and c = d makes the discriminant 4ab < 0
    ModelParams p = coupled();
    p.varkappa = p.kappa;
    p.c = p.d = 0.5;
    p.a = 0.2;
    p.b = -0.2;
    CHECK(what_of(p).find("4ab >= 0") != std::string::npos);
}

TEST_CASE("coupled roots satisfy their defining relations") {
    const ModeTable t = build_mode_table(coupled(), 200);
    const ModelParams& p = t.params;
    for (const Mode& m : t.modes) {
        const double s = (p.kappa + p.varkappa) * m.lambda + p.c + p.d;
        const double prod = (p.kappa * m.lambda + p.c) * (p.varkappa * m.lambda + p.d) - p.a * p.b;
        CHECK(m.lam_breve >= m.lam_hat);
        CHECK(std::abs(m.lam_breve + m.lam_hat - s) <= 1e-14 * s);
        CHECK(std::abs(m.lam_breve * m.lam_hat - prod) <= 1e-14 * prod);
        CHECK(std::abs(m.theta * m.zeta - p.a * p.b) <= 1e-15 * std::max(1.0, m.theta * m.zeta));
        CHECK(t.c1 * m.lambda <= m.lam_hat);
        CHECK(m.lam_breve <= t.c2 * m.lambda * (1.0 + 1e-15));
        CHECK(m.gamma_trace == doctest::Approx(-std::sqrt(2.0 / std::numbers::pi) * m.k));
    }
}

TEST_CASE("factorization identity") {
    const ModeTable t = build_mode_table(coupled(), 20);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (const Mode& m : t.modes) {
        for (int i = 0; i < 20; ++i) {
            const complex sa(u(rng), u(rng));
            const auto [lhs, rhs] = factorization_sides(t.params, m, sa);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        }
    }
}

TEST_CASE("sine analysis of the parabola") {
    const SpectralField f = analyze([](double x) { return complex(x * (std::numbers::pi - x), 0.0); }, 9);
    for (int k = 1; k <= 9; ++k) {
        const double want = k % 2 == 1 ? std::sqrt(2.0 / std::numbers::pi) * 4.0 / (k * k * k) : 0.0;
        CHECK(std::abs(f.coeffs(k - 1) - want) < 1e-13);
    }
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(201, 0.0, std::numbers::pi);
    const Eigen::VectorXcd samples = synthesize(f, x);
    const SpectralField g = analyze(samples, 9);
    CHECK((g.coeffs - f.coeffs).cwiseAbs().maxCoeff() < 1e-4);
    CHECK_THROWS_AS(analyze(Eigen::VectorXcd::Zero(50), 9), std::invalid_argument);
    CHECK(eigenfunction(3, std::numbers::pi / 6) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)));
}

TEST_CASE("separation condition") {
    CHECK(check_separation(build_mode_table(coupled(), 30)).holds());
    ModelParams dec = coupled();
    dec.a = 0.0;
    CHECK_FALSE(check_separation(build_mode_table(dec, 5)).applicable);
    // kappa lambda_2 = varkappa lambda_1 with a tiny coupling: hat_2 meets breve_1
    ModelParams p = coupled();
    p.kappa = 1.0;
    p.varkappa = 4.0;
    p.c = p.d = 0.0;
    p.a = 0.1;
    p.b = 0.0;
    const SeparationReport rep = check_separation(build_mode_table(p, 3));
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations.front().kind == "hat-breve");
    CHECK(rep.violations.front().k == 2);
    CHECK(rep.violations.front().n == 1);
}
