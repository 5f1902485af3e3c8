#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdinv/laplace.hpp"

#include <cmath>
#include <numbers>

using namespace fdinv;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

ModelParams params(double a) {
    ModelParams p;
    p.alpha = kGolden;
    p.kappa = 1.0;
    p.varkappa = 1.5;
    p.a = a;
    p.b = a == 0.0 ? 0.0 : 0.1;
    p.c = 0.2;
    p.d = 0.4;
    p.t0 = 1.0;
    p.t1 = 3.0;
    return p;
}

JumpContext context(double a, int K = 4) {
    const ModelParams p = params(a);
    const ModeTable t = build_mode_table(p, K);
    SpectralField phi = SpectralField::zero(K);
    SpectralField psi = SpectralField::zero(K);
    SourceSpec src = SourceSpec::zero(K, 2);
    for (int k = 0; k < K; ++k) {
        phi.coeffs(k) = 1.0 / (k + 1.0);
        psi.coeffs(k) = complex(0.3, -0.1 * k);
        src.f(k, 0) = 1.0;
        src.f(k, 2) = -0.5 / (k + 1.0);
        src.chi(k, 1) = 0.25;
    }
    return JumpContext::build(p, t, phi, psi, src);
}

}  // namespace

TEST_CASE("one-sided limits approach the principal values") {
    const JumpContext ctx = context(0.2);
    const double r = 0.7;
    const complex up = flux_transform(ctx, complex(-r, 1e-9));
    const complex lo = flux_transform(ctx, complex(-r, -1e-9));
    CHECK(std::abs(up - flux_transform(ctx, -r, Side::upper)) < 1e-6 * std::abs(up));
    CHECK(std::abs(lo - flux_transform(ctx, -r, Side::lower)) < 1e-6 * std::abs(lo));
    CHECK_THROWS_AS(flux_transform(ctx, complex(0.5, 0.0), Side::upper), std::invalid_argument);
    CHECK_THROWS_AS(flux_transform(ctx, complex(0.0, 0.0)), PoleError);
}

TEST_CASE("jump equals the principal branch function") {
    for (double a : {0.0, 0.2}) {
        const JumpContext ctx = context(a);
        for (double rho : {0.3, 1.0, 2.5}) {
            const complex j = jump(ctx, rho);
            CHECK(std::abs(j - q_branch(ctx, 0, rho)) <= 1e-12 * std::abs(j));
        }
    }
}

TEST_CASE("pole bookkeeping") {
    CHECK(context(0.0).J() == 2);
    CHECK(context(0.2).J() == 4);
    CHECK(context(0.0, 3).poles.size() == 6);
    CHECK(context(0.2, 3).poles.size() == 12);
    const JumpContext ctx = context(0.2);
    const complex on_line = std::polar(2.0, std::numbers::pi * (1.0 - kGolden));
    CHECK(on_pole_lines(kGolden, on_line));
    CHECK_THROWS_AS(q_branch(ctx, 0, on_line), PoleError);
    CHECK_NOTHROW(q_branch(ctx, 3, complex(1.0, 0.5)));
}

TEST_CASE("zero data give zero transforms") {
    const ModelParams p = params(0.2);
    const ModeTable t = build_mode_table(p, 3);
    const JumpContext ctx =
        JumpContext::build(p, t, SpectralField::zero(3), SpectralField::zero(3), SourceSpec::zero(3, 1));
    CHECK(flux_transform(ctx, complex(1.0, 2.0)) == complex(0.0, 0.0));
    CHECK(jump(ctx, 1.0) == complex(0.0, 0.0));
}

TEST_CASE("branch search and orbit") {
    const double alpha = 1.0 / std::sqrt(2.0);
    for (double y : {0.1, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) {
        const auto n = branch_search(alpha, y, 0.01, 5000);
        REQUIRE(n.has_value());
        const double x = static_cast<double>(*n) / alpha;
        CHECK(std::abs(std::polar(1.0, 2.0 * std::numbers::pi * (x - std::floor(x))) - std::polar(1.0, y)) < 0.01);
    }
    // brute-force scan: n = 408 is the first hit for y = 0
    CHECK(branch_search(alpha, 0.0, 0.01, 2000) == 408L);
    CHECK_FALSE(branch_search(0.5, 1.0, 0.01, 5000).has_value());
    CHECK(orbit_size(0.5, 5000) == 1);
    CHECK(orbit_size(0.4, 5000) == 2);
    CHECK(orbit_size(0.75, 5000) == 3);
}

TEST_CASE("truncated transform is entire") {
    Eigen::RowVectorXcd c(3);
    c << 1.0, 0.0, 2.0;
    // int_0^1 (1 + 2t^2) dt at s = 0
    CHECK(std::abs(truncated_transform(c, 0.0, 1.0) - 5.0 / 3.0) < 1e-14);
    CHECK(std::isfinite(std::abs(truncated_transform(c, complex(-30.0, 0.0), 1.0))));
}
