#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdinv/inverse.hpp"

#include <cmath>
#include <random>

using namespace fdinv;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

ModelParams params(double a, double b) {
    ModelParams p;
    p.alpha = kGolden;
    p.kappa = 1.0;
    p.varkappa = 1.5;
    p.a = a;
    p.b = b;
    p.c = 0.2;
    p.d = 0.4;
    p.t0 = 1.0;
    p.t1 = 3.0;
    return p;
}

struct Data {
    SpectralField phi, psi;
    SourceSpec src;
};

Data sample_data(int K, int M, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Data d{SpectralField::zero(K), SpectralField::zero(K), SourceSpec::zero(K, M)};
    for (int k = 0; k < K; ++k) {
        d.phi.coeffs(k) = complex(u(rng), u(rng));
        d.psi.coeffs(k) = complex(u(rng), u(rng));
        for (int m = 0; m <= M; ++m) {
            d.src.f(k, m) = complex(u(rng), u(rng));
            d.src.chi(k, m) = complex(u(rng), u(rng));
        }
    }
    return d;
}

Eigen::VectorXd window(const ModelParams& p, int n) {
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) {
        t(i) = p.t0 + (p.t1 - p.t0) * (i + 0.5) / n;
    }
    return t;
}

}  // namespace

TEST_CASE("IP1 residues match their closed forms") {
    const ModelParams p = params(0.0, 0.0);
    const ModeTable t = build_mode_table(p, 8);
    const Data d = sample_data(8, 2, 1);
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    for (int n = 1; n <= 8; ++n) {
        const ResidueReport r = residue_ip1(ctx, n);
        CHECK(r.rel_error <= 1e-6);
        CHECK(r.radius > 0.0);
    }
    ResidueOptions other;
    other.branch = 2;
    CHECK(residue_ip1(ctx, 3, other).rel_error <= 1e-6);
}

TEST_CASE("off-mode residues vanish") {
    const ModelParams p = params(0.0, 0.0);
    const ModeTable t = build_mode_table(p, 6);
    Data d = sample_data(6, 1, 2);
    d.phi.coeffs(2) = 0.0;
    d.src.f.row(2).setZero();
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    CHECK(std::abs(residue_ip1(ctx, 3).contour_value) <= 1e-8);
}

TEST_CASE("zero data give zero residues") {
    const ModelParams p = params(0.0, 0.0);
    const ModeTable t = build_mode_table(p, 3);
    const JumpContext ctx =
        JumpContext::build(p, t, SpectralField::zero(3), SpectralField::zero(3), SourceSpec::zero(3, 1));
    const ResidueReport r = residue_ip1(ctx, 2);
    CHECK(r.contour_value == complex(0.0, 0.0));
    CHECK(r.closed_form == complex(0.0, 0.0));
    CHECK(r.rel_error == 0.0);
}

TEST_CASE("IP2 residues, relations and the extraction system") {
    const ModelParams p = params(0.3, 0.1);
    const ModeTable t = build_mode_table(p, 5);
    const Data d = sample_data(5, 2, 3);
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    for (int n = 1; n <= 5; ++n) {
        const Ip2Residues r = residue_ip2(ctx, n);
        CHECK_FALSE(r.double_pole);
        CHECK(r.breve.rel_error <= 1e-6);
        CHECK(r.hat.rel_error <= 1e-6);
        CHECK(r.relation_violation <= 1e-6);
        const Mode& m = t.mode(n);
        CHECK(std::abs(std::abs(r.determinant) - std::abs(p.a * (m.lam_breve - m.lam_hat))) <=
              1e-12 * std::abs(p.a * (m.lam_breve - m.lam_hat)));
    }
}

TEST_CASE("IP2 double pole") {
    ModelParams p = params(1.0, 0.0);
    p.varkappa = p.kappa;
    p.c = p.d = 1.0;
    const ModeTable t = build_mode_table(p, 3);
    const Data d = sample_data(3, 1, 4);
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    for (int n = 1; n <= 3; ++n) {
        const Ip2Residues r = residue_ip2(ctx, n);
        CHECK(r.double_pole);
        CHECK(r.breve.rel_error <= 1e-6);
        CHECK(r.hat.rel_error <= 1e-6);
        CHECK(r.relation_violation <= 1e-6);
    }
}

TEST_CASE("IP2 refuses without separation") {
    ModelParams p = params(0.1, 0.0);
    p.varkappa = 4.0;
    p.c = p.d = 0.0;
    const ModeTable t = build_mode_table(p, 3);
    const Data d = sample_data(3, 0, 5);
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    CHECK_THROWS_AS(residue_ip2(ctx, 1), std::domain_error);
}

TEST_CASE("residue radius refuses circles that reach a neighbour") {
    const ModelParams p = params(0.0, 0.0);
    const ModeTable t = build_mode_table(p, 3);
    const Data d = sample_data(3, 0, 6);
    const JumpContext ctx = JumpContext::build(p, t, d.phi, d.psi, d.src);
    ResidueOptions o;
    o.radius = 5.0;
    CHECK_THROWS_AS(residue_ip1(ctx, 2, o), std::domain_error);
    o.radius = 0.0;
    o.nodes = 32;
    CHECK_THROWS_AS(residue_ip1(ctx, 2, o), std::invalid_argument);
}

TEST_CASE("least squares on small consistent problems") {
    const ModelParams p = params(0.0, 0.0);
    const int K = 2;
    const int M = 1;
    const ModeTable t = build_mode_table(p, K);
    const Data d = sample_data(K, M, 7);
    const Eigen::VectorXd time = window(p, 200);
    const auto traj = solve(p, t, d.phi, SpectralField::zero(K), d.src, time);
    const FluxTrace h = boundary_flux(traj, t);
    const ReconstructionResult r = lsq_reconstruct(h, p, t, M, 0.0, Problem::ip1);
    CHECK(r.unknowns == K * (M + 2));
    CHECK(r.numerical_rank == r.unknowns);
    const double err = std::max((r.phi_hat.coeffs - d.phi.coeffs).norm() / d.phi.coeffs.norm(),
                                (r.f_hat - d.src.f).norm() / d.src.f.norm());
    CHECK(err <= r.equilibrated_condition * 1e-12);
    CHECK(r.residual_norm < 1e-10);
}

TEST_CASE("zero data give zero estimates") {
    const ModelParams p = params(0.3, 0.1);
    const ModeTable t = build_mode_table(p, 3);
    FluxTrace h;
    h.time = window(p, 60);
    h.values = Eigen::VectorXcd::Zero(60);
    for (double mu : {1e-8, 1e-2}) {
        for (Problem pr : {Problem::ip1, Problem::ip2}) {
            const ReconstructionResult r = lsq_reconstruct(h, p, t, 1, mu, pr);
            CHECK(r.phi_hat.coeffs.norm() == 0.0);
            CHECK(r.f_hat.norm() == 0.0);
            CHECK(r.chi_hat.norm() == 0.0);
            CHECK(r.regularization == mu);
        }
    }
}

TEST_CASE("reconstruction input checks") {
    const ModelParams p = params(0.0, 0.0);
    const ModeTable t = build_mode_table(p, 2);
    FluxTrace h;
    h.time = Eigen::VectorXd::LinSpaced(20, 0.5, 2.0);
    h.values = Eigen::VectorXcd::Zero(20);
    CHECK_THROWS_AS(lsq_reconstruct(h, p, t, 0, 0.0, Problem::ip1), std::invalid_argument);
    h.time = window(p, 20);
    CHECK_THROWS_AS(lsq_reconstruct(h, p, t, 0, 0.0, Problem::ip2), std::invalid_argument);
    CHECK_THROWS_AS(lsq_reconstruct(h, p, t, 0, -1.0, Problem::ip1), std::invalid_argument);
    CHECK(parse_problem("ip2") == Problem::ip2);
    CHECK_THROWS_AS(parse_problem("ip3"), std::invalid_argument);
}

TEST_CASE("conditioning probe") {
    ModelParams p = params(0.0, 0.0);
    const Eigen::VectorXd time = window(p, 100);
    const auto rows = conditioning_probe(p, {0.5, 1.0 / std::sqrt(2.0), 0.75}, 3, 1, time, Problem::ip1);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.sigma_min > 0.0);
    }
    const auto again = conditioning_probe(p, {0.5, 1.0 / std::sqrt(2.0), 0.75}, 3, 1, time, Problem::ip1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].sigma_min == again[i].sigma_min);
        CHECK(rows[i].condition_number == again[i].condition_number);
    }
    // a single unknown: sigma_min is the weighted column norm
    p.alpha = 0.5;
    const auto one = conditioning_probe(p, {0.5}, 1, 0, time, Problem::ip1, Unknowns::initial);
    const ModeTable t = build_mode_table(p, 1);
    const Eigen::MatrixXd A = design_matrix(p, t, 0, time, Problem::ip1, Unknowns::initial);
    const double norm = (trapezoid_weights(time).cwiseSqrt().asDiagonal() * A).norm();
    CHECK(one.front().sigma_min == doctest::Approx(norm).epsilon(1e-12));
}
