#include "fdinv/modes.hpp"

#include "fdinv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fdinv {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNorm = std::sqrt(2.0 / kPi);

double discriminant(const ModelParams& p, double lambda) {
    const double delta = (p.kappa - p.varkappa) * lambda + p.c - p.d;
    return delta * delta + 4.0 * p.a * p.b;
}

[[noreturn]] void reject_discriminant(double lambda, double value) {
    std::ostringstream msg;
    msg << "inadmissible parameters: ((kappa - varkappa) lambda_k + c - d)^2 + 4ab >= 0 fails at lambda = "
        << lambda << " (value " << value << ")";
    throw AdmissibilityError(msg.str());
}

}  // namespace

void ModelParams::validate() const {
    auto fail = [](const std::string& rule) { throw AdmissibilityError("inadmissible parameters: " + rule); };
    const double values[] = {alpha, kappa, varkappa, a, b, c, d, t0, t1};
    for (double v : values) {
        if (!std::isfinite(v)) {
            fail("all parameters must be finite");
        }
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        fail("0 < alpha < 1");
    }
    if (!(kappa > 0.0) || !(varkappa > 0.0)) {
        fail("kappa > 0 and varkappa > 0");
    }
    if (!(c >= 0.0) || !(d >= 0.0)) {
        fail("c >= 0 and d >= 0");
    }
    if (!(a * b <= std::min(c * c, d * d))) {
        fail("ab <= min(c^2, d^2)");
    }
    if (!(t0 > 0.0 && t1 > t0)) {
        fail("0 < t0 < t1");
    }
}

double eigenfunction(int k, double x) { return kNorm * std::sin(k * x); }

ModeTable build_mode_table(const ModelParams& params, int K) {
    params.validate();
    if (K < 1) {
        throw std::invalid_argument("build_mode_table: K must be positive");
    }
    const ModelParams& p = params;
    const double lambda1 = 1.0;
    const double ab = p.a * p.b;

    // the discriminant is a parabola in lambda; its minimum may sit beyond K
    if (p.kappa != p.varkappa) {
        const double lstar = (p.d - p.c) / (p.kappa - p.varkappa);
        if (lstar >= lambda1 && discriminant(p, lstar) < 0.0) {
            reject_discriminant(lstar, discriminant(p, lstar));
        }
    } else if (discriminant(p, lambda1) < 0.0) {
        reject_discriminant(lambda1, discriminant(p, lambda1));
    }

    ModeTable table;
    table.params = p;
    table.c1 = std::min(p.kappa, p.varkappa);
    table.c2 = 0.5 * ((p.kappa + p.varkappa) + (p.c + p.d) / lambda1 +
                      std::sqrt(std::pow(std::abs(p.kappa - p.varkappa) + std::abs(p.c - p.d) / lambda1, 2) +
                                4.0 * std::abs(ab) / (lambda1 * lambda1)));
    table.modes.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        Mode m;
        m.k = k;
        m.lambda = static_cast<double>(k) * k;
        m.gamma_trace = -kNorm * k;
        const double disc = discriminant(p, m.lambda);
        if (disc < 0.0) {
            reject_discriminant(m.lambda, disc);
        }
        const double root = std::sqrt(disc);
        const double delta = (p.kappa - p.varkappa) * m.lambda + p.c - p.d;
        const double sum = (p.kappa + p.varkappa) * m.lambda + p.c + p.d;
        const double product = (p.kappa * m.lambda + p.c) * (p.varkappa * m.lambda + p.d) - ab;
        m.lam_breve = 0.5 * (sum + root);
        m.lam_hat = m.lam_breve > 0.0 ? product / m.lam_breve : 0.5 * (sum - root);
        // theta = (-delta + root)/2 and zeta = (delta + root)/2; form the larger one directly
        if (delta >= 0.0) {
            m.zeta = 0.5 * (delta + root);
            m.theta = m.zeta > 0.0 ? ab / m.zeta : 0.5 * (root - delta);
        } else {
            m.theta = 0.5 * (root - delta);
            m.zeta = ab / m.theta;
        }
        table.modes.push_back(m);
    }
    return table;
}

std::pair<complex, complex> factorization_sides(const ModelParams& p, const Mode& m, complex sa) {
    const complex lhs = (sa + p.kappa * m.lambda + p.c) * (sa + p.varkappa * m.lambda + p.d) - p.a * p.b;
    const complex rhs = (sa + m.lam_breve) * (sa + m.lam_hat);
    return {lhs, rhs};
}

SpectralField analyze(const std::function<complex(double)>& field, int K) {
    if (K < 1) {
        throw std::invalid_argument("analyze: K must be positive");
    }
    const int panels = std::max(8, 2 * K);
    const quad::Rule ref = quad::gauss_legendre(16);
    SpectralField out = SpectralField::zero(K);
    for (int j = 0; j < panels; ++j) {
        const quad::Rule r = quad::mapped(ref, kPi * j / panels, kPi * (j + 1) / panels);
        for (int i = 0; i < r.nodes.size(); ++i) {
            const complex fx = field(r.nodes(i)) * r.weights(i);
            for (int k = 1; k <= K; ++k) {
                out.coeffs(k - 1) += fx * eigenfunction(k, r.nodes(i));
            }
        }
    }
    return out;
}

SpectralField analyze(const Eigen::VectorXcd& samples, int K) {
    if (K < 1) {
        throw std::invalid_argument("analyze: K must be positive");
    }
    const Eigen::Index n = samples.size();
    if (n < 10 * K) {
        std::ostringstream msg;
        msg << "analyze: " << n << " samples cannot resolve " << K << " modes without aliasing (need >= " << 10 * K
            << ")";
        throw std::invalid_argument(msg.str());
    }
    const double h = kPi / static_cast<double>(n - 1);
    SpectralField out = SpectralField::zero(K);
    // trapezoid rule; the sine factor vanishes at both ends
    for (Eigen::Index j = 1; j + 1 < n; ++j) {
        const double x = h * static_cast<double>(j);
        for (int k = 1; k <= K; ++k) {
            out.coeffs(k - 1) += samples(j) * eigenfunction(k, x);
        }
    }
    out.coeffs *= h;
    return out;
}

Eigen::VectorXcd synthesize(const SpectralField& field, const Eigen::VectorXd& x) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (int k = 1; k <= field.K(); ++k) {
            out(i) += field.coeffs(k - 1) * eigenfunction(k, x(i));
        }
    }
    return out;
}

SeparationReport check_separation(const ModeTable& table, double rel_tol) {
    SeparationReport report;
    report.tolerance = rel_tol;
    report.applicable = table.params.a != 0.0;
    if (!report.applicable) {
        return report;
    }
    auto close = [rel_tol](double x, double y) {
        return std::abs(x - y) <= rel_tol * std::max({std::abs(x), std::abs(y), 1.0});
    };
    const int K = table.K();
    for (int k = 1; k <= K; ++k) {
        const Mode& mk = table.mode(k);
        for (int n = 1; n <= K; ++n) {
            if (n == k) {
                continue;
            }
            const Mode& mn = table.mode(n);
            if (k < n && close(mk.lam_breve, mn.lam_breve)) {
                report.violations.push_back({k, n, "breve-breve", std::abs(mk.lam_breve - mn.lam_breve)});
            }
            if (k < n && close(mk.lam_hat, mn.lam_hat)) {
                report.violations.push_back({k, n, "hat-hat", std::abs(mk.lam_hat - mn.lam_hat)});
            }
            if (close(mk.lam_hat, mn.lam_breve)) {
                report.violations.push_back({k, n, "hat-breve", std::abs(mk.lam_hat - mn.lam_breve)});
            }
        }
    }
    return report;
}

}  // namespace fdinv
