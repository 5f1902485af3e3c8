#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdinv {

using complex = std::complex<double>;

/// Scalar data of the coupled system
///   D^alpha u = kappa u_xx - c u - a v + f,   D^alpha v = varkappa v_xx - d v - b u + chi
/// on (0, pi) with Dirichlet conditions, sources switched off after t0 and flux
/// observed on (t0, t1).
struct ModelParams {
    double alpha{0.5};
    double kappa{1.0};
    double varkappa{1.0};
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double d{0.0};
    double t0{1.0};
    double t1{2.0};

    /// Checks everything except the per-mode discriminant; throws AdmissibilityError.
    void validate() const;
};

/// Names the violated inequality in what().
class AdmissibilityError : public std::invalid_argument {
public:
    explicit AdmissibilityError(const std::string& what) : std::invalid_argument(what) {}
};

struct Mode {
    int k{1};
    double lambda{1.0};       // k^2
    double gamma_trace{0.0};  // normal derivative of the eigenfunction at x = 0
    double lam_breve{0.0};
    double lam_hat{0.0};
    double theta{0.0};
    double zeta{0.0};
    int multiplicity{1};
};

struct ModeTable {
    ModelParams params;
    std::vector<Mode> modes;  // modes[k - 1]
    double c1{0.0};
    double c2{0.0};

    int K() const noexcept { return static_cast<int>(modes.size()); }
    const Mode& mode(int k) const { return modes.at(static_cast<std::size_t>(k - 1)); }
};

/// Eigenvalues, traces, coupled roots and coupling weights for k = 1..K.
ModeTable build_mode_table(const ModelParams& params, int K);

/// sqrt(2/pi) sin(kx)
double eigenfunction(int k, double x);

struct SpectralField {
    Eigen::VectorXcd coeffs;  // coeffs(k - 1)

    static SpectralField zero(int K) { return {Eigen::VectorXcd::Zero(K)}; }
    int K() const noexcept { return static_cast<int>(coeffs.size()); }
};

/// Sine coefficients of a function on (0, pi) by composite Gauss-Legendre quadrature.
SpectralField analyze(const std::function<complex(double)>& field, int K);

/// Sine coefficients from samples on the uniform grid x_j = j pi / (n - 1), j = 0..n-1.
/// Throws std::invalid_argument when n < 10 K (aliasing).
SpectralField analyze(const Eigen::VectorXcd& samples, int K);

Eigen::VectorXcd synthesize(const SpectralField& field, const Eigen::VectorXd& x);

struct SeparationViolation {
    int k;
    int n;
    std::string kind;  // "breve-breve", "hat-hat" or "hat-breve" (lam_hat_k vs lam_breve_n)
    double gap;
};

struct SeparationReport {
    bool applicable{true};  // false when a = 0
    double tolerance{1e-9};
    std::vector<SeparationViolation> violations;

    bool holds() const noexcept { return violations.empty(); }
};

/// Pairwise scan of the coupled roots for collisions between distinct modes.
SeparationReport check_separation(const ModeTable& table, double rel_tol = 1e-9);

/// (s^alpha + kappa lambda + c)(s^alpha + varkappa lambda + d) - ab and the factored
/// form (s^alpha + lam_breve)(s^alpha + lam_hat), both evaluated at s^alpha = sa.
std::pair<complex, complex> factorization_sides(const ModelParams& p, const Mode& m, complex sa);

}  // namespace fdinv
