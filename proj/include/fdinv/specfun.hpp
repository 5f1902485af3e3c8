#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdinv::specfun {

using complex = std::complex<double>;

/// Relative accuracy the Prabhakar evaluator aims for.
inline constexpr double kTargetAccuracy = 1e-10;

/// Parameters of the three-parameter Mittag-Leffler (Prabhakar) function
/// E^gamma_{alpha,beta}(z) = sum_n (gamma)_n z^n / (n! Gamma(alpha n + beta)).
///
/// alpha = 1 is accepted so that the exponential special case can be checked.
struct PrabhakarParams {
    double alpha{0.5};
    double beta{1.0};
    double gamma{1.0};

    void validate() const;
};

/// Raised when an evaluation branch fails to converge.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

struct Evaluation {
    complex value;
    double error_estimate{0.0};  // relative
    bool target_met{true};
};

/// |z|^beta exp(i beta Arg z) with Arg z in (-pi, pi].
complex principal_power(complex z, double beta);

/// 1 / Gamma(x); zero at the poles of Gamma.
double rgamma(double x);

/// Prabhakar function with an error estimate. Small |z| uses the Taylor
/// series; elsewhere the Laplace transform s^(alpha gamma - beta) / (s^alpha - z)^gamma
/// is inverted on an optimal parabolic contour, with the residues of poles
/// to the right of the contour added explicitly.
Evaluation prabhakar_eval(const PrabhakarParams& p, complex z);

/// Value only. Throws AccuracyError if the evaluation could not reach 1e-6.
complex prabhakar(const PrabhakarParams& p, complex z);

inline complex mittag_leffler(double alpha, double beta, complex z) {
    return prabhakar({alpha, beta, 1.0}, z);
}

/// E^gamma_{alpha,beta}(-x), x >= 0, from a parabolic contour fixed at construction.
/// On the negative axis the transform has no poles in the principal sheet, so one
/// node set serves every x. Immutable; cheap to call repeatedly.
class NegativeAxisEvaluator {
public:
    explicit NegativeAxisEvaluator(const PrabhakarParams& p);
    double operator()(double x) const;
    const PrabhakarParams& params() const noexcept { return p_; }

private:
    PrabhakarParams p_;
    int int_gamma_{0};  // 0 when gamma is not an integer
    std::vector<complex> s_alpha_;
    std::vector<complex> weight_;
};

struct DecaySample {
    double radius;
    double angle;  // Arg of z where E(-z) was sampled
    double magnitude;
};

struct DecayReport {
    double fitted_exponent;
    double c_theta;  // smallest c with |E(-z)| <= c / (1 + |z|)^gamma on the samples
    std::vector<DecaySample> samples;
};

/// Samples |E^gamma_{alpha,beta}(-z)| on `rays` rays |Arg z| <= theta at each radius.
/// The exponent is fitted on the upper half of the positive radii.
DecayReport sector_decay_report(const PrabhakarParams& p, double theta, std::span<const double> radii,
                                int rays = 9);

/// |int_0^t_cut e^{-st} t^{beta-1} E^gamma_{alpha,beta}(-lambda t^alpha) dt
///   - s^{alpha gamma - beta} / (s^alpha + lambda)^gamma|.
/// Throws std::domain_error when the bound on the neglected tail exceeds the
/// quadrature tolerance.
double laplace_identity_residual(const PrabhakarParams& p, double lambda, complex s, double t_cut);

/// int_0^t0 e^{-st} t^m dt for any complex s (entire in s).
complex truncated_monomial_laplace(int m, complex s, double t0);

struct IdentityCheck {
    std::string name;
    int points{0};
    double max_error{0.0};  // relative unless noted in the name
    double tolerance{0.0};
    bool pass() const noexcept { return max_error <= tolerance; }
};

/// Closed-form special cases, derivative identities against finite differences,
/// and the value at the origin.
std::vector<IdentityCheck> identity_suite();

}  // namespace fdinv::specfun
