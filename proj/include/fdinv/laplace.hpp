#pragma once

#include "fdinv/forward.hpp"
#include "fdinv/modes.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdinv {

class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Which limit to take when s sits on the negative real axis.
enum class Side { principal, upper, lower };

/// F(s) = sum_m coeff_m int_0^t0 e^{-st} t^m dt; entire in s.
complex truncated_transform(const Eigen::RowVectorXcd& coeff, complex s, double t0);

/// Laplace transforms U_k(s), V_k(s) of one mode. For s = -r on the negative axis pass
/// Side::upper or Side::lower to get the one-sided limits.
std::pair<complex, complex> mode_transform(const ModelParams& params, const ModeTable& table, int k, complex phi_k,
                                           complex psi_k, const SourceSpec& src, complex s,
                                           Side side = Side::principal);

/// Model-side data for the jump and branch machinery.
struct JumpContext {
    ModelParams params;
    ModeTable table;
    SpectralField phi;
    SpectralField psi;
    SourceSpec src;
    bool coupled{false};      // false: a = 0 family (two R functions per mode)
    std::vector<complex> poles;  // upper-half poles followed by their conjugates

    static JumpContext build(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                             const SpectralField& psi, const SourceSpec& src);

    int J() const noexcept { return coupled ? 4 : 2; }
};

/// Sum_k U_k(s) gamma_k. Appends a message to `warnings` for each mode with
/// |s^alpha + lam_hat_k| < 1e-8 lambda_k.
complex flux_transform(const JumpContext& ctx, complex s, Side side = Side::principal,
                       std::vector<std::string>* warnings = nullptr);

/// Difference of the upper and lower limits of the flux transform at s = -rho^(1/alpha).
complex jump(const JumpContext& ctx, double rho);

/// R_{k,j}(z), j = 1..J.
complex r_function(const JumpContext& ctx, int k, int j, complex z);

/// G_{k,j}(w), j = 1..J.
complex g_function(const JumpContext& ctx, int k, int j, complex w);

/// sum_k sum_j R_{k,j}(z) G_{k,j}(z^(1/alpha) e^{2 pi i n / alpha}) without the pole-line check.
complex q_series(const JumpContext& ctx, long n, complex z);

/// Branch function Q(n, z); throws PoleError when z lies on the pole lines Arg z = +-pi(1 - alpha).
complex q_branch(const JumpContext& ctx, long n, complex z);

/// True when Arg z is within `tol` of +-pi(1 - alpha).
bool on_pole_lines(double alpha, complex z, double tol = 1e-12);

/// Smallest n in [1, n_max] with |e^{2 pi i n / alpha} - e^{i y}| < eps.
std::optional<long> branch_search(double alpha, double y, double eps, long n_max);

/// Number of distinct points among e^{2 pi i n / alpha}, n = 1..n_max, merged within `tol`.
int orbit_size(double alpha, long n_max, double tol = 1e-9);

}  // namespace fdinv
