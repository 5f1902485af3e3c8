#pragma once

#include "fdinv/modes.hpp"
#include "fdinv/specfun.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace fdinv {

/// Sources on (0, t0) in the monomial time basis:
///   f_k(t) = sum_m f(k-1, m) t^m,  chi_k(t) = sum_m chi(k-1, m) t^m,  both zero for t > t0.
struct SourceSpec {
    int M{0};
    Eigen::MatrixXcd f;    // K x (M + 1)
    Eigen::MatrixXcd chi;  // K x (M + 1)

    static SourceSpec zero(int K, int M);
    int K() const noexcept { return static_cast<int>(f.rows()); }
    void check(int K) const;
};

struct StateTrajectory {
    Eigen::VectorXd time;
    Eigen::MatrixXcd u;  // K x time.size()
    Eigen::MatrixXcd v;
    ModelParams params;
    double c0{0.0};  // empirical constant of the mode estimate on this run
};

struct FluxTrace {
    Eigen::VectorXd time;
    Eigen::VectorXcd values;
};

/// Prabhakar kernels shared by all modes of one (alpha, M):
/// E_{a,1}, E_{a,a}, E_{a,a+m+1}, E^2_{a,a+1}, E^2_{a,2a}, E^2_{a,2a+m+1}, on the negative axis.
class KernelBank {
public:
    KernelBank(double alpha, int M);

    double alpha() const noexcept { return alpha_; }
    int M() const noexcept { return M_; }

    // each returns E(-x) for x >= 0
    double e1(double x) const { return e1_(x); }
    double ea(double x) const { return ea_(x); }
    double eam(int m, double x) const { return eam_[static_cast<std::size_t>(m)](x); }
    double f1(double x) const { return f1_(x); }
    double f2(double x) const { return f2_(x); }
    double f2m(int m, double x) const { return f2m_[static_cast<std::size_t>(m)](x); }

private:
    double alpha_;
    int M_;
    specfun::NegativeAxisEvaluator e1_, ea_, f1_, f2_;
    std::vector<specfun::NegativeAxisEvaluator> eam_, f2m_;
};

/// Everything one mode contributes at one time, before the data are applied:
/// e = E_{a,1}(-lam_breve t^a), q, and the convolutions of the kernels K_breve and w
/// with tau^m over (0, min(t, t0)).
template <class T>
struct ModeResponse {
    T e{};
    T q{};
    std::vector<T> cb;  // (K_breve * tau^m)(t)
    std::vector<T> cw;  // (w * tau^m)(t)
};

/// True when the coalescent (second-order Prabhakar) branch is used for mode m.
bool coalescent(const Mode& m);

/// q_k(z), w_k(z) on the real axis (z >= 0) or in the extension sector.
std::pair<complex, complex> qk_wk(const ModelParams& params, const ModeTable& table, int k, complex z);

/// Real-time response of mode k at t >= 0.
ModeResponse<double> mode_response(const KernelBank& bank, const ModelParams& params, const Mode& mode, double t);

/// Complex-time response; z must lie in the extension sector (or be real and >= 0).
ModeResponse<complex> mode_response(const ModelParams& params, int M, const Mode& mode, complex z);

/// u_k, v_k assembled from a response.
template <class T>
std::pair<complex, complex> combine(const ModelParams& p, const Mode& mode, const ModeResponse<T>& r, complex phi,
                                    complex psi, const Eigen::RowVectorXcd& f, const Eigen::RowVectorXcd& chi) {
    complex u = (complex(r.e) + mode.theta * complex(r.q)) * phi - p.a * complex(r.q) * psi;
    complex v = -p.b * complex(r.q) * phi + (complex(r.e) + mode.zeta * complex(r.q)) * psi;
    for (std::size_t m = 0; m < r.cb.size(); ++m) {
        const Eigen::Index i = static_cast<Eigen::Index>(m);
        const complex cb(r.cb[m]);
        const complex cw(r.cw[m]);
        u += (cb + mode.theta * cw) * f(i) - p.a * cw * chi(i);
        v += -p.b * cw * f(i) + (cb + mode.zeta * cw) * chi(i);
    }
    return {u, v};
}

/// u_k(t), v_k(t) on a time grid.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> mode_solution(const ModelParams& params, const ModeTable& table, int k,
                                                            complex phi_k, complex psi_k, const SourceSpec& src,
                                                            const Eigen::VectorXd& time);

StateTrajectory solve(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                      const SpectralField& psi, const SourceSpec& src, const Eigen::VectorXd& time);

/// h(t) = sum_k gamma_k u_k(t) for the grid points inside (t0, t1).
FluxTrace boundary_flux(const StateTrajectory& traj, const ModeTable& table);

struct ResidualReport {
    double u{0.0};  // max over modes of the discrete L2 norm of the integral-form residual
    double v{0.0};
    double max() const noexcept { return std::max(u, v); }
};

/// Residual of u_k - phi_k = I^a[-(kappa lambda_k + c) u_k - a v_k + f_k] (and its v twin),
/// with I^a discretized by product trapezoid integration on a uniform grid starting at 0.
ResidualReport fractional_residual(const StateTrajectory& traj, const ModelParams& params, const ModeTable& table,
                                   const SpectralField& phi, const SpectralField& psi, const SourceSpec& src);

/// Half-opening of the sector around t0 where the state extends analytically.
double extension_half_angle(double alpha);

/// u_k(z), v_k(z) for z in the extension sector around t0.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> extend_complex(const ModelParams& params, const ModeTable& table,
                                                             const SpectralField& phi, const SpectralField& psi,
                                                             const SourceSpec& src, complex z);

/// c0 * sum_{K < k <= table.K()} |gamma_k| (|phi_k| + |psi_k| + (t^(a-1) * (|f_k| + |chi_k|))(t)),
/// using the monomial majorant sum_m |f_km| t^m for |f_k|.
double flux_tail_bound(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                       const SpectralField& psi, const SourceSpec& src, int K, double c0, double t);

/// (t^(a-1) * sum_m c_m tau^m 1_{tau < t0})(t) for non-negative c_m.
double abel_majorant(double alpha, double t0, const Eigen::VectorXd& c, double t);

/// Gamma(a) I^a[tau^m 1_{tau < t0}](t) = int_0^min(t,t0) (t - tau)^(a-1) tau^m dtau.
double abel_monomial(double alpha, double t0, int m, double t);

}  // namespace fdinv
