#pragma once

#include "fdinv/forward.hpp"
#include "fdinv/laplace.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace fdinv {

struct ResidueReport {
    int mode{0};
    complex pole;
    complex contour_value;
    complex closed_form;
    double rel_error{0.0};
    double radius{0.0};
    int nodes{0};
};

struct ResidueOptions {
    double radius{0.0};  // 0 picks the radius automatically
    int nodes{128};
    long branch{0};      // evaluates Q(branch, z) on the circle
};

/// Residue of Q(branch, z) at z_n = -e^{-i pi alpha}(kappa lambda_n + c), by the trapezoid rule on a
/// circle, against e^{-i pi alpha} G_{n,1}(w) + z_n G_{n,2}(w), w = z_n^(1/alpha) e^{2 pi i branch / alpha}.
/// Needs a = 0.
ResidueReport residue_ip1(const JumpContext& ctx, int n, const ResidueOptions& opt = {});

struct Ip2Residues {
    ResidueReport breve;  // at z_n = -e^{-i pi alpha} lam_breve_n; coalescent: second-order moment
    ResidueReport hat;    // at -e^{-i pi alpha} lam_hat_n; coalescent: simple residue of the double pole
    bool double_pole{false};
    Eigen::Matrix2d system;  // rows (varkappa lambda_n + d - lam_breve_n, -a), (varkappa lambda_n + d - lam_hat_n, -a)
    double determinant{0.0};
    double relation_violation{0.0};  // relations recovered from the residues vs their direct evaluation
    std::vector<long> branches;      // branches sampled for the relations
};

/// Residues at both coupled poles of mode n and the two scalar relations they carry.
/// Throws std::domain_error when the separation condition fails up to K.
Ip2Residues residue_ip2(const JumpContext& ctx, int n, const ResidueOptions& opt = {},
                        const std::vector<long>& branches = {0, 1, 2});

/// (varkappa lambda + d - root)(F(-w) + root phi / w) - a (X(-w) + root psi / w) for root = lam_breve or lam_hat.
complex coupled_relation(const JumpContext& ctx, int n, double root, complex w);

/// Automatic contour radius around `pole`.
double residue_radius(const JumpContext& ctx, complex pole);

enum class Problem { ip1, ip2 };
enum class Unknowns { both, initial, source };

Problem parse_problem(const std::string& name);

/// Columns phi_1..phi_K, f_{1,0..M}, ..., f_{K,0..M}; IP2 appends psi and chi in the same layout.
/// Unknowns::initial keeps only the phi (psi) blocks, Unknowns::source only the f (chi) blocks.
Eigen::MatrixXd design_matrix(const ModelParams& params, const ModeTable& table, int M, const Eigen::VectorXd& time,
                              Problem problem, Unknowns unknowns = Unknowns::both);

/// Trapezoid weights of a (possibly non-uniform) grid.
Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& time);

struct ReconstructionResult {
    SpectralField phi_hat;
    SpectralField psi_hat;
    Eigen::MatrixXcd f_hat;    // K x (M + 1)
    Eigen::MatrixXcd chi_hat;  // zero for IP1
    double residual_norm{0.0};
    double condition_number{0.0};          // weighted design matrix
    double equilibrated_condition{0.0};    // after column scaling
    double regularization{0.0};
    int numerical_rank{0};
    int unknowns{0};
    std::vector<std::string> warnings;
};

/// Tikhonov least squares with trapezoid-weighted misfit, solved by SVD of the stacked,
/// column-equilibrated system.
ReconstructionResult lsq_reconstruct(const FluxTrace& data, const ModelParams& params, const ModeTable& table, int M,
                                     double mu, Problem problem);

struct ConditioningRow {
    double alpha;
    double sigma_min;
    double sigma_max;
    double condition_number;
};

/// Exploratory: extreme singular values of the weighted design matrix for each alpha.
std::vector<ConditioningRow> conditioning_probe(const ModelParams& params, const std::vector<double>& alphas, int K,
                                                int M, const Eigen::VectorXd& time, Problem problem,
                                                Unknowns unknowns = Unknowns::both);

}  // namespace fdinv
