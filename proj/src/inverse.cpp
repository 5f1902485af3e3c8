#include "fdinv/inverse.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fdinv {

namespace {

constexpr double kPi = std::numbers::pi;

complex rotation(double alpha, long n) {
    const double x = static_cast<double>(n) / alpha;
    return std::polar(1.0, 2.0 * kPi * (x - std::floor(x)));
}

complex branch_point(double alpha, complex z, long branch) {
    return specfun::principal_power(z, 1.0 / alpha) * rotation(alpha, branch);
}

// (1/2 pi i) closed integral of (z - centre)^power Q(branch, z) on a circle, trapezoid rule
complex circle_moment(const JumpContext& ctx, complex centre, double radius, int nodes, long branch, int power) {
    complex sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const complex e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / nodes);
        const complex dz = radius * e;
        sum += q_series(ctx, branch, centre + dz) * dz * std::pow(dz, power);
    }
    return sum / static_cast<double>(nodes);
}

double relative(complex got, complex want) {
    const double diff = std::abs(got - want);
    if (diff == 0.0) {
        return 0.0;
    }
    return diff / std::max(std::abs(want), std::numeric_limits<double>::min());
}

double pick_radius(const JumpContext& ctx, complex pole, const ResidueOptions& opt) {
    const double automatic = residue_radius(ctx, pole);
    if (opt.radius <= 0.0) {
        return automatic;
    }
    double gap = std::numeric_limits<double>::infinity();
    for (const complex& p : ctx.poles) {
        const double dist = std::abs(p - pole);
        if (dist > 1e-12 * std::abs(pole)) {
            gap = std::min(gap, dist);
        }
    }
    if (opt.radius >= gap || opt.radius >= std::abs(pole)) {
        std::ostringstream msg;
        msg << "residue contour of radius " << opt.radius << " around " << pole
            << " reaches another singularity; suggested radius " << automatic;
        throw std::domain_error(msg.str());
    }
    return opt.radius;
}

// d/dw of the entire G functions: d/dw T_m(-w) = T_{m+1}(-w)
complex dg_source(const Eigen::RowVectorXcd& coeff, complex w, double t0) {
    complex sum = 0.0;
    for (Eigen::Index m = 0; m < coeff.size(); ++m) {
        if (coeff(m) != complex(0.0, 0.0)) {
            sum += coeff(m) * specfun::truncated_monomial_laplace(static_cast<int>(m) + 1, -w, t0);
        }
    }
    return sum;
}

}  // namespace

double residue_radius(const JumpContext& ctx, complex pole) {
    const double alpha = ctx.params.alpha;
    const double mod = std::abs(pole);
    double r = 0.4 * mod;
    for (const complex& p : ctx.poles) {
        const double dist = std::abs(p - pole);
        if (dist > 1e-12 * mod) {
            r = std::min(r, 0.4 * dist);
        }
    }
    // stay clear of the cut of z^(1/alpha) along the negative axis
    const double to_cut = alpha < 0.5 ? mod * std::sin(kPi * alpha) : mod;
    r = std::min(r, 0.4 * to_cut);
    // limit the growth of e^{w t} across the circle, w = z^(1/alpha)
    const double speed = std::pow(mod, 1.0 / alpha - 1.0) / alpha;
    r = std::min(r, 3.0 / (speed * ctx.params.t0));
    return r;
}

ResidueReport residue_ip1(const JumpContext& ctx, int n, const ResidueOptions& opt) {
    if (ctx.coupled) {
        throw std::invalid_argument("residue_ip1: needs a = 0");
    }
    if (opt.nodes < 64) {
        throw std::invalid_argument("residue_ip1: at least 64 nodes");
    }
    const ModelParams& p = ctx.params;
    const Mode& mode = ctx.table.mode(n);
    const complex em = std::polar(1.0, -kPi * p.alpha);
    ResidueReport rep;
    rep.mode = n;
    rep.pole = -em * (p.kappa * mode.lambda + p.c);
    rep.radius = pick_radius(ctx, rep.pole, opt);
    rep.nodes = opt.nodes;
    rep.contour_value = circle_moment(ctx, rep.pole, rep.radius, opt.nodes, opt.branch, 0);
    const complex w = branch_point(p.alpha, rep.pole, opt.branch);
    rep.closed_form = em * g_function(ctx, n, 1, w) + rep.pole * g_function(ctx, n, 2, w);
    rep.rel_error = relative(rep.contour_value, rep.closed_form);
    return rep;
}

complex coupled_relation(const JumpContext& ctx, int n, double root, complex w) {
    const ModelParams& p = ctx.params;
    const Mode& mode = ctx.table.mode(n);
    const double t0 = p.t0;
    const complex F = truncated_transform(ctx.src.f.row(n - 1), -w, t0);
    const complex X = truncated_transform(ctx.src.chi.row(n - 1), -w, t0);
    const complex phi = ctx.phi.coeffs(n - 1);
    const complex psi = ctx.psi.coeffs(n - 1);
    return (p.varkappa * mode.lambda + p.d - root) * (F + root * phi / w) - p.a * (X + root * psi / w);
}

Ip2Residues residue_ip2(const JumpContext& ctx, int n, const ResidueOptions& opt, const std::vector<long>& branches) {
    if (!ctx.coupled) {
        throw std::invalid_argument("residue_ip2: needs a != 0");
    }
    if (opt.nodes < 64) {
        throw std::invalid_argument("residue_ip2: at least 64 nodes");
    }
    const SeparationReport sep = check_separation(ctx.table);
    if (!sep.holds()) {
        const SeparationViolation& v = sep.violations.front();
        std::ostringstream msg;
        msg << "residue_ip2: separation condition fails for modes (" << v.k << ", " << v.n << "), " << v.kind;
        throw std::domain_error(msg.str());
    }
    const ModelParams& p = ctx.params;
    const Mode& mode = ctx.table.mode(n);
    const double a = p.alpha;
    const complex em = std::polar(1.0, -kPi * a);
    const double gamma = mode.gamma_trace;
    const double lb = mode.lam_breve;
    const double lh = mode.lam_hat;
    const double shift = p.varkappa * mode.lambda + p.d;

    Ip2Residues out;
    out.double_pole = coalescent(mode);
    out.system << shift - lb, -p.a, shift - lh, -p.a;
    out.determinant = out.system.determinant();
    out.branches = branches;

    auto report = [&](double root, int power) {
        ResidueReport rep;
        rep.mode = n;
        rep.pole = -em * root;
        rep.radius = pick_radius(ctx, rep.pole, opt);
        rep.nodes = opt.nodes;
        rep.contour_value = circle_moment(ctx, rep.pole, rep.radius, opt.nodes, opt.branch, power);
        return rep;
    };

    double violation = 0.0;
    auto track = [&](complex recovered, complex direct, double scale) {
        const double diff = std::abs(recovered - direct);
        violation = std::max(violation, scale > 0.0 ? diff / std::max(std::abs(direct), scale) : diff);
    };
    // magnitude of the terms of a relation, to judge relative size when it nearly cancels
    auto relation_scale = [&](double root, complex w) {
        const complex F = truncated_transform(ctx.src.f.row(n - 1), -w, p.t0);
        const complex X = truncated_transform(ctx.src.chi.row(n - 1), -w, p.t0);
        return 1e-3 * (std::abs(shift - root) * (std::abs(F) + std::abs(root * ctx.phi.coeffs(n - 1) / w)) +
                       std::abs(p.a) * (std::abs(X) + std::abs(root * ctx.psi.coeffs(n - 1) / w)));
    };

    if (!out.double_pole) {
        out.breve = report(lb, 0);
        out.hat = report(lh, 0);
        const complex wb = branch_point(a, out.breve.pole, opt.branch);
        const complex wh = branch_point(a, out.hat.pole, opt.branch);
        out.breve.closed_form = em * gamma * coupled_relation(ctx, n, lb, wb) / (lh - lb);
        out.hat.closed_form = em * gamma * coupled_relation(ctx, n, lh, wh) / (lb - lh);
        out.breve.rel_error = relative(out.breve.contour_value, out.breve.closed_form);
        out.hat.rel_error = relative(out.hat.contour_value, out.hat.closed_form);
        for (long b : branches) {
            ResidueOptions o = opt;
            o.branch = b;
            const complex zb = out.breve.pole;
            const complex zh = out.hat.pole;
            const complex rb = circle_moment(ctx, zb, out.breve.radius, o.nodes, b, 0) * (lh - lb) / (em * gamma);
            const complex rh = circle_moment(ctx, zh, out.hat.radius, o.nodes, b, 0) * (lb - lh) / (em * gamma);
            const complex wbb = branch_point(a, zb, b);
            const complex whb = branch_point(a, zh, b);
            track(rb, coupled_relation(ctx, n, lb, wbb), relation_scale(lb, wbb));
            track(rh, coupled_relation(ctx, n, lh, whb), relation_scale(lh, whb));
        }
    } else {
        // double pole: second-order moment gives the relation, first-order the derivative terms
        out.breve = report(lb, 1);
        out.hat = report(lb, 0);
        const complex e2 = em * em;
        const complex zn = out.breve.pole;
        const complex w = branch_point(a, zn, opt.branch);
        out.breve.closed_form = e2 * gamma * coupled_relation(ctx, n, lb, w);

        const double delta = shift - lb;
        const complex A[4] = {e2 * delta, -e2 * lb * delta, -e2 * p.a, e2 * p.a * lb};
        const complex B[4] = {em, em * (delta - lb), 0.0, -em * p.a};
        const complex G[4] = {g_function(ctx, n, 1, w), g_function(ctx, n, 2, w), g_function(ctx, n, 3, w),
                              g_function(ctx, n, 4, w)};
        const complex dG[4] = {gamma * dg_source(ctx.src.f.row(n - 1), w, p.t0),
                               ctx.phi.coeffs(n - 1) * gamma / (w * w),
                               gamma * dg_source(ctx.src.chi.row(n - 1), w, p.t0),
                               ctx.psi.coeffs(n - 1) * gamma / (w * w)};
        const complex dw = w / (a * zn);
        complex simple = 0.0;
        for (int j = 0; j < 4; ++j) {
            simple += B[j] * G[j] + A[j] * dG[j] * dw;
        }
        out.hat.closed_form = simple;
        out.breve.rel_error = relative(out.breve.contour_value, out.breve.closed_form);
        out.hat.rel_error = relative(out.hat.contour_value, out.hat.closed_form);
        for (long b : branches) {
            const complex rec = circle_moment(ctx, zn, out.breve.radius, opt.nodes, b, 1) / (e2 * gamma);
            const complex wb = branch_point(a, zn, b);
            track(rec, coupled_relation(ctx, n, lb, wb), relation_scale(lb, wb));
        }
    }
    out.relation_violation = violation;
    return out;
}

Problem parse_problem(const std::string& name) {
    if (name == "ip1" || name == "IP1") {
        return Problem::ip1;
    }
    if (name == "ip2" || name == "IP2") {
        return Problem::ip2;
    }
    throw std::invalid_argument("unknown problem '" + name + "' (expected ip1 or ip2)");
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& time) {
    const Eigen::Index n = time.size();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    if (n == 1) {
        w(0) = 1.0;
        return w;
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double h = time(i + 1) - time(i);
        w(i) += 0.5 * h;
        w(i + 1) += 0.5 * h;
    }
    return w;
}

Eigen::MatrixXd design_matrix(const ModelParams& params, const ModeTable& table, int M, const Eigen::VectorXd& time,
                              Problem problem, Unknowns unknowns) {
    params.validate();
    const int K = table.K();
    const bool init = unknowns != Unknowns::source;
    const bool source = unknowns != Unknowns::initial;
    const int per_field = (init ? K : 0) + (source ? K * (M + 1) : 0);
    const int fields = problem == Problem::ip2 ? 2 : 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(time.size(), fields * per_field);
    const KernelBank bank(params.alpha, M);
    for (Eigen::Index i = 0; i < time.size(); ++i) {
        for (int k = 1; k <= K; ++k) {
            const Mode& mode = table.mode(k);
            const ModeResponse<double> r = mode_response(bank, params, mode, time(i));
            const double g = mode.gamma_trace;
            int col = 0;
            if (init) {
                A(i, col + k - 1) = g * (r.e + mode.theta * r.q);
                col += K;
            }
            if (source) {
                for (int m = 0; m <= M; ++m) {
                    A(i, col + (k - 1) * (M + 1) + m) = g * (r.cb[m] + mode.theta * r.cw[m]);
                }
                col += K * (M + 1);
            }
            if (problem == Problem::ip2) {
                if (init) {
                    A(i, col + k - 1) = -params.a * g * r.q;
                    col += K;
                }
                if (source) {
                    for (int m = 0; m <= M; ++m) {
                        A(i, col + (k - 1) * (M + 1) + m) = -params.a * g * r.cw[m];
                    }
                }
            }
        }
    }
    return A;
}

ReconstructionResult lsq_reconstruct(const FluxTrace& data, const ModelParams& params, const ModeTable& table, int M,
                                     double mu, Problem problem) {
    if (!(mu >= 0.0)) {
        throw std::invalid_argument("lsq_reconstruct: regularization must be >= 0");
    }
    if (M < 0) {
        throw std::invalid_argument("lsq_reconstruct: M must be >= 0");
    }
    const Eigen::Index n = data.time.size();
    if (n == 0 || data.values.size() != n) {
        throw std::invalid_argument("lsq_reconstruct: empty or inconsistent data");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(data.time(i) > params.t0 && data.time(i) < params.t1)) {
            throw std::invalid_argument("lsq_reconstruct: data times must lie in (t0, t1)");
        }
    }
    ReconstructionResult res;
    res.regularization = mu;
    if (problem == Problem::ip2) {
        const SeparationReport sep = check_separation(table);
        if (!sep.applicable) {
            throw std::invalid_argument("lsq_reconstruct: IP2 needs a != 0");
        }
        if (!sep.holds()) {
            const SeparationViolation& v = sep.violations.front();
            std::ostringstream msg;
            msg << "lsq_reconstruct: separation condition fails for modes (" << v.k << ", " << v.n << "), " << v.kind;
            throw std::domain_error(msg.str());
        }
    } else if (params.a != 0.0) {
        res.warnings.push_back("IP1 with a != 0: psi and chi are taken to be zero");
    }

    const int K = table.K();
    const Eigen::MatrixXd A = design_matrix(params, table, M, data.time, problem);
    const Eigen::Index cols = A.cols();
    res.unknowns = static_cast<int>(cols);
    if (cols > 4 * n) {
        res.warnings.push_back("more than four unknowns per sample");
    }
    const Eigen::VectorXd sw = trapezoid_weights(data.time).cwiseSqrt();
    const Eigen::MatrixXd WA = sw.asDiagonal() * A;

    Eigen::VectorXd scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double norm = WA.col(j).norm();
        scale(j) = norm > 0.0 ? 1.0 / norm : 1.0;
    }
    Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(n + (mu > 0.0 ? cols : 0), cols);
    stacked.topRows(n) = WA * scale.asDiagonal();
    if (mu > 0.0) {
        stacked.bottomRows(cols) = std::sqrt(mu) * Eigen::MatrixXd(scale.asDiagonal());
    }
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(stacked.rows(), 2);
    rhs.col(0).head(n) = sw.cwiseProduct(data.values.real());
    rhs.col(1).head(n) = sw.cwiseProduct(data.values.imag());

    {
        const Eigen::JacobiSVD<Eigen::MatrixXd> raw(WA);
        const Eigen::VectorXd sv = raw.singularValues();
        res.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                        : std::numeric_limits<double>::infinity();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double tol = static_cast<double>(std::max(stacked.rows(), cols)) * std::numeric_limits<double>::epsilon() *
                       (sv.size() > 0 ? sv(0) : 0.0);
    svd.setThreshold(tol / std::max(sv(0), std::numeric_limits<double>::min()));
    res.numerical_rank = static_cast<int>(svd.rank());
    {
        const Eigen::JacobiSVD<Eigen::MatrixXd> eq(WA * scale.asDiagonal());
        const Eigen::VectorXd s = eq.singularValues();
        res.equilibrated_condition =
            s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
    }
    if (res.numerical_rank < cols) {
        std::ostringstream msg;
        msg << "rank deficient design: numerical rank " << res.numerical_rank << " of " << cols;
        res.warnings.push_back(msg.str());
    }
    const Eigen::MatrixXd y = svd.solve(rhs);
    const Eigen::MatrixXd x = scale.asDiagonal() * y;
    Eigen::VectorXcd coef(cols);
    coef.real() = x.col(0);
    coef.imag() = x.col(1);

    const Eigen::VectorXcd misfit = A.cast<complex>() * coef - data.values;
    res.residual_norm = std::sqrt((sw.array().square() * misfit.array().abs2()).sum());

    res.phi_hat = SpectralField::zero(K);
    res.psi_hat = SpectralField::zero(K);
    res.f_hat = Eigen::MatrixXcd::Zero(K, M + 1);
    res.chi_hat = Eigen::MatrixXcd::Zero(K, M + 1);
    Eigen::Index col = 0;
    auto unpack = [&](SpectralField& init, Eigen::MatrixXcd& src) {
        init.coeffs = coef.segment(col, K);
        col += K;
        for (int k = 0; k < K; ++k) {
            src.row(k) = coef.segment(col + k * (M + 1), M + 1).transpose();
        }
        col += K * (M + 1);
    };
    unpack(res.phi_hat, res.f_hat);
    if (problem == Problem::ip2) {
        unpack(res.psi_hat, res.chi_hat);
    }
    return res;
}

std::vector<ConditioningRow> conditioning_probe(const ModelParams& params, const std::vector<double>& alphas, int K,
                                                int M, const Eigen::VectorXd& time, Problem problem,
                                                Unknowns unknowns) {
    std::vector<ConditioningRow> rows;
    const Eigen::VectorXd sw = trapezoid_weights(time).cwiseSqrt();
    for (double alpha : alphas) {
        ModelParams p = params;
        p.alpha = alpha;
        const ModeTable table = build_mode_table(p, K);
        const Eigen::MatrixXd WA = sw.asDiagonal() * design_matrix(p, table, M, time, problem, unknowns);
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(WA);
        const Eigen::VectorXd s = svd.singularValues();
        const double smin = s(s.size() - 1);
        rows.push_back({alpha, smin, s(0), smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity()});
    }
    return rows;
}

}  // namespace fdinv
