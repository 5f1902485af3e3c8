#include "fdinv/forward.hpp"

#include "fdinv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fdinv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNodes = 16;

using specfun::PrabhakarParams;

const quad::Rule& legendre() {
    static const quad::Rule rule = quad::gauss_legendre(kNodes);
    return rule;
}

double factorial(int m) { return std::tgamma(m + 1.0); }

double coalescence_threshold(const Mode& m) { return 1e-6 * std::max(m.lam_breve, 1.0); }

// Composite Gauss-Legendre over [0, t0] refined towards `focus` with first panel `first`;
// calls visit(tau, weight) once per node.
template <class Visit>
void graded_rule(double t0, double focus, double first, Visit&& visit) {
    const quad::Rule& ref = legendre();
    first = std::clamp(first, 1e-14 * t0, t0);
    for (const auto& [lo, hi] : quad::graded_panels(0.0, t0, focus, first)) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (int i = 0; i < kNodes; ++i) {
            visit(mid + half * ref.nodes(i), half * ref.weights(i));
        }
    }
}

complex cpow(complex z, double e) { return specfun::principal_power(z, e); }

complex ml(double alpha, double beta, double gamma, complex x) {
    return specfun::prabhakar(PrabhakarParams{alpha, beta, gamma}, x);
}

void check_grid(const Eigen::VectorXd& time) {
    for (Eigen::Index i = 0; i < time.size(); ++i) {
        if (!(time(i) >= 0.0) || !std::isfinite(time(i))) {
            throw std::invalid_argument("time grid must be finite and non-negative");
        }
        if (i > 0 && !(time(i) > time(i - 1))) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
}

}  // namespace

SourceSpec SourceSpec::zero(int K, int M) {
    if (K < 1 || M < 0) {
        throw std::invalid_argument("SourceSpec: need K >= 1 and M >= 0");
    }
    return {M, Eigen::MatrixXcd::Zero(K, M + 1), Eigen::MatrixXcd::Zero(K, M + 1)};
}

void SourceSpec::check(int K) const {
    if (f.rows() != K || chi.rows() != K || f.cols() != M + 1 || chi.cols() != M + 1) {
        std::ostringstream msg;
        msg << "SourceSpec: coefficient tables must be " << K << " x " << M + 1;
        throw std::invalid_argument(msg.str());
    }
    if (!f.allFinite() || !chi.allFinite()) {
        throw std::invalid_argument("SourceSpec: non-finite coefficient");
    }
}

KernelBank::KernelBank(double alpha, int M)
    : alpha_(alpha),
      M_(M),
      e1_({alpha, 1.0, 1.0}),
      ea_({alpha, alpha, 1.0}),
      f1_({alpha, alpha + 1.0, 2.0}),
      f2_({alpha, 2.0 * alpha, 2.0}) {
    if (M < 0) {
        throw std::invalid_argument("KernelBank: M must be >= 0");
    }
    for (int m = 0; m <= M; ++m) {
        eam_.emplace_back(PrabhakarParams{alpha, alpha + m + 1.0, 1.0});
        f2m_.emplace_back(PrabhakarParams{alpha, 2.0 * alpha + m + 1.0, 2.0});
    }
}

bool coalescent(const Mode& m) { return std::abs(m.lam_breve - m.lam_hat) <= coalescence_threshold(m); }

ModeResponse<double> mode_response(const KernelBank& bank, const ModelParams& p, const Mode& mode, double t) {
    const int M = bank.M();
    const double a = p.alpha;
    const double lb = mode.lam_breve;
    const double lh = mode.lam_hat;
    const bool coal = coalescent(mode);
    const double gap = lb - lh;
    ModeResponse<double> r;
    r.cb.assign(static_cast<std::size_t>(M + 1), 0.0);
    r.cw.assign(static_cast<std::size_t>(M + 1), 0.0);
    if (t == 0.0) {
        r.e = 1.0;
        return r;
    }
    const double ta = std::pow(t, a);
    r.e = bank.e1(lb * ta);
    r.q = coal ? ta * bank.f1(lb * ta) : (bank.e1(lh * ta) - r.e) / gap;

    if (t <= p.t0) {
        for (int m = 0; m <= M; ++m) {
            const double scale = factorial(m) * std::pow(t, a + m);
            const double kb = bank.eam(m, lb * ta);
            r.cb[m] = scale * kb;
            r.cw[m] = coal ? scale * ta * bank.f2m(m, lb * ta) : scale * (bank.eam(m, lh * ta) - kb) / gap;
        }
        return r;
    }
    graded_rule(p.t0, p.t0, t - p.t0, [&](double tau, double w) {
        const double s = t - tau;
        const double sa = std::pow(s, a);
        const double kb_e = bank.ea(lb * sa);
        const double kb = sa / s * kb_e;
        const double kw = coal ? sa * sa / s * bank.f2(lb * sa) : sa / s * (bank.ea(lh * sa) - kb_e) / gap;
        double tm = w;
        for (int m = 0; m <= M; ++m) {
            r.cb[m] += kb * tm;
            r.cw[m] += kw * tm;
            tm *= tau;
        }
    });
    return r;
}

ModeResponse<complex> mode_response(const ModelParams& p, int M, const Mode& mode, complex z) {
    const double a = p.alpha;
    const double lb = mode.lam_breve;
    const double lh = mode.lam_hat;
    const bool coal = coalescent(mode);
    const double gap = lb - lh;
    ModeResponse<complex> r;
    r.cb.assign(static_cast<std::size_t>(M + 1), 0.0);
    r.cw.assign(static_cast<std::size_t>(M + 1), 0.0);
    if (z == complex(0.0, 0.0)) {
        r.e = 1.0;
        return r;
    }
    const complex za = cpow(z, a);
    r.e = ml(a, 1.0, 1.0, -lb * za);
    r.q = coal ? za * ml(a, a + 1.0, 2.0, -lb * za) : (ml(a, 1.0, 1.0, -lh * za) - r.e) / gap;

    if (z.imag() == 0.0 && z.real() <= p.t0) {
        for (int m = 0; m <= M; ++m) {
            const complex scale = factorial(m) * cpow(z, a + m);
            const complex kb = ml(a, a + m + 1.0, 1.0, -lb * za);
            r.cb[m] = scale * kb;
            r.cw[m] = coal ? scale * za * ml(a, 2.0 * a + m + 1.0, 2.0, -lb * za)
                           : scale * (ml(a, a + m + 1.0, 1.0, -lh * za) - kb) / gap;
        }
        return r;
    }
    const double focus = std::clamp(z.real(), 0.0, p.t0);
    graded_rule(p.t0, focus, std::abs(z - focus), [&](double tau, double w) {
        const complex s = z - tau;
        const complex sa = cpow(s, a);
        const complex kb_e = ml(a, a, 1.0, -lb * sa);
        const complex kb = sa / s * kb_e;
        const complex kw = coal ? sa * sa / s * ml(a, 2.0 * a, 2.0, -lb * sa)
                                : sa / s * (ml(a, a, 1.0, -lh * sa) - kb_e) / gap;
        double tm = w;
        for (int m = 0; m <= M; ++m) {
            r.cb[m] += kb * tm;
            r.cw[m] += kw * tm;
            tm *= tau;
        }
    });
    return r;
}

std::pair<complex, complex> qk_wk(const ModelParams& p, const ModeTable& table, int k, complex z) {
    const Mode& mode = table.mode(k);
    const double a = p.alpha;
    const double lb = mode.lam_breve;
    const double lh = mode.lam_hat;
    if (z == complex(0.0, 0.0)) {
        if (coalescent(mode) ? 2.0 * a - 1.0 < 0.0 : a - 1.0 < 0.0) {
            throw std::domain_error("qk_wk: w_k is singular at z = 0");
        }
        return {0.0, 0.0};
    }
    const complex za = cpow(z, a);
    if (coalescent(mode)) {
        const complex q = za * ml(a, a + 1.0, 2.0, -lb * za);
        const complex w = cpow(z, 2.0 * a - 1.0) * ml(a, 2.0 * a, 2.0, -lb * za);
        return {q, w};
    }
    const complex q = (ml(a, 1.0, 1.0, -lh * za) - ml(a, 1.0, 1.0, -lb * za)) / (lb - lh);
    const complex w = cpow(z, a - 1.0) * (ml(a, a, 1.0, -lh * za) - ml(a, a, 1.0, -lb * za)) / (lb - lh);
    return {q, w};
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> mode_solution(const ModelParams& params, const ModeTable& table, int k,
                                                            complex phi_k, complex psi_k, const SourceSpec& src,
                                                            const Eigen::VectorXd& time) {
    check_grid(time);
    src.check(table.K());
    const Mode& mode = table.mode(k);
    const KernelBank bank(params.alpha, src.M);
    Eigen::VectorXcd u(time.size());
    Eigen::VectorXcd v(time.size());
    const Eigen::RowVectorXcd f = src.f.row(k - 1);
    const Eigen::RowVectorXcd chi = src.chi.row(k - 1);
    for (Eigen::Index i = 0; i < time.size(); ++i) {
        const auto r = mode_response(bank, params, mode, time(i));
        std::tie(u(i), v(i)) = combine(params, mode, r, phi_k, psi_k, f, chi);
    }
    return {u, v};
}

double abel_monomial(double alpha, double t0, int m, double t) {
    if (t <= 0.0) {
        return 0.0;
    }
    if (t <= t0) {
        return std::exp(std::lgamma(m + 1.0) + std::lgamma(alpha) - std::lgamma(m + 1.0 + alpha)) *
               std::pow(t, m + alpha);
    }
    double sum = 0.0;
    graded_rule(t0, t0, t - t0,
                [&](double tau, double w) { sum += w * std::pow(t - tau, alpha - 1.0) * std::pow(tau, m); });
    return sum;
}

double abel_majorant(double alpha, double t0, const Eigen::VectorXd& c, double t) {
    double sum = 0.0;
    for (Eigen::Index m = 0; m < c.size(); ++m) {
        if (c(m) != 0.0) {
            sum += c(m) * abel_monomial(alpha, t0, static_cast<int>(m), t);
        }
    }
    return sum;
}

StateTrajectory solve(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                      const SpectralField& psi, const SourceSpec& src, const Eigen::VectorXd& time) {
    params.validate();
    check_grid(time);
    const int K = table.K();
    if (phi.K() != K || psi.K() != K) {
        throw std::invalid_argument("solve: initial fields must carry K coefficients");
    }
    src.check(K);
    const KernelBank bank(params.alpha, src.M);
    StateTrajectory traj;
    traj.time = time;
    traj.params = params;
    traj.u.resize(K, time.size());
    traj.v.resize(K, time.size());
    for (int k = 1; k <= K; ++k) {
        const Mode& mode = table.mode(k);
        const Eigen::RowVectorXcd f = src.f.row(k - 1);
        const Eigen::RowVectorXcd chi = src.chi.row(k - 1);
        const Eigen::VectorXd majorant = (src.f.row(k - 1).cwiseAbs() + src.chi.row(k - 1).cwiseAbs()).transpose();
        for (Eigen::Index i = 0; i < time.size(); ++i) {
            const auto r = mode_response(bank, params, mode, time(i));
            const auto [u, v] = combine(params, mode, r, phi.coeffs(k - 1), psi.coeffs(k - 1), f, chi);
            traj.u(k - 1, i) = u;
            traj.v(k - 1, i) = v;
            const double bound = std::abs(phi.coeffs(k - 1)) + std::abs(psi.coeffs(k - 1)) +
                                 abel_majorant(params.alpha, params.t0, majorant, time(i));
            if (bound > 0.0) {
                traj.c0 = std::max(traj.c0, (std::abs(u) + std::abs(v)) / bound);
            }
        }
    }
    return traj;
}

FluxTrace boundary_flux(const StateTrajectory& traj, const ModeTable& table) {
    if (traj.u.rows() > table.K()) {
        throw std::invalid_argument("boundary_flux: trajectory has more modes than the table");
    }
    const double t0 = traj.params.t0;
    const double t1 = traj.params.t1;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < traj.time.size(); ++i) {
        if (traj.time(i) > t0 && traj.time(i) < t1) {
            keep.push_back(i);
        }
    }
    FluxTrace out;
    out.time.resize(static_cast<Eigen::Index>(keep.size()));
    out.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        const Eigen::Index i = keep[j];
        const Eigen::Index jj = static_cast<Eigen::Index>(j);
        out.time(jj) = traj.time(i);
        for (Eigen::Index k = 0; k < traj.u.rows(); ++k) {
            out.values(jj) += table.modes[static_cast<std::size_t>(k)].gamma_trace * traj.u(k, i);
        }
    }
    return out;
}

ResidualReport fractional_residual(const StateTrajectory& traj, const ModelParams& params, const ModeTable& table,
                                   const SpectralField& phi, const SpectralField& psi, const SourceSpec& src) {
    const Eigen::VectorXd& t = traj.time;
    const Eigen::Index n_pts = t.size();
    if (n_pts < 2 || t(0) != 0.0) {
        throw std::invalid_argument("fractional_residual: grid must start at 0 and have >= 2 points");
    }
    const double h = t(n_pts - 1) / static_cast<double>(n_pts - 1);
    for (Eigen::Index i = 0; i < n_pts; ++i) {
        if (std::abs(t(i) - h * static_cast<double>(i)) > 1e-9 * h * std::max<double>(1.0, static_cast<double>(i))) {
            throw std::invalid_argument("fractional_residual: time grid is not uniform");
        }
    }
    const int K = table.K();
    src.check(K);
    const double a = params.alpha;

    // product trapezoid weights; interior ones depend only on n - j
    const Eigen::Index N = n_pts - 1;
    Eigen::VectorXd inner(N + 1);
    inner(0) = 1.0;
    for (Eigen::Index d = 1; d <= N; ++d) {
        const double x = static_cast<double>(d);
        inner(d) = std::pow(x + 1.0, a + 1.0) - 2.0 * std::pow(x, a + 1.0) + std::pow(x - 1.0, a + 1.0);
    }
    const double scale = std::pow(h, a) / std::tgamma(a + 2.0);
    auto integrate = [&](const Eigen::VectorXcd& g, Eigen::Index n) -> complex {
        if (n == 0) {
            return 0.0;
        }
        const double x = static_cast<double>(n);
        complex sum = (std::pow(x - 1.0, a + 1.0) - (x - a - 1.0) * std::pow(x, a)) * g(0);
        for (Eigen::Index j = 1; j <= n; ++j) {
            sum += inner(n - j) * g(j);
        }
        return scale * sum;
    };

    // Riemann-Liouville integrals of the monomials, exact
    Eigen::MatrixXd abel(src.M + 1, n_pts);
    const double inv_gamma = 1.0 / std::tgamma(a);
    for (int m = 0; m <= src.M; ++m) {
        for (Eigen::Index i = 0; i < n_pts; ++i) {
            abel(m, i) = inv_gamma * abel_monomial(a, params.t0, m, t(i));
        }
    }

    ResidualReport report;
    for (int k = 1; k <= K; ++k) {
        const Mode& mode = table.mode(k);
        const Eigen::VectorXcd u = traj.u.row(k - 1).transpose();
        const Eigen::VectorXcd v = traj.v.row(k - 1).transpose();
        const Eigen::VectorXcd gu = -(params.kappa * mode.lambda + params.c) * u - params.a * v;
        const Eigen::VectorXcd gv = -(params.varkappa * mode.lambda + params.d) * v - params.b * u;
        const Eigen::VectorXcd fu = (src.f.row(k - 1) * abel).transpose();
        const Eigen::VectorXcd fv = (src.chi.row(k - 1) * abel).transpose();
        double su = 0.0;
        double sv = 0.0;
        for (Eigen::Index n = 0; n < n_pts; ++n) {
            const double w = (n == 0 || n == N) ? 0.5 * h : h;
            su += w * std::norm(u(n) - phi.coeffs(k - 1) - integrate(gu, n) - fu(n));
            sv += w * std::norm(v(n) - psi.coeffs(k - 1) - integrate(gv, n) - fv(n));
        }
        report.u = std::max(report.u, std::sqrt(su));
        report.v = std::max(report.v, std::sqrt(sv));
    }
    return report;
}

double extension_half_angle(double alpha) { return std::min((2.0 - alpha) * kPi / (2.0 * alpha), kPi); }

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> extend_complex(const ModelParams& params, const ModeTable& table,
                                                             const SpectralField& phi, const SpectralField& psi,
                                                             const SourceSpec& src, complex z) {
    params.validate();
    const int K = table.K();
    src.check(K);
    const complex dz = z - params.t0;
    if (dz == complex(0.0, 0.0) || !(std::abs(std::arg(dz)) < extension_half_angle(params.alpha))) {
        std::ostringstream msg;
        msg << "extend_complex: z = " << z << " lies outside the sector |Arg(z - t0)| < "
            << extension_half_angle(params.alpha);
        throw std::domain_error(msg.str());
    }
    Eigen::VectorXcd u(K);
    Eigen::VectorXcd v(K);
    for (int k = 1; k <= K; ++k) {
        const Mode& mode = table.mode(k);
        const auto r = mode_response(params, src.M, mode, z);
        std::tie(u(k - 1), v(k - 1)) =
            combine(params, mode, r, phi.coeffs(k - 1), psi.coeffs(k - 1), src.f.row(k - 1), src.chi.row(k - 1));
    }
    return {u, v};
}

double flux_tail_bound(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                       const SpectralField& psi, const SourceSpec& src, int K, double c0, double t) {
    double sum = 0.0;
    for (int k = K + 1; k <= table.K(); ++k) {
        const Eigen::VectorXd majorant = (src.f.row(k - 1).cwiseAbs() + src.chi.row(k - 1).cwiseAbs()).transpose();
        sum += std::abs(table.mode(k).gamma_trace) *
               (std::abs(phi.coeffs(k - 1)) + std::abs(psi.coeffs(k - 1)) +
                abel_majorant(params.alpha, params.t0, majorant, t));
    }
    return c0 * sum;
}

}  // namespace fdinv
