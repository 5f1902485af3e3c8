#include "fdinv/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fdinv {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{2 pi i n / alpha}, reducing n / alpha mod 1 first
complex branch_rotation(double alpha, long n) {
    const double x = static_cast<double>(n) / alpha;
    const double frac = x - std::floor(x);
    return std::polar(1.0, 2.0 * kPi * frac);
}

struct Powers {
    complex sa;    // s^alpha
    complex sam1;  // s^(alpha - 1)
};

Powers powers(double alpha, complex s, Side side) {
    if (side == Side::principal) {
        if (s == complex(0.0, 0.0)) {
            throw PoleError("mode_transform: s = 0 is a branch point");
        }
        const complex sa = specfun::principal_power(s, alpha);
        return {sa, sa / s};
    }
    if (s.imag() != 0.0 || !(s.real() < 0.0)) {
        throw std::invalid_argument("mode_transform: one-sided limits need s on the negative real axis");
    }
    const double r = -s.real();
    const double sign = side == Side::upper ? 1.0 : -1.0;
    const complex sa = std::polar(std::pow(r, alpha), sign * kPi * alpha);
    return {sa, sa / s};
}

}  // namespace

complex truncated_transform(const Eigen::RowVectorXcd& coeff, complex s, double t0) {
    complex sum = 0.0;
    for (Eigen::Index m = 0; m < coeff.size(); ++m) {
        if (coeff(m) != complex(0.0, 0.0)) {
            sum += coeff(m) * specfun::truncated_monomial_laplace(static_cast<int>(m), s, t0);
        }
    }
    return sum;
}

std::pair<complex, complex> mode_transform(const ModelParams& p, const ModeTable& table, int k, complex phi_k,
                                           complex psi_k, const SourceSpec& src, complex s, Side side) {
    const Mode& mode = table.mode(k);
    const Powers pw = powers(p.alpha, s, side);
    const complex den = (pw.sa + mode.lam_breve) * (pw.sa + mode.lam_hat);
    if (std::abs(den) <= 1e-14 * (std::abs(pw.sa) + mode.lam_breve) * (std::abs(pw.sa) + mode.lam_hat)) {
        std::ostringstream msg;
        msg << "mode_transform: s = " << s << " is a zero of the denominator of mode " << k;
        throw PoleError(msg.str());
    }
    const complex F = truncated_transform(src.f.row(k - 1), s, p.t0) + pw.sam1 * phi_k;
    const complex X = truncated_transform(src.chi.row(k - 1), s, p.t0) + pw.sam1 * psi_k;
    const complex U = ((pw.sa + p.varkappa * mode.lambda + p.d) * F - p.a * X) / den;
    const complex V = ((pw.sa + p.kappa * mode.lambda + p.c) * X - p.b * F) / den;
    return {U, V};
}

JumpContext JumpContext::build(const ModelParams& params, const ModeTable& table, const SpectralField& phi,
                               const SpectralField& psi, const SourceSpec& src) {
    params.validate();
    const int K = table.K();
    if (phi.K() != K || psi.K() != K) {
        throw std::invalid_argument("JumpContext: initial fields must carry K coefficients");
    }
    src.check(K);
    JumpContext ctx{params, table, phi, psi, src, params.a != 0.0, {}};
    const complex ray = -std::polar(1.0, -kPi * params.alpha);
    std::vector<complex> upper;
    for (const Mode& m : table.modes) {
        if (!ctx.coupled) {
            upper.push_back(ray * (params.kappa * m.lambda + params.c));
        } else {
            upper.push_back(ray * m.lam_breve);
            if (!coalescent(m)) {
                upper.push_back(ray * m.lam_hat);
            }
        }
    }
    ctx.poles = upper;
    for (const complex& z : upper) {
        ctx.poles.push_back(std::conj(z));
    }
    return ctx;
}

complex flux_transform(const JumpContext& ctx, complex s, Side side, std::vector<std::string>* warnings) {
    complex sum = 0.0;
    const complex sa = side == Side::principal ? powers(ctx.params.alpha, s, side).sa : complex(0.0, 0.0);
    for (int k = 1; k <= ctx.table.K(); ++k) {
        const Mode& mode = ctx.table.mode(k);
        if (warnings != nullptr && side == Side::principal && std::abs(sa + mode.lam_hat) < 1e-8 * mode.lambda) {
            std::ostringstream msg;
            msg << "flux_transform: s = " << s << " is within 1e-8 lambda_k of a pole of mode " << k;
            warnings->push_back(msg.str());
        }
        const auto [U, V] = mode_transform(ctx.params, ctx.table, k, ctx.phi.coeffs(k - 1), ctx.psi.coeffs(k - 1),
                                           ctx.src, s, side);
        sum += U * mode.gamma_trace;
    }
    return sum;
}

complex jump(const JumpContext& ctx, double rho) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("jump: rho must be positive");
    }
    const complex s(-std::pow(rho, 1.0 / ctx.params.alpha), 0.0);
    complex sum = 0.0;
    for (int k = 1; k <= ctx.table.K(); ++k) {
        const complex phi = ctx.phi.coeffs(k - 1);
        const complex psi = ctx.psi.coeffs(k - 1);
        const complex up = mode_transform(ctx.params, ctx.table, k, phi, psi, ctx.src, s, Side::upper).first;
        const complex lo = mode_transform(ctx.params, ctx.table, k, phi, psi, ctx.src, s, Side::lower).first;
        sum += (up - lo) * ctx.table.mode(k).gamma_trace;
    }
    return sum;
}

complex r_function(const JumpContext& ctx, int k, int j, complex z) {
    if (j < 1 || j > ctx.J()) {
        throw std::invalid_argument("r_function: j out of range");
    }
    const ModelParams& p = ctx.params;
    const Mode& m = ctx.table.mode(k);
    const complex zp = z * std::polar(1.0, kPi * p.alpha);
    const complex zm = z * std::polar(1.0, -kPi * p.alpha);
    if (!ctx.coupled) {
        const double shift = p.kappa * m.lambda + p.c;
        if (j == 1) {
            return 1.0 / (zp + shift) - 1.0 / (zm + shift);
        }
        return zp / (zp + shift) - zm / (zm + shift);
    }
    const complex dp = (zp + m.lam_breve) * (zp + m.lam_hat);
    const complex dm = (zm + m.lam_breve) * (zm + m.lam_hat);
    const double shift = p.varkappa * m.lambda + p.d;
    switch (j) {
        case 1: return (zp + shift) / dp - (zm + shift) / dm;
        case 2: return zp * (zp + shift) / dp - zm * (zm + shift) / dm;
        case 3: return -p.a / dp + p.a / dm;
        default: return -p.a * zp / dp + p.a * zm / dm;
    }
}

complex g_function(const JumpContext& ctx, int k, int j, complex w) {
    if (j < 1 || j > ctx.J()) {
        throw std::invalid_argument("g_function: j out of range");
    }
    const double gamma = ctx.table.mode(k).gamma_trace;
    const double t0 = ctx.params.t0;
    switch (j) {
        case 1: return truncated_transform(ctx.src.f.row(k - 1), -w, t0) * gamma;
        case 2: return -ctx.phi.coeffs(k - 1) * gamma / w;
        case 3: return truncated_transform(ctx.src.chi.row(k - 1), -w, t0) * gamma;
        default: return -ctx.psi.coeffs(k - 1) * gamma / w;
    }
}

complex q_series(const JumpContext& ctx, long n, complex z) {
    if (z == complex(0.0, 0.0)) {
        throw PoleError("q_branch: z = 0 is excluded");
    }
    const complex w = specfun::principal_power(z, 1.0 / ctx.params.alpha) * branch_rotation(ctx.params.alpha, n);
    complex sum = 0.0;
    for (int k = 1; k <= ctx.table.K(); ++k) {
        for (int j = 1; j <= ctx.J(); ++j) {
            sum += r_function(ctx, k, j, z) * g_function(ctx, k, j, w);
        }
    }
    return sum;
}

bool on_pole_lines(double alpha, complex z, double tol) {
    const double line = kPi * (1.0 - alpha);
    return std::abs(std::abs(std::arg(z)) - line) <= tol * line;
}

complex q_branch(const JumpContext& ctx, long n, complex z) {
    if (n < 0) {
        throw std::invalid_argument("q_branch: n must be >= 0");
    }
    if (on_pole_lines(ctx.params.alpha, z)) {
        std::ostringstream msg;
        msg << "q_branch: z = " << z << " lies on the pole lines Arg z = +-pi(1 - alpha)";
        throw PoleError(msg.str());
    }
    return q_series(ctx, n, z);
}

std::optional<long> branch_search(double alpha, double y, double eps, long n_max) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("branch_search: eps must be positive");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("branch_search: alpha must be positive");
    }
    const complex target = std::polar(1.0, y);
    for (long n = 1; n <= n_max; ++n) {
        if (std::abs(branch_rotation(alpha, n) - target) < eps) {
            return n;
        }
    }
    return std::nullopt;
}

int orbit_size(double alpha, long n_max, double tol) {
    std::vector<double> phase;
    phase.reserve(static_cast<std::size_t>(std::max(n_max, 0L)));
    for (long n = 1; n <= n_max; ++n) {
        phase.push_back(std::arg(branch_rotation(alpha, n)) + kPi);  // in [0, 2 pi]
    }
    if (phase.empty()) {
        return 0;
    }
    std::sort(phase.begin(), phase.end());
    int count = 1;
    for (std::size_t i = 1; i < phase.size(); ++i) {
        if (phase[i] - phase[i - 1] > tol) {
            ++count;
        }
    }
    // the circle closes: first and last cluster may coincide
    if (count > 1 && phase.front() + 2.0 * kPi - phase.back() <= tol) {
        --count;
    }
    return count;
}

}  // namespace fdinv
