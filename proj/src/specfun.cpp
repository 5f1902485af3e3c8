#include "fdinv/specfun.hpp"

#include "fdinv/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fdinv::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogEps = std::log(DBL_EPSILON);

// Compensated complex accumulator.
struct KahanSum {
    complex sum{0.0, 0.0};
    complex carry{0.0, 0.0};
    void add(complex x) {
        const complex y = x - carry;
        const complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-14; }

Evaluation taylor(const PrabhakarParams& p, complex z) {
    // coefficient (gamma)_n z^n / n! is built recursively; 1/Gamma(alpha n + beta) separately
    KahanSum acc;
    double magnitude = 0.0;
    complex c{1.0, 0.0};
    int quiet = 0;
    for (int n = 0; n < 4000; ++n) {
        if (n > 0) {
            c *= z * ((p.gamma + n - 1.0) / n);
        }
        const complex term = c * rgamma(p.alpha * n + p.beta);
        acc.add(term);
        magnitude += std::abs(term);
        if (n > 2 && std::abs(term) <= 1e-17 * std::abs(acc.sum) + 1e-300) {
            if (++quiet >= 3) {
                const double scale = std::max(std::abs(acc.sum), 1e-300);
                const double err = 4.0 * DBL_EPSILON * magnitude / scale;
                return {acc.sum, err, err <= kTargetAccuracy};
            }
        } else {
            quiet = 0;
        }
    }
    throw AccuracyError("prabhakar: Taylor series did not converge", kInf);
}

struct ContourParams {
    double mu{0.0};
    double h{0.0};
    double n{kInf};
};

// Contour parameters for a region bounded by two singularities.
ContourParams optimal_bounded(double phi_j, double phi_j1, double pj, double qj, double log_epsilon) {
    constexpr double fac = 1.01;
    const double f_max = std::exp(log_epsilon - kLogEps);
    const double sq_phi_j = std::sqrt(phi_j);
    const double threshold = 2.0 * std::sqrt(log_epsilon - kLogEps);
    const double sq_phi_j1 = std::min(std::sqrt(phi_j1), threshold - sq_phi_j);
    if (!(sq_phi_j1 > sq_phi_j)) {
        return {};
    }

    double sq_bar_j = sq_phi_j;
    double sq_bar_j1 = sq_phi_j1;
    double f_bar = 1.0;
    if (pj < 1e-14 && qj >= 1e-14) {
        const double f_min = sq_phi_j > 0.0 ? fac * std::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), qj) : fac;
        if (!(f_min < f_max)) {
            return {};
        }
        f_bar = f_min + f_min / f_max * (f_max - f_min);
        const double fq = std::pow(f_bar, -1.0 / qj);
        sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq);
    } else if (pj >= 1e-14 && qj < 1e-14) {
        const double f_min = fac * std::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), pj);
        if (!(f_min < f_max)) {
            return {};
        }
        f_bar = f_min + f_min / f_max * (f_max - f_min);
        const double fp = std::pow(f_bar, -1.0 / pj);
        sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp);
    } else if (pj >= 1e-14 && qj >= 1e-14) {
        double f_min = fac * (sq_phi_j + sq_phi_j1) / std::pow(sq_phi_j1 - sq_phi_j, std::max(pj, qj));
        if (!(f_min < f_max)) {
            return {};
        }
        f_min = std::max(f_min, 1.5);
        f_bar = f_min + f_min / f_max * (f_max - f_min);
        const double fp = std::pow(f_bar, -1.0 / pj);
        const double fq = std::pow(f_bar, -1.0 / qj);
        const double w = -phi_j1 / log_epsilon;
        const double den = 2.0 + w - (1.0 + w) * fp + fq;
        sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
        sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
    }

    const double log_eps_adj = log_epsilon - std::log(f_bar);
    const double w = -sq_bar_j1 * sq_bar_j1 / log_eps_adj;
    ContourParams out;
    out.mu = std::pow(((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w), 2);
    out.h = -2.0 * kPi / log_eps_adj * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1);
    out.n = std::ceil(std::sqrt(1.0 - log_eps_adj / out.mu) / out.h);
    if (!std::isfinite(out.n) || out.n <= 0.0 || !(out.h > 0.0)) {
        return {};
    }
    return out;
}

// Contour parameters for the unbounded region right of the last singularity.
ContourParams optimal_unbounded(double phi_j, double pj, double log_epsilon) {
    const double sq_phi_j = std::sqrt(phi_j);
    double phibar = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
    double sq_phibar = std::sqrt(phibar);
    constexpr double f_min = 1.0;
    constexpr double f_max = 10.0;
    constexpr double f_tar = 5.0;

    double n = 0.0;
    double a = 0.0;
    double sq_mu = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double phi_t = phibar;
        const double log_eps_phi_t = log_epsilon / phi_t;
        n = std::ceil(phi_t / kPi * (1.0 - 1.5 * log_eps_phi_t + std::sqrt(1.0 - 2.0 * log_eps_phi_t)));
        a = kPi * n / phi_t;
        sq_mu = sq_phibar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
        const double fbar = std::pow((sq_phibar - sq_phi_j) / sq_mu, -pj);
        if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) {
            break;
        }
        sq_phibar = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
        phibar = sq_phibar * sq_phibar;
    }
    ContourParams out;
    out.mu = sq_mu * sq_mu;
    out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
    out.n = n;

    // keep round-off under control
    const double threshold = log_epsilon - kLogEps;
    if (out.mu > threshold) {
        const double q = std::abs(pj) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(out.mu);
        phibar = std::pow(q + sq_phi_j, 2);
        if (phibar < threshold) {
            const double w = std::sqrt(kLogEps / (kLogEps - log_epsilon));
            const double u = std::sqrt(-phibar / kLogEps);
            out.mu = threshold;
            out.n = std::ceil(w * log_epsilon / 2.0 / kPi / (u * w - 1.0));
            out.h = w / out.n;
        } else {
            return {};
        }
    }
    return out;
}

// Residue of e^s s^(alpha gamma - beta) / (s^alpha - z)^gamma at a simple zero s* of s^alpha - z.
complex pole_residue(const PrabhakarParams& p, complex s, complex z) {
    const double a = p.alpha;
    if (std::abs(p.gamma - 1.0) < 1e-14) {
        return std::exp(s) * std::pow(s, 1.0 - p.beta) / a;
    }
    if (std::abs(p.gamma - 2.0) < 1e-14) {
        const double e = 2.0 * a - p.beta;
        const complex g = std::exp(s) * std::pow(s, e);
        const complex dg = g * (1.0 + e / s);
        const complex h1 = a * std::pow(s, a - 1.0);
        const complex h2 = a * (a - 1.0) * std::pow(s, a - 2.0);
        return dg / (h1 * h1) - g * h2 / (h1 * h1 * h1);
    }
    // other integer orders: trapezoid rule on a small circle avoiding the branch cut
    const double room = std::abs(s) * std::max(std::sin(kPi - std::abs(std::arg(s))), 1e-3);
    const double radius = 0.25 * std::min({room, std::abs(s), 1.0});
    constexpr int nodes = 96;
    KahanSum acc;
    for (int j = 0; j < nodes; ++j) {
        const complex e = std::polar(1.0, 2.0 * kPi * j / nodes);
        const complex x = s + radius * e;
        const complex f = std::exp(x) * std::pow(x, a * p.gamma - p.beta) / std::pow(std::pow(x, a) - z, p.gamma);
        acc.add(f * radius * e);
    }
    return acc.sum / static_cast<double>(nodes);
}

Evaluation contour(const PrabhakarParams& p, complex z) {
    const double a = p.alpha;
    const double theta = std::arg(z);
    const double r = std::abs(z);

    // poles of the transform in the principal sheet
    const int kmin = static_cast<int>(std::ceil(-a / 2.0 - theta / (2.0 * kPi)));
    const int kmax = static_cast<int>(std::floor(a / 2.0 - theta / (2.0 * kPi)));
    std::vector<std::pair<double, complex>> poles;
    for (int k = kmin; k <= kmax; ++k) {
        const complex s = std::polar(std::pow(r, 1.0 / a), (theta + 2.0 * k * kPi) / a);
        const double phi = 0.5 * (s.real() + std::abs(s));
        if (phi > 1e-15) {
            poles.emplace_back(phi, s);
        }
    }
    std::sort(poles.begin(), poles.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!poles.empty() && !is_integer(p.gamma)) {
        throw std::domain_error("prabhakar: non-integer gamma is supported only where the transform has no poles");
    }

    const std::size_t j1 = poles.size() + 1;  // singularities: origin + poles
    std::vector<double> phi(j1 + 1);
    std::vector<complex> sing(j1);
    std::vector<double> pp(j1);
    std::vector<double> qq(j1);
    phi[0] = 0.0;
    sing[0] = 0.0;
    pp[0] = std::max(0.0, -2.0 * (a * p.gamma - p.beta + 1.0));
    for (std::size_t j = 0; j < poles.size(); ++j) {
        phi[j + 1] = poles[j].first;
        sing[j + 1] = poles[j].second;
        pp[j + 1] = p.gamma;
    }
    for (std::size_t j = 0; j < j1; ++j) {
        qq[j] = (j + 1 < j1) ? p.gamma : kInf;
    }
    phi[j1] = kInf;

    double log_epsilon = std::log(1e-15);
    ContourParams best;
    std::size_t region = 0;
    for (int relax = 0; relax < 12; ++relax) {
        best = ContourParams{};
        for (std::size_t j = 0; j < j1; ++j) {
            if (!(phi[j] < log_epsilon - kLogEps) || !(phi[j] < phi[j + 1])) {
                continue;
            }
            const ContourParams c = (j + 1 < j1) ? optimal_bounded(phi[j], phi[j + 1], pp[j], qq[j], log_epsilon)
                                                 : optimal_unbounded(phi[j], pp[j], log_epsilon);
            if (c.n < best.n) {
                best = c;
                region = j;
            }
        }
        if (best.n <= 200.0) {
            break;
        }
        log_epsilon += std::log(10.0);
    }
    if (!std::isfinite(best.n)) {
        throw AccuracyError("prabhakar: no admissible integration contour", kInf);
    }

    const int n = static_cast<int>(best.n);
    KahanSum integral;
    double magnitude = 0.0;
    const double ag = a * p.gamma - p.beta;
    const bool integer_gamma = is_integer(p.gamma);
    for (int k = -n; k <= n; ++k) {
        const double u = best.h * k;
        const complex s = best.mu * std::pow(complex(1.0, u), 2);
        const complex ds = complex(-2.0 * best.mu * u, 2.0 * best.mu);
        const complex base = std::pow(s, a) - z;
        const complex den = integer_gamma ? std::pow(base, static_cast<int>(std::round(p.gamma))) : std::pow(base, p.gamma);
        const complex f = std::exp(s) * std::pow(s, ag) / den * ds;
        integral.add(f);
        magnitude += std::abs(f);
    }
    const double scale = best.h / (2.0 * kPi);
    complex value = integral.sum * scale / complex(0.0, 1.0);
    magnitude *= scale;

    for (std::size_t j = region + 1; j < j1; ++j) {
        const complex res = pole_residue(p, sing[j], z);
        value += res;
        magnitude += std::abs(res);
    }
    if (z.imag() == 0.0) {
        value = complex(value.real(), 0.0);
    }
    const double err = std::exp(log_epsilon) * magnitude / std::max(std::abs(value), 1e-300);
    return {value, err, err <= kTargetAccuracy};
}

}  // namespace

NegativeAxisEvaluator::NegativeAxisEvaluator(const PrabhakarParams& p) : p_(p) {
    p.validate();
    if (is_integer(p.gamma)) {
        int_gamma_ = static_cast<int>(std::round(p.gamma));
    }
    const double pole_order = std::max(0.0, -2.0 * (p.alpha * p.gamma - p.beta + 1.0));
    ContourParams c;
    for (double log_epsilon = std::log(1e-15); log_epsilon < 0.0; log_epsilon += std::log(10.0)) {
        c = optimal_unbounded(0.0, pole_order, log_epsilon);
        if (c.n <= 200.0) {
            break;
        }
    }
    if (!(c.n <= 200.0)) {
        throw AccuracyError("NegativeAxisEvaluator: no admissible contour", kInf);
    }
    const int n = static_cast<int>(c.n);
    const double ag = p.alpha * p.gamma - p.beta;
    const double scale = c.h / (2.0 * kPi);
    s_alpha_.reserve(2 * n + 1);
    weight_.reserve(2 * n + 1);
    // nodes k and -k are conjugate; keep k >= 0 and take twice the real part
    for (int k = 0; k <= n; ++k) {
        const double u = c.h * k;
        const complex s = c.mu * std::pow(complex(1.0, u), 2);
        const complex ds = complex(-2.0 * c.mu * u, 2.0 * c.mu);
        s_alpha_.push_back(std::pow(s, p.alpha));
        const complex w = std::exp(s) * std::pow(s, ag) * ds * scale / complex(0.0, 1.0);
        weight_.push_back(k == 0 ? 0.5 * w : w);
    }
}

double NegativeAxisEvaluator::operator()(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("NegativeAxisEvaluator: argument must be finite and >= 0");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < s_alpha_.size(); ++k) {
        const complex base = s_alpha_[k] + x;
        complex den;
        switch (int_gamma_) {
            case 1: den = base; break;
            case 2: den = base * base; break;
            case 0: den = std::pow(base, p_.gamma); break;
            default: den = std::pow(base, int_gamma_); break;
        }
        sum += (weight_[k] / den).real();
    }
    return 2.0 * sum;
}

void PrabhakarParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("prabhakar: alpha must lie in (0, 1]");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("prabhakar: beta must be finite and >= 0");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("prabhakar: gamma must be finite and > 0");
    }
}

complex principal_power(complex z, double beta) {
    if (z == complex(0.0, 0.0)) {
        if (beta > 0.0) {
            return {0.0, 0.0};
        }
        throw std::domain_error("principal_power: zero base needs a positive exponent");
    }
    double arg = std::arg(z);
    if (arg <= -kPi) {
        arg = kPi;
    }
    return std::polar(std::pow(std::abs(z), beta), beta * arg);
}

double rgamma(double x) {
    if (x <= 0.0 && is_integer(x)) {
        return 0.0;
    }
    if (x > 170.0) {
        return std::exp(-std::lgamma(x));
    }
    return 1.0 / std::tgamma(x);
}

Evaluation prabhakar_eval(const PrabhakarParams& p, complex z) {
    p.validate();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("prabhakar: argument must be finite");
    }
    const double r = std::abs(z);
    if (r == 0.0) {
        return {complex(rgamma(p.beta), 0.0), 0.0, true};
    }
    // the series loses about |z|^(1/alpha) / ln(10) digits to cancellation
    if (r <= 5.0 && std::pow(r, 1.0 / p.alpha) <= 3.0) {
        Evaluation e = taylor(p, z);
        if (e.error_estimate <= 1e-13) {
            return e;
        }
    }
    return contour(p, z);
}

complex prabhakar(const PrabhakarParams& p, complex z) {
    const Evaluation e = prabhakar_eval(p, z);
    if (!(e.error_estimate <= 1e-6)) {
        std::ostringstream msg;
        msg << "prabhakar: accuracy target missed at z = " << z << " (estimate " << e.error_estimate << ")";
        throw AccuracyError(msg.str(), e.error_estimate);
    }
    return e.value;
}

DecayReport sector_decay_report(const PrabhakarParams& p, double theta, std::span<const double> radii, int rays) {
    p.validate();
    if (radii.empty()) {
        throw std::invalid_argument("sector_decay_report: empty radius list");
    }
    const double edge = (2.0 - p.alpha) * kPi / 2.0;
    if (!(theta > 0.0 && theta < edge)) {
        throw std::invalid_argument("sector_decay_report: theta must lie in (0, (2 - alpha) pi / 2)");
    }
    rays = std::max(rays, 1);
    DecayReport report{0.0, 0.0, {}};
    std::vector<std::pair<double, double>> envelope;  // (radius, max magnitude)
    for (double r : radii) {
        if (!(r >= 0.0)) {
            throw std::invalid_argument("sector_decay_report: radii must be non-negative");
        }
        double worst = 0.0;
        const int count = (r == 0.0) ? 1 : rays;
        for (int j = 0; j < count; ++j) {
            const double angle = (count == 1) ? 0.0 : -theta + 2.0 * theta * j / (count - 1);
            const double mag = std::abs(prabhakar(p, -std::polar(r, angle)));
            report.samples.push_back({r, angle, mag});
            report.c_theta = std::max(report.c_theta, mag * std::pow(1.0 + r, p.gamma));
            worst = std::max(worst, mag);
        }
        if (r > 0.0) {
            envelope.emplace_back(r, worst);
        }
    }
    std::sort(envelope.begin(), envelope.end());
    const std::size_t first = envelope.size() / 2;
    if (envelope.size() - first >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double m = static_cast<double>(envelope.size() - first);
        for (std::size_t i = first; i < envelope.size(); ++i) {
            const double x = std::log(envelope[i].first);
            const double y = std::log(envelope[i].second);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.fitted_exponent = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    } else {
        report.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

double laplace_identity_residual(const PrabhakarParams& p, double lambda, complex s, double t_cut) {
    p.validate();
    if (!(p.beta > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("laplace_identity_residual: beta and lambda must be positive");
    }
    const double sigma = s.real();
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("laplace_identity_residual: Re s must be positive");
    }
    if (!(t_cut > 0.0)) {
        throw std::invalid_argument("laplace_identity_residual: t_cut must be positive");
    }
    constexpr double kQuadTol = 1e-9;
    const double b = p.beta;
    // only the absolute error of E matters inside the integral
    auto ml = [&](double t) {
        const complex z(-lambda * std::pow(t, p.alpha), 0.0);
        const Evaluation e = prabhakar_eval(p, z);
        if (!(e.error_estimate <= 1e-6 || e.error_estimate * std::abs(e.value) <= 1e-14)) {
            std::ostringstream msg;
            msg << "laplace_identity_residual: inaccurate E at z = " << z << " (estimate " << e.error_estimate << ")";
            throw AccuracyError(msg.str(), e.error_estimate);
        }
        return e.value;
    };
    auto kernel = [&](double t) { return std::exp(-s * t) * ml(t); };

    // first panel: Gauss-Jacobi absorbs t^(beta - 1); remaining panels graded away from 0
    double h0 = std::pow(1e-10 / std::max(lambda, 1.0), 1.0 / (p.alpha + b));
    h0 = std::min({h0, t_cut, 0.5 / std::max(1.0, std::abs(s))});
    KahanSum acc;
    const quad::Rule jacobi = quad::gauss_jacobi(24, 0.0, b - 1.0);
    for (int i = 0; i < jacobi.nodes.size(); ++i) {
        const double t = 0.5 * h0 * (1.0 + jacobi.nodes(i));
        acc.add(std::pow(0.5 * h0, b) * jacobi.weights(i) * kernel(t));
    }
    const quad::Rule legendre = quad::gauss_legendre(24);
    const double max_width = 0.5 / std::max(1.0, std::abs(s));
    double envelope = 0.0;
    double lo = h0;
    double width = h0;
    while (lo < t_cut) {
        const double hi = std::min(lo + std::min(width, max_width), t_cut);
        const quad::Rule r = quad::mapped(legendre, lo, hi);
        for (int i = 0; i < r.nodes.size(); ++i) {
            const double t = r.nodes(i);
            const complex e = ml(t);
            acc.add(r.weights(i) * std::pow(t, b - 1.0) * std::exp(-s * t) * e);
            if (t >= 0.5 * t_cut) {
                envelope = std::max(envelope, std::abs(e) * std::pow(1.0 + lambda * std::pow(t, p.alpha), p.gamma));
            }
        }
        lo = hi;
        width *= 2.0;
    }

    // tail bound beyond t_cut from the sampled sector-decay envelope
    const double decay = envelope / std::pow(1.0 + lambda * std::pow(t_cut, p.alpha), p.gamma);
    double tail = 0.0;
    if (b <= 1.0) {
        tail = decay * std::pow(t_cut, b - 1.0) * std::exp(-sigma * t_cut) / sigma;
    } else if (sigma * t_cut > 2.0 * (b - 1.0)) {
        tail = 2.0 * decay * std::pow(t_cut, b - 1.0) * std::exp(-sigma * t_cut) / sigma;
    } else {
        tail = kInf;
    }
    if (!(tail <= kQuadTol)) {
        std::ostringstream msg;
        msg << "laplace_identity_residual: truncation tail bound " << tail << " exceeds " << kQuadTol
            << "; increase t_cut";
        throw std::domain_error(msg.str());
    }
    const complex closed = std::pow(s, p.alpha * p.gamma - b) / std::pow(std::pow(s, p.alpha) + lambda, p.gamma);
    return std::abs(acc.sum - closed);
}

complex truncated_monomial_laplace(int m, complex s, double t0) {
    if (m < 0) {
        throw std::invalid_argument("truncated_monomial_laplace: negative degree");
    }
    const complex x = s * t0;
    const double scale = std::pow(t0, m + 1);
    if (std::abs(x) <= 2.0) {
        // t0^(m+1) sum_n (-x)^n / (n! (m + n + 1))
        KahanSum acc;
        complex c{1.0, 0.0};
        for (int n = 0; n < 200; ++n) {
            if (n > 0) {
                c *= -x / static_cast<double>(n);
            }
            const complex term = c / static_cast<double>(m + n + 1);
            acc.add(term);
            if (std::abs(term) < 1e-18 * std::abs(acc.sum)) {
                break;
            }
        }
        return scale * acc.sum;
    }
    // m! / s^(m+1) [1 - e^{-x} sum_{j<=m} x^j / j!]
    complex partial{0.0, 0.0};
    complex c{1.0, 0.0};
    for (int j = 0; j <= m; ++j) {
        if (j > 0) {
            c *= x / static_cast<double>(j);
        }
        partial += c;
    }
    const double factorial = std::tgamma(m + 1.0);
    return factorial / std::pow(s, m + 1) * (1.0 - std::exp(-x) * partial);
}

}  // namespace fdinv::specfun

namespace fdinv::specfun {

namespace {

double rel(complex got, complex want) {
    const double d = std::abs(got - want);
    return d == 0.0 ? 0.0 : d / std::max(std::abs(want), std::numeric_limits<double>::min());
}

// five-point central difference along the real direction
complex fd_derivative(const PrabhakarParams& p, complex z, double h) {
    return (-prabhakar(p, z + 2.0 * h) + 8.0 * prabhakar(p, z + h) - 8.0 * prabhakar(p, z - h) +
            prabhakar(p, z - 2.0 * h)) /
           (12.0 * h);
}

}  // namespace

std::vector<IdentityCheck> identity_suite() {
    std::vector<IdentityCheck> out;

    IdentityCheck exp_check{"E^1_{1,1}(z) = e^z", 0, 0.0, 1e-10};
    for (double r : {0.5, 2.0, 6.0, 12.0}) {
        for (double th : {0.0, 0.7, 1.6, 2.5, std::numbers::pi}) {
            const complex z = std::polar(r, th);
            exp_check.max_error = std::max(exp_check.max_error, rel(prabhakar({1.0, 1.0, 1.0}, z), std::exp(z)));
            ++exp_check.points;
        }
    }
    out.push_back(exp_check);

    IdentityCheck erfc_check{"E_{1/2,1}(-x) = e^{x^2} erfc(x)", 0, 0.0, 1e-8};
    for (int i = 1; i <= 50; ++i) {
        const double x = 0.1 * i;
        const double want = std::exp(x * x) * std::erfc(x);
        erfc_check.max_error = std::max(erfc_check.max_error, rel(prabhakar({0.5, 1.0, 1.0}, -x), want));
        ++erfc_check.points;
    }
    out.push_back(erfc_check);

    // d/dz E_{a,b}(z) = (E_{a,b-1}(z) - (b - 1) E_{a,b}(z)) / (a z)
    // d/dz E^g_{a,b}(z) = g E^{g+1}_{a,a+b}(z)
    IdentityCheck ml_deriv{"d/dz E_{a,b} recurrence vs finite differences", 0, 0.0, 1e-6};
    IdentityCheck pr_deriv{"d/dz E^g_{a,b} = g E^{g+1}_{a,a+b} vs finite differences", 0, 0.0, 1e-6};
    for (double a : {0.3, 0.5, 0.8}) {
        for (double b : {1.0, 1.5, 2.2}) {
            for (complex z : {complex(-0.7, 0.0), complex(-3.0, 0.5), complex(1.2, -0.4), complex(-8.0, 0.0)}) {
                const double h = 1e-3 * std::max(1.0, std::abs(z));
                const complex fd = fd_derivative({a, b, 1.0}, z, h);
                const complex exact =
                    (prabhakar({a, b - 1.0, 1.0}, z) - (b - 1.0) * prabhakar({a, b, 1.0}, z)) / (a * z);
                ml_deriv.max_error = std::max(ml_deriv.max_error, rel(fd, exact));
                ++ml_deriv.points;
                for (double g : {0.6, 2.0}) {
                    const complex fdg = fd_derivative({a, b, g}, z, h);
                    pr_deriv.max_error = std::max(pr_deriv.max_error, rel(fdg, g * prabhakar({a, a + b, g + 1.0}, z)));
                    ++pr_deriv.points;
                }
            }
        }
    }
    out.push_back(ml_deriv);
    out.push_back(pr_deriv);

    IdentityCheck origin{"E^g_{a,b}(0) = 1/Gamma(b)", 0, 0.0, 4.0 * std::numeric_limits<double>::epsilon()};
    for (double a : {0.25, 0.5, 0.9}) {
        for (double b : {0.5, 1.0, 1.7, 3.0, 6.5}) {
            const double want = std::tgamma(b);
            origin.max_error = std::max(origin.max_error, rel(prabhakar({a, b, 1.5}, 0.0) * want, 1.0));
            origin.max_error = std::max(origin.max_error, rel(rgamma(b) * want, 1.0));
            ++origin.points;
        }
    }
    out.push_back(origin);
    return out;
}

}  // namespace fdinv::specfun
