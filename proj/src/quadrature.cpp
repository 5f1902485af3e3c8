#include "fdinv/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdinv::quad {

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) {
        throw std::invalid_argument("gauss_jacobi: need at least one node");
    }
    if (!(a > -1.0) || !(b > -1.0)) {
        throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    }
    const double ab = a + b;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    diag(0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = (b * b - a * a) / (s * (s + 2.0));
        double beta2 = 0.0;
        if (k == 1) {
            // the general expression has a removable 0/0 when a + b = -1
            beta2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub(k - 1) = std::sqrt(beta2);
    }
    Rule rule;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_jacobi: eigen decomposition failed");
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    rule.nodes = solver.eigenvalues();
    rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

Rule gauss_legendre(int n) {
    Rule rule = gauss_jacobi(n, 0.0, 0.0);
    // symmetrize to remove eigen-solver noise
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule.nodes(j) - rule.nodes(i));
        const double w = 0.5 * (rule.weights(i) + rule.weights(j));
        rule.nodes(i) = -x;
        rule.nodes(j) = x;
        rule.weights(i) = w;
        rule.weights(j) = w;
    }
    if (n % 2 == 1) {
        rule.nodes(n / 2) = 0.0;
    }
    return rule;
}

Rule mapped(const Rule& reference, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Rule out;
    out.nodes = (mid + half * reference.nodes.array()).matrix();
    out.weights = half * reference.weights;
    return out;
}

std::vector<std::pair<double, double>> graded_panels(double lo, double hi, double focus, double first) {
    if (!(hi > lo)) {
        throw std::invalid_argument("graded_panels: empty interval");
    }
    focus = std::clamp(focus, lo, hi);
    first = std::max(first, 1e-300);
    std::vector<std::pair<double, double>> left;
    std::vector<std::pair<double, double>> right;
    double width = first;
    for (double x = focus; x < hi;) {
        const double next = (hi - x <= 1.5 * width) ? hi : x + width;
        right.emplace_back(x, next);
        x = next;
        width *= 2.0;
    }
    width = first;
    for (double x = focus; x > lo;) {
        const double next = (x - lo <= 1.5 * width) ? lo : x - width;
        left.emplace_back(next, x);
        x = next;
        width *= 2.0;
    }
    std::reverse(left.begin(), left.end());
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

}  // namespace fdinv::quad
