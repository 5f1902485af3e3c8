#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace fdinv::quad {

// Nodes and weights of an interpolatory rule.
struct Rule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^a (1 + x)^b, a, b > -1.
/// Computed by Golub-Welsch from the three-term recurrence.
Rule gauss_jacobi(int n, double a, double b);

/// Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

/// Affine map of a [-1, 1] rule onto [lo, hi] (weights scaled by the half-length).
Rule mapped(const Rule& reference, double lo, double hi);

/// Panels on [lo, hi] refined geometrically towards `focus` in [lo, hi].
/// The panel touching `focus` has width `first`; each further panel doubles.
std::vector<std::pair<double, double>> graded_panels(double lo, double hi, double focus, double first);

}  // namespace fdinv::quad
