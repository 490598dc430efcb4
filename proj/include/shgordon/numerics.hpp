#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace shgordon {

// Finite-difference weights for the m-th derivative at x0 from the nodes x
// (Fornberg's recurrence). Exact for polynomials of degree < x.size().
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m);

// Derivative of nodal data on an arbitrary ascending mesh with centered
// (edge-shifted) stencils of `width` nodes; width 5 gives fourth order.
std::vector<double> derivative_on_nodes(const std::vector<double>& x,
                                        const std::vector<double>& y,
                                        int width = 5);

// Composite trapezoid of nodal data.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// Composite quadratic-fit (Simpson-grade) quadrature of nodal data on a
// non-uniform mesh; the odd tail panel integrates the last quadratic.
double simpson(const std::vector<double>& x, const std::vector<double>& y);

// Cumulative integral from x.front() to every node, integrating the local
// cubic through 4 neighboring nodes over each panel (fourth order).
std::vector<double> cumulative_integral(const std::vector<double>& x,
                                        const std::vector<double>& y);

// Adaptive Gauss-Legendre integration to an absolute tolerance: 15-point
// panels bisected until the two-half refinement agrees.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, int max_depth = 40);

// Least-squares line through (x_i, y_i): slope, intercept, and the largest
// absolute residual.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Lagrange interpolation through all given nodes, evaluated at xq.
double lagrange_interpolate(const std::vector<double>& x, const std::vector<double>& y,
                            double xq);

}  // namespace shgordon
