#include "shgordon/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shgordon {

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
    // B. Fornberg, Generation of finite difference formulas on arbitrarily
    // spaced grids, Math. Comp. 51 (1988).
    const int n = static_cast<int>(x.size()) - 1;
    if (n < m) throw std::invalid_argument("fd_weights: need more nodes than derivative order");
    std::vector<std::vector<double>> c(x.size(), std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = c[i][m];
    return w;
}

std::vector<double> derivative_on_nodes(const std::vector<double>& x,
                                        const std::vector<double>& y,
                                        int width) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("derivative_on_nodes: size mismatch");
    const std::size_t w = std::min<std::size_t>(width, n);
    if (w < 2) throw std::invalid_argument("derivative_on_nodes: need at least 2 nodes");
    std::vector<double> dy(n, 0.0);
    std::vector<double> xs(w);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= w / 2 ? i - w / 2 : 0;
        lo = std::min(lo, n - w);
        for (std::size_t j = 0; j < w; ++j) xs[j] = x[lo + j];
        const auto wt = fd_weights(x[i], xs, 1);
        double s = 0.0;
        for (std::size_t j = 0; j < w; ++j) s += wt[j] * y[lo + j];
        dy[i] = s;
    }
    return dy;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: bad sizes");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

namespace {

// Integral over [x0, x1] of the quadratic through (a, fa), (b, fb), (c, fc).
// Everything is evaluated in the shifted variable s = t - a; with raw
// monomials of t the divided differences (which grow like derivatives of the
// integrand) multiply O(1)-sized powers and the final subtraction cancels
// catastrophically on fine meshes far from the origin.
double quadratic_panel(double a, double b, double c, double fa, double fb, double fc,
                       double x0, double x1) {
    // Newton form f = fa + d1 s + d2 s (s - B), with s = t - a, B = b - a.
    const double d1 = (fb - fa) / (b - a);
    const double d2 = ((fc - fb) / (c - b) - d1) / (c - a);
    const double B = b - a;
    auto P = [&](double t) {
        const double s = t - a;
        return s * (fa + s * (0.5 * (d1 - d2 * B) + s * d2 / 3.0));
    };
    return P(x1) - P(x0);
}

// Integral over [x0, x1] of the cubic through 4 points (Newton form, shifted
// variable; see quadratic_panel).
double cubic_panel(const double* xs, const double* fs, double x0, double x1) {
    const double d01 = (fs[1] - fs[0]) / (xs[1] - xs[0]);
    const double d12 = (fs[2] - fs[1]) / (xs[2] - xs[1]);
    const double d23 = (fs[3] - fs[2]) / (xs[3] - xs[2]);
    const double d012 = (d12 - d01) / (xs[2] - xs[0]);
    const double d123 = (d23 - d12) / (xs[3] - xs[1]);
    const double d0123 = (d123 - d012) / (xs[3] - xs[0]);
    const double a = xs[0];
    const double B = xs[1] - a, C = xs[2] - a;
    // f = f0 + d01 s + d012 s (s - B) + d0123 s (s - B)(s - C), s = t - a.
    auto P = [&](double t) {
        const double s = t - a;
        const double c1 = fs[0];
        const double c2 = 0.5 * (d01 - d012 * B + d0123 * B * C);
        const double c3 = (d012 - d0123 * (B + C)) / 3.0;
        const double c4 = 0.25 * d0123;
        return s * (c1 + s * (c2 + s * (c3 + s * c4)));
    };
    return P(x1) - P(x0);
}

}  // namespace

double simpson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 3) throw std::invalid_argument("simpson: bad sizes");
    double s = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2)
        s += quadratic_panel(x[i], x[i + 1], x[i + 2], y[i], y[i + 1], y[i + 2],
                             x[i], x[i + 2]);
    if (i + 1 < n)  // odd tail: quadratic through the last three nodes
        s += quadratic_panel(x[n - 3], x[n - 2], x[n - 1], y[n - 3], y[n - 2], y[n - 1],
                             x[n - 2], x[n - 1]);
    return s;
}

std::vector<double> cumulative_integral(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 4) throw std::invalid_argument("cumulative_integral: bad sizes");
    std::vector<double> F(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t lo = i >= 2 ? i - 2 : 0;
        lo = std::min(lo, n - 4);
        F[i] = F[i - 1] + cubic_panel(&x[lo], &y[lo], x[i - 1], x[i]);
    }
    return F;
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (symmetric halves).
constexpr double kGL15x[8] = {0.0,
                              0.2011940939974345,
                              0.3941513470775634,
                              0.5709721726085388,
                              0.7244177313601701,
                              0.8482065834104272,
                              0.9372733924007060,
                              0.9879925180204854};
constexpr double kGL15w[8] = {0.2025782419255613,
                              0.1984314853271116,
                              0.1861610000155622,
                              0.1662692058169939,
                              0.1395706779261543,
                              0.1071592204671719,
                              0.0703660474881081,
                              0.0307532419961173};

double gl15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = kGL15w[0] * f(c);
    for (int i = 1; i < 8; ++i)
        s += kGL15w[i] * (f(c - h * kGL15x[i]) + f(c + h * kGL15x[i]));
    return s * h;
}

double adaptive_gauss_rec(const std::function<double(double)>& f, double a, double b,
                          double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl15(f, a, m), right = gl15(f, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= tol) return left + right;
    return adaptive_gauss_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_gauss_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return adaptive_gauss_rec(f, a, b, gl15(f, a, b), abs_tol, max_depth);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2) throw std::invalid_argument("fit_line: bad sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = double(n) * sxx - sx * sx;
    LineFit fit;
    fit.slope = (double(n) * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

double lagrange_interpolate(const std::vector<double>& x, const std::vector<double>& y,
                            double xq) {
    const std::size_t n = x.size();
    if (y.size() != n || n == 0) throw std::invalid_argument("lagrange_interpolate: bad sizes");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double L = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) L *= (xq - x[j]) / (x[i] - x[j]);
        s += L * y[i];
    }
    return s;
}

}  // namespace shgordon
