#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "shgordon/numerics.hpp"

using namespace shgordon;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + (b - a) * double(i) / double(n - 1);
    x.back() = b;
    return x;
}

// Geometric refinement toward b, mimicking a boundary-layer mesh.
std::vector<double> graded(double a, double b, std::size_t n, double ratio) {
    const double W = b - a;
    const double h0 = W * (1.0 - ratio) / (1.0 - std::pow(ratio, double(n)));
    std::vector<double> x = {a};
    double r = a, h = h0;
    for (std::size_t i = 1; i < n; ++i) {
        r += h;
        h *= ratio;
        x.push_back(r);
    }
    x.push_back(b);
    return x;
}

std::vector<double> sample(const std::vector<double>& x, double (*f)(double)) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
    return y;
}

}  // namespace

TEST_CASE("fd_weights reproduce derivatives of polynomials exactly") {
    const std::vector<double> x = {0.0, 0.13, 0.31, 0.55, 0.8};
    // p(t) = 2 - t + 3 t^2 - 0.5 t^3 + 0.25 t^4
    auto p = [](double t) { return 2.0 - t + 3.0 * t * t - 0.5 * t * t * t + 0.25 * t * t * t * t; };
    auto dp = [](double t) { return -1.0 + 6.0 * t - 1.5 * t * t + t * t * t; };
    auto d2p = [](double t) { return 6.0 - 3.0 * t + 3.0 * t * t; };

    for (double x0 : {0.0, 0.31, 0.47, 0.8}) {
        for (int m : {0, 1, 2}) {
            const std::vector<double> w = fd_weights(x0, x, m);
            REQUIRE(w.size() == x.size());
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * p(x[i]);
            const double want = m == 0 ? p(x0) : (m == 1 ? dp(x0) : d2p(x0));
            CHECK(acc == doctest::Approx(want).epsilon(1e-11));
        }
    }
}

TEST_CASE("derivative_on_nodes is fourth order") {
    double prev = 0.0;
    for (std::size_t n : {101u, 201u}) {
        const std::vector<double> x = linspace(0.0, 1.0, n);
        const std::vector<double> y = sample(x, [](double t) { return std::sin(3.0 * t); });
        const std::vector<double> dy = derivative_on_nodes(x, y);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(dy[i] - 3.0 * std::cos(3.0 * x[i])));
        if (prev > 0.0) CHECK(prev / err > 12.0);  // ~16 for fourth order
        prev = err;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("derivative_on_nodes handles graded meshes") {
    const std::vector<double> x = graded(0.0, 1.0, 400, 0.985);
    const std::vector<double> y = sample(x, [](double t) { return std::exp(2.0 * t); });
    const std::vector<double> dy = derivative_on_nodes(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(dy[i] == doctest::Approx(2.0 * std::exp(2.0 * x[i])).epsilon(1e-6));
}

TEST_CASE("trapezoid and simpson orders") {
    double t_prev = 0.0, s_prev = 0.0;
    const double exact = 1.0 - std::cos(1.0);
    for (std::size_t n : {65u, 129u}) {
        const std::vector<double> x = linspace(0.0, 1.0, n);
        const std::vector<double> y = sample(x, [](double t) { return std::sin(t); });
        const double te = std::abs(trapezoid(x, y) - exact);
        const double se = std::abs(simpson(x, y) - exact);
        if (t_prev > 0.0) {
            CHECK(t_prev / te > 3.6);   // second order
            CHECK(s_prev / se > 12.0);  // fourth order
        }
        t_prev = te;
        s_prev = se;
    }
    CHECK(s_prev < 1e-9);
}

TEST_CASE("simpson integrates an odd number of panels") {
    const std::vector<double> x = linspace(0.0, 2.0, 102);  // 101 intervals
    const std::vector<double> y = sample(x, [](double t) { return t * t * std::exp(-t); });
    const double exact = 2.0 - 10.0 * std::exp(-2.0);
    CHECK(simpson(x, y) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("cumulative_integral matches closed forms at every node") {
    const std::vector<double> x = linspace(0.0, 1.5, 301);
    const std::vector<double> y = sample(x, [](double t) { return std::cosh(t); });
    const std::vector<double> I = cumulative_integral(x, y);
    REQUIRE(I.size() == x.size());
    CHECK(I.front() == 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(I[i] == doctest::Approx(std::sinh(x[i])).epsilon(1e-10));
}

TEST_CASE("cumulative_integral stays accurate on strongly graded meshes") {
    // Fine geometric grading stresses the panel integration: interpolation in
    // shifted local coordinates must not lose digits to cancellation.
    const std::vector<double> x = graded(0.0, 1.0, 2000, 0.9967);
    const std::vector<double> y =
        sample(x, [](double t) { return std::exp(-(1.0 - t) / 0.01); });
    const std::vector<double> I = cumulative_integral(x, y);
    const double exact = 0.01 * (1.0 - std::exp(-100.0));
    CHECK(I.back() == doctest::Approx(exact).epsilon(1e-9));
    // And the increments stay fourth-order accurate near the graded end.
    const std::size_t k = x.size() - 2;
    const double inc = I[k + 1] - I[k];
    const double want = 0.01 * (std::exp(-(1.0 - x[k + 1]) / 0.01) - std::exp(-(1.0 - x[k]) / 0.01));
    CHECK(inc == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("adaptive_gauss reaches the requested tolerance") {
    const double got = adaptive_gauss([](double t) { return std::exp(-t * t); }, 0.0, 3.0, 1e-12);
    CHECK(got == doctest::Approx(0.88620734825957156).epsilon(1e-12));  // sqrt(pi)/2 erf(3)

    // A sharp interior peak forces actual subdivision.
    const double peak =
        adaptive_gauss([](double t) { return 1.0 / (1e-4 + (t - 0.61) * (t - 0.61)); }, 0.0, 1.0,
                       1e-10);
    const double exact = 100.0 * (std::atan(39.0) + std::atan(61.0));
    CHECK(peak == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("fit_line recovers slope, intercept and residual") {
    std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double t : x) y.push_back(2.5 * t - 1.25);
    LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(fit.intercept == doctest::Approx(-1.25).epsilon(1e-13));
    CHECK(fit.max_residual == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    y[2] += 0.5;  // bump one point; symmetric design keeps the slope readable
    fit = fit_line(x, y);
    CHECK(fit.max_residual > 0.3);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));  // bump at the centroid
}

TEST_CASE("lagrange_interpolate is exact on its nodes and for low degree") {
    const std::vector<double> x = {-1.0, -0.4, 0.3, 1.1};
    const std::vector<double> y = sample(x, [](double t) { return 1.0 + t * (2.0 + t * ((-3.0) + t * 0.7)); });
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(lagrange_interpolate(x, y, x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
    auto cubic = [](double t) { return 1.0 + t * (2.0 + t * ((-3.0) + t * 0.7)); };
    for (double xq : {-0.7, 0.0, 0.9})
        CHECK(lagrange_interpolate(x, y, xq) == doctest::Approx(cubic(xq)).epsilon(1e-13));
}
