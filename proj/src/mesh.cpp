#include "shgordon/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shgordon {

namespace {

double effective_layer_width(const ProblemParams& pp, const GradingSpec& g) {
    const double w = g.layer_width > 0.0 ? g.layer_width : 10.0 * pp.eps;
    return std::min(w, 0.8 * pp.radius);
}

// Smallest interval of a geometric partition of width W into m intervals.
double geometric_min_h(double W, std::size_t m, double ratio) {
    if (ratio >= 1.0) return W / double(m);
    const double h0 = W * (1.0 - ratio) / (1.0 - std::pow(ratio, double(m)));
    return h0 * std::pow(ratio, double(m - 1));
}

// Raises the ratio until the finest interval stays above h_floor. The floor
// only guards the conditioning of the linearized systems; the solver measures
// convergence in a stencil-weighted norm, so fine spacing does not inflate
// the reported residual.
double clamp_ratio(double W, std::size_t m, double ratio, double h_floor) {
    if (geometric_min_h(W, m, ratio) >= h_floor) return ratio;
    double lo = ratio, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (geometric_min_h(W, m, mid) < h_floor)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace

std::size_t required_layer_nodes(const ProblemParams& pp) {
    const double w = 10.0 * pp.eps;
    // Tiny slack so the exact-200 case is immune to quotient rounding.
    return static_cast<std::size_t>(std::ceil(w / (pp.eps / 20.0) - 1e-9));
}

std::size_t count_layer_nodes(const ProblemParams& pp, const Mesh& mesh) {
    const double lo = pp.radius - 10.0 * pp.eps;
    return static_cast<std::size_t>(
        std::count_if(mesh.nodes.begin(), mesh.nodes.end(), [lo](double r) { return r >= lo; }));
}

Mesh build_mesh(const ProblemParams& pp, std::size_t n_interior, const GradingSpec& grading) {
    pp.validate();
    if (n_interior < 50)
        throw std::invalid_argument("build_mesh: need at least 50 intervals, got " +
                                    std::to_string(n_interior));

    Mesh mesh;
    mesh.grading = grading;
    mesh.nodes.reserve(n_interior + 1);

    if (grading.kind == Grading::uniform) {
        for (std::size_t i = 0; i <= n_interior; ++i)
            mesh.nodes.push_back(pp.radius * double(i) / double(n_interior));
    } else {
        const double W = effective_layer_width(pp, grading);
        const std::size_t m_inner = n_interior / 2;
        const std::size_t m_outer = n_interior - m_inner;
        const double edge = pp.radius - W;

        const double h_floor = pp.eps / 65536.0;
        const double base = grading.ratio > 0.0 ? grading.ratio : 1.0 - 3.3 / double(m_inner);
        const double ratio = clamp_ratio(W, m_inner, base, h_floor);
        mesh.grading.ratio = ratio;

        for (std::size_t i = 0; i < m_outer; ++i)
            mesh.nodes.push_back(edge * double(i) / double(m_outer));
        // Inner intervals shrink by the ratio toward R; accumulate from the
        // layer edge and pin the last node to R exactly.
        const double h0 = ratio >= 1.0 ? W / double(m_inner)
                                       : W * (1.0 - ratio) / (1.0 - std::pow(ratio, double(m_inner)));
        double r = edge, h = h0;
        mesh.nodes.push_back(edge);
        for (std::size_t i = 1; i < m_inner; ++i) {
            r += h;
            h *= ratio;
            mesh.nodes.push_back(r);
        }
        mesh.nodes.push_back(pp.radius);
    }

    mesh.nodes.front() = 0.0;
    mesh.nodes.back() = pp.radius;
    validate_mesh(pp, mesh);
    return mesh;
}

void validate_mesh(const ProblemParams& pp, const Mesh& mesh) {
    if (mesh.nodes.size() < 3)
        throw std::runtime_error("mesh: too few nodes");
    if (mesh.nodes.front() != 0.0 || mesh.nodes.back() != pp.radius)
        throw std::runtime_error("mesh: endpoints must be exactly 0 and R");
    for (std::size_t i = 1; i < mesh.nodes.size(); ++i)
        if (!(mesh.nodes[i] > mesh.nodes[i - 1]))
            throw std::runtime_error("mesh: nodes must be strictly increasing");

    const std::size_t need = required_layer_nodes(pp);
    const std::size_t have = count_layer_nodes(pp, mesh);
    if (have < need)
        throw std::runtime_error("mesh: under-resolved boundary layer, have " +
                                 std::to_string(have) + " nodes in [R-10eps, R] but need " +
                                 std::to_string(need));
}

}  // namespace shgordon
