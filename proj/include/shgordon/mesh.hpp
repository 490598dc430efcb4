#pragma once

#include <cstddef>
#include <vector>

#include "shgordon/params.hpp"

namespace shgordon {

enum class Grading { uniform, geometric };

// Mesh layout descriptor. The geometric layout splits [0, R] at the layer
// edge R - layer_width and refines the inner zone toward R with the given
// interval ratio (< 1 refines). ratio <= 0 picks 1 - 3.3/m for m inner
// intervals, which balances the truncation error of the near-boundary and
// mid-layer zones and makes the scheme error scale like 1/m^2 uniformly in
// eps. layer_width <= 0 selects the default 10 eps, clamped to 0.8 R for fat
// layers.
struct GradingSpec {
    Grading kind      = Grading::geometric;
    double ratio      = 0.0;
    double layer_width = 0.0;
};

struct Mesh {
    std::vector<double> nodes;  // ascending, nodes.front() == 0, nodes.back() == R
    GradingSpec grading;        // descriptor used to build it (effective ratio)

    std::size_t size() const { return nodes.size(); }
    double h(std::size_t i) const { return nodes[i] - nodes[i - 1]; }  // i in [1, size)
};

// Number of nodes the layer zone [R - 10 eps, R] must contain: one per
// eps/20 of layer width. Equals 200 whenever the layer fits inside the
// domain.
std::size_t required_layer_nodes(const ProblemParams& pp);

std::size_t count_layer_nodes(const ProblemParams& pp, const Mesh& mesh);

// Builds a mesh with n_interior intervals. Throws std::invalid_argument for
// n_interior < 50, and a std::runtime_error mentioning the required node
// count when the layout cannot resolve the layer.
Mesh build_mesh(const ProblemParams& pp, std::size_t n_interior, const GradingSpec& grading = {});

// Validates orientation, endpoints and the layer-resolution invariant.
void validate_mesh(const ProblemParams& pp, const Mesh& mesh);

}  // namespace shgordon
