#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "shgordon/mesh.hpp"

using namespace shgordon;

namespace {

ProblemParams params(double R, double eps) {
    ProblemParams pp;
    pp.radius = R;
    pp.eps = eps;
    pp.a0 = 2.0;
    return pp;
}

}  // namespace

TEST_CASE("geometric default concentrates the layer") {
    ProblemParams pp = params(1.0, 0.01);
    const Mesh mesh = build_mesh(pp, 400);
    CHECK(mesh.nodes.front() == 0.0);
    CHECK(mesh.nodes.back() == 1.0);
    CHECK(std::is_sorted(mesh.nodes.begin(), mesh.nodes.end()));
    CHECK(count_layer_nodes(pp, mesh) >= 200);
    CHECK(count_layer_nodes(pp, mesh) >= required_layer_nodes(pp));
}

TEST_CASE("required layer nodes") {
    ProblemParams pp = params(1.0, 0.01);
    CHECK(required_layer_nodes(pp) == 200);
    pp.eps = 0.0025;
    CHECK(required_layer_nodes(pp) == 200);  // one node per eps/20, scale-free
}

TEST_CASE("endpoints are exact for non-unit radius") {
    ProblemParams pp = params(2.0, 0.05);
    const Mesh mesh = build_mesh(pp, 600);
    CHECK(mesh.nodes.back() == 2.0);
    CHECK(mesh.nodes.front() == 0.0);
    validate_mesh(pp, mesh);
}

TEST_CASE("uniform grading under-resolves a thin layer") {
    ProblemParams pp = params(1.0, 0.001);
    GradingSpec g;
    g.kind = Grading::uniform;
    try {
        build_mesh(pp, 400, g);
        FAIL("expected an under-resolved error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("under-resolved") != std::string::npos);
        CHECK(msg.find("200") != std::string::npos);  // states the required count
    }
}

TEST_CASE("uniform grading works when the budget suffices") {
    ProblemParams pp = params(1.0, 0.05);
    GradingSpec g;
    g.kind = Grading::uniform;
    const Mesh mesh = build_mesh(pp, 500);
    validate_mesh(pp, mesh);
    // 500 uniform intervals on [0,1]: 0.5/0.002 nodes inside [0.5, 1.0]
    CHECK(count_layer_nodes(pp, mesh) >= 250);
}

TEST_CASE("interval budget floor") {
    ProblemParams pp = params(1.0, 0.01);
    CHECK_THROWS_AS(build_mesh(pp, 20), std::invalid_argument);
}

TEST_CASE("self-similar default ratio refines with the budget") {
    ProblemParams pp = params(1.0, 0.01);
    const Mesh coarse = build_mesh(pp, 800);
    const Mesh fine = build_mesh(pp, 3200);
    CHECK(coarse.grading.ratio > 0.0);
    CHECK(coarse.grading.ratio < 1.0);
    CHECK(fine.grading.ratio > coarse.grading.ratio);

    // Smallest interval shrinks roughly like 1/m, never below the floor.
    auto hmin = [](const Mesh& m) {
        double h = m.nodes[1] - m.nodes[0];
        for (std::size_t i = 2; i < m.size(); ++i) h = std::min(h, m.h(i));
        return h;
    };
    CHECK(hmin(fine) < hmin(coarse));
    CHECK(hmin(fine) >= pp.eps / 65536.0 * (1.0 - 1e-12));

    // The layer edge interval also shrinks: refinement is not all piled at R.
    auto edge_h = [&](const Mesh& m) {
        std::size_t i = 0;
        while (m.nodes[i] < pp.radius - 10.0 * pp.eps) ++i;
        return m.h(i + 1);
    };
    CHECK(edge_h(fine) < 0.5 * edge_h(coarse));
}

TEST_CASE("explicit ratio is honored when feasible") {
    ProblemParams pp = params(1.0, 0.02);
    GradingSpec g;
    g.ratio = 0.995;
    const Mesh mesh = build_mesh(pp, 800, g);
    CHECK(mesh.grading.ratio == doctest::Approx(0.995).epsilon(1e-12));
    // Successive inner intervals shrink by that ratio.
    const std::size_t M = mesh.size() - 1;
    const double r1 = mesh.h(M - 100) > 0 ? mesh.h(M - 99) / mesh.h(M - 100) : 0.0;
    CHECK(r1 == doctest::Approx(0.995).epsilon(1e-9));
}

TEST_CASE("fat layers clamp to the domain") {
    ProblemParams pp = params(1.0, 0.2);  // 10 eps = 2 R: layer wider than the ball
    const Mesh mesh = build_mesh(pp, 800);
    validate_mesh(pp, mesh);
    CHECK(mesh.nodes.back() == 1.0);
}

TEST_CASE("validate_mesh rejects corrupted node lists") {
    ProblemParams pp = params(1.0, 0.01);
    Mesh mesh = build_mesh(pp, 400);

    Mesh bad = mesh;
    bad.nodes.back() = 0.999;  // endpoint off
    CHECK_THROWS_AS(validate_mesh(pp, bad), std::runtime_error);

    bad = mesh;
    std::swap(bad.nodes[5], bad.nodes[6]);  // ordering broken
    CHECK_THROWS_AS(validate_mesh(pp, bad), std::runtime_error);

    bad = mesh;
    bad.nodes = {0.0, 1.0};
    CHECK_THROWS_AS(validate_mesh(pp, bad), std::runtime_error);
}
