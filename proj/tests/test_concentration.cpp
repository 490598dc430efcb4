#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "shgordon/concentration.hpp"
#include "shgordon/expansions.hpp"
#include "shgordon/mesh.hpp"
#include "shgordon/solver.hpp"

using namespace shgordon;

namespace {

// Root of m + 2 sinh(m/2) = 2, i.e. the boundary level for a0 = 2, gamma = 1.
constexpr double kBRef = 0.98014613696109554843;

HolderFunction named(const char* name) {
    for (auto& F : standard_observables())
        if (F.name == name) return F;
    throw std::runtime_error("no such observable");
}

ProblemParams reference(double eps) {
    ProblemParams pp;
    pp.a0 = 2.0;
    pp.eps = eps;
    return pp;
}

}  // namespace

TEST_CASE("gradient weights with polynomial closed forms") {
    const HolderFunction sq = named("square");
    for (double b : {0.3, 1.0, kBRef, 2.0})
        CHECK(weight_Ii(sq, b) == doctest::Approx(4.0 * (std::cosh(b / 2) - 1.0)).epsilon(1e-10));

    // Identity observable makes the gradient integrand exactly 1.
    const HolderFunction id = named("identity");
    for (double b : {0.5, kBRef, 1.7})
        CHECK(weight_Ii(id, b) == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("value weights against independently computed integrals") {
    const HolderFunction id = named("identity");
    CHECK(weight_Iii(id, kBRef) == doctest::Approx(0.96728414138425708168).epsilon(1e-10));
    const HolderFunction sq = named("square");
    CHECK(weight_Iii(sq, 1.0) == doctest::Approx(0.4897819555333389479).epsilon(1e-10));
    // F(t) = 2 sinh(t/2) cancels the density: the weight is the window length.
    const HolderFunction sh = named("sinh2");
    CHECK(weight_Iii(sh, 1.3) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("slope observable 2 asinh(s/2) turns gradient weights into value weights") {
    const HolderFunction as = named("asinh2");
    const HolderFunction id = named("identity");
    for (double b : {0.4, kBRef, 1.5})
        CHECK(weight_Ii(as, b) == doctest::Approx(weight_Iii(id, b)).epsilon(1e-11));
}

TEST_CASE("square-root observable has an endpoint singularity the weights absorb") {
    const HolderFunction rt = named("root");
    CHECK(rt.tau == doctest::Approx(0.5));
    CHECK(weight_Ii(rt, 1.0) == doctest::Approx(1.9917522795715838339).epsilon(1e-9));
}

TEST_CASE("truncated weights agree with closed forms and splice with full ones") {
    const HolderFunction sq = named("square");
    const double got = weight_II(sq, 1.0, 0.3, true);
    CHECK(got == doctest::Approx(4.0 * (std::cosh(0.5) - std::cosh(0.15))).epsilon(1e-10));

    const HolderFunction id = named("identity");
    CHECK(weight_II(id, 1.0, 0.3, false) ==
          doctest::Approx(0.6867240898430491348).epsilon(1e-10));
    // Window additivity: [0, kp] + [kp, b] = [0, b] for observables with F(0)=0.
    const double whole = weight_Iii(id, kBRef);
    const double low = weight_Iii(id, 0.3);
    const double high = weight_II(id, kBRef, 0.3, false);
    CHECK(low + high == doctest::Approx(whole).epsilon(1e-10));

    CHECK_THROWS_AS(weight_II(id, 1.0, 0.0, true), std::domain_error);
    CHECK_THROWS_AS(weight_II(id, 1.0, -0.2, false), std::domain_error);
}

TEST_CASE("holder_constant estimates match analytic moduli") {
    const double range = 2.0 * std::sinh(1.0);
    CHECK(holder_constant(named("identity"), 0.0, range) == doctest::Approx(1.0).epsilon(1e-6));
    // Square: sup (x^2-y^2)/(x-y) = x+y on [0, L].
    CHECK(holder_constant(named("square"), 0.0, 3.0) == doctest::Approx(6.0).epsilon(0.02));
    // Root with tau = 1/2: the constant is exactly 1, attained against y = 0;
    // the sampler sees ~0.95 of it.
    CHECK(holder_constant(named("root"), 0.0, 3.0) == doctest::Approx(1.0).epsilon(0.08));
    for (const auto& F : standard_observables()) {
        const double c = holder_constant(F, 0.0, range);
        CHECK(c > 0.0);
        CHECK(c < 10.0);
    }
}

TEST_CASE("standard observable and weight tables") {
    const auto obs = standard_observables();
    REQUIRE(obs.size() == 5);
    for (const auto& F : obs) CHECK(F(0.0) == 0.0);

    const auto wts = standard_weights(1.0);
    REQUIRE(wts.size() == 4);
    CHECK(wts[0].h(1.0) == doctest::Approx(1.0));         // constant
    CHECK(wts[1].h(1.0) == doctest::Approx(1.0));         // linear r/R
    CHECK(wts[2].h(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));  // cosine
    CHECK(wts[3].h(0.5) == doctest::Approx(1.0));         // hat peaks at R/2
    CHECK(wts[3].h(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("empirical pairings approach the concentration weights") {
    const HolderFunction id = named("identity");
    auto one = [](double) { return 1.0; };

    double prev_grad = 0.0, prev_val = 0.0;
    for (double eps : {0.04, 0.02}) {
        ProblemParams pp = reference(eps);
        const Mesh mesh = build_mesh(pp, 1600);
        const RadialSolution sol = solve_nonlocal(pp, mesh);
        const double b = solve_b(pp);

        const PairingResult grad = empirical_pairing(sol, id, one, PairingMode::gradient);
        CHECK(!grad.resolution_warning);
        const double gerr = std::abs(grad.value - weight_Ii(id, b));
        CHECK(gerr < 0.02 * weight_Ii(id, b));
        if (prev_grad > 0.0) CHECK(gerr < prev_grad);
        prev_grad = gerr;

        // Value mode converges at the same order but a larger constant.
        const PairingResult val = empirical_pairing(sol, id, one, PairingMode::value);
        const double verr = std::abs(val.value - weight_Iii(id, b));
        CHECK(verr < 0.05 * weight_Iii(id, b));
        if (prev_val > 0.0) CHECK(verr < 0.55 * prev_val);
        prev_val = verr;
    }
}

TEST_CASE("windowed pairing over the whole layer matches the full window") {
    ProblemParams pp = reference(0.02);
    const Mesh mesh = build_mesh(pp, 3200);
    const RadialSolution sol = solve_nonlocal(pp, mesh);
    const HolderFunction id = named("identity");
    auto one = [](double) { return 1.0; };

    const double full = empirical_pairing(sol, id, one, PairingMode::value).value;
    const double wide = empirical_pairing(sol, id, one, PairingMode::value, 10.0).value;
    // Outside [R - 10 eps, R] the profile is below 1e-4, so the tails differ
    // by O(1e-3) at most.
    CHECK(wide == doctest::Approx(full).epsilon(5e-3));
}
