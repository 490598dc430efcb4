#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shgordon/solver.hpp"

namespace shgordon {

// Observable applied to the scaled slope eps u' or to the value u. tau is
// its Hoelder exponent on the relevant compact range; it drives the
// regularizing substitution of the weight quadratures, so a too-large tau
// silently degrades accuracy while a too-small one is merely wasteful.
struct HolderFunction {
    std::string name;
    std::function<double(double)> f;
    double tau = 1.0;

    double operator()(double s) const { return f(s); }
};

// Sampling estimate of the Hoelder constant sup |F(x)-F(y)|/|x-y|^tau over
// [lo, hi]; test-level guard that a declared exponent is plausible.
double holder_constant(const HolderFunction& F, double lo, double hi, int samples = 400);

// Full-window concentration weights. The integrands have an integrable
// t^(tau-1) endpoint singularity which the substitution t = s^(1/tau)
// removes; panels never evaluate at the endpoint itself.
//
//   gradient flavor: int_0^b [F(2 sinh(t/2)) - F(0)] / (2 sinh(t/2)) dt
//   value flavor:    int_0^b [F(t) - F(0)] / (2 sinh(t/2)) dt
double weight_Ii(const HolderFunction& F, double b, double abs_tol = 1e-10);
double weight_Iii(const HolderFunction& F, double b, double abs_tol = 1e-10);

// Truncated-window weights, lower limit k(p) > 0 (no singularity, no F(0)
// subtraction):
//
//   gradient flavor: int_kp^b F(2 sinh(t/2)) / (2 sinh(t/2)) dt
//   value flavor:    int_kp^b F(t) / (2 sinh(t/2)) dt
//
// kp <= 0 is a domain error (route those through weight_Ii / weight_Iii).
double weight_II(const HolderFunction& F, double b, double kp, bool gradient_flavor,
                 double abs_tol = 1e-10);

enum class PairingMode { gradient, value };

struct PairingResult {
    double value = 0.0;
    bool resolution_warning = false;  // layer too coarse for the declared tau
};

// Discrete pairing of the concentrating family against a continuous weight
// h, by Simpson-grade quadrature on the solution mesh:
//
//   full window:      int_0^R h(r) [F(X(r)) - F(0)] / eps dr
//   window [R-p eps]: int_{R-p eps}^R h(r) F(X(r)) / eps dr
//
// with X = eps |u'| (gradient mode) or X = u (value mode). As eps -> 0 these
// approach h(R) times the matching weight above.
PairingResult empirical_pairing(const RadialSolution& sol, const HolderFunction& F,
                                const std::function<double(double)>& h, PairingMode mode,
                                std::optional<double> window_p = std::nullopt);

// Named spatial weight for pairing tables.
struct SpatialWeight {
    std::string name;
    std::function<double(double)> h;
};

// Standard observables {s, s^2, |s|^(1/2), 2 asinh(s/2), 2 sinh(s/2)} and
// weights {1, r/R, cos(pi r/(2R)), hat at R/2}.
std::vector<HolderFunction> standard_observables();
std::vector<SpatialWeight> standard_weights(double R);

}  // namespace shgordon
