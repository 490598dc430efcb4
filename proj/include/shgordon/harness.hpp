#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shgordon/expansions.hpp"
#include "shgordon/solver.hpp"

namespace shgordon {

struct MeshPolicy {
    std::size_t n = 3200;  // intervals per solve, same layout for every eps
    GradingSpec grading;
};

struct SweepPlan {
    ProblemParams base;            // eps field ignored; eps_list drives it
    std::vector<double> eps_list;  // strictly decreasing, at least 4 entries
    MeshPolicy mesh;
    std::vector<double> p_list = {0.0, 0.5, 1.0, 2.0};
    bool with_local = true;        // also run the comparison model
    bool with_half_height_q = true;  // add q = q* to the (p=0) layer channels

    void validate() const;
};

// One error channel across the sweep with its log-log least-squares fit.
// min_order == 0 marks an order-free channel (expansion guarantees decay but
// no rate); those skip the slope criterion and carry the monotonicity flag
// instead. trivial marks channels whose errors sit at the rounding floor
// (a0 = 0), where a fit would be noise.
struct RateFit {
    std::string channel;
    std::vector<double> eps;
    std::vector<double> err;
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;  // largest |log err - fit| over the sweep
    double min_order = 0.0;
    bool trivial = false;
    bool monotone = false;  // err strictly decreasing along the sweep
    bool pass = false;
};

RateFit fit_rate(const std::string& channel, const std::vector<double>& eps,
                 const std::vector<double>& err, double min_order);

// Same channel with the largest eps dropped; slope robustness probe.
RateFit refit_without_largest(const RateFit& fit);

struct SweepResult {
    SweepPlan plan;
    std::vector<RateFit> fits;
    std::vector<RadialSolution> nonlocal;  // one per eps
    std::vector<RadialSolution> local;     // empty unless plan.with_local
};

// Solves both models along eps_list and assembles every asymptotic error
// channel: nonlocal factor, boundary value/slope, the slope map applied to
// the computed boundary value, layer value/slope at every (p, q) probe,
// local-model boundary channels, and the nonlocal-vs-local gap channels
// measured against their exact limits.
SweepResult run_sweep(const SweepPlan& plan);

struct InterpolatedValue {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
    double u_error = 0.0;   // |cubic - quintic| stencil disagreement
    double du_error = 0.0;
};

// Cubic interpolation of u and u' at the layer point (quintic refit supplies
// the attached error estimate). Requests outside [0, R] are domain errors.
InterpolatedValue interpolate_at(const RadialSolution& sol, const LayerPoint& pt);
InterpolatedValue interpolate_at_radius(const RadialSolution& sol, double r);

// Radius where the boundary deviation |u(R) - u(r)| reaches half of
// |u(R) - b|, located by bisection on the cubic interpolant.
double find_half_height_radius(const RadialSolution& sol, double b);

// Near-boundary floors vs far-field decay along a sweep: at r = R - c eps
// both u and eps u' must stay above half their predicted limits k(c) and
// 2 sinh(k(c)/2); at r = R - sqrt(eps) both must fall below the decay
// envelope and decrease to zero along the sweep.
struct DichotomyReport {
    std::vector<double> c_list;
    std::vector<double> eps;
    // [c][eps] tables
    std::vector<std::vector<double>> u_near, eps_du_near;
    std::vector<double> floor_u, floor_du;
    // [eps] far-field values at r = R - sqrt(eps)
    std::vector<double> u_far, eps_du_far, envelope_far;
    bool near_pass = false;
    bool far_pass = false;
};

DichotomyReport dichotomy_check(const std::vector<RadialSolution>& sweep,
                                const std::vector<double>& c_list = {0.5, 1.0, 2.0});

}  // namespace shgordon
