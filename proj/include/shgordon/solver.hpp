#pragma once

#include <vector>

#include "shgordon/mesh.hpp"
#include "shgordon/params.hpp"

namespace shgordon {

enum class ModelKind { nonlocal, local };

struct SolveOptions {
    double residual_tol   = 1e-10;  // scaled by max(1, |a0|)
    double step_tol       = 1e-12;  // sup-norm of the damped Newton step
    int max_iterations    = 60;
    int max_backtracks    = 30;     // Armijo halvings per step
    bool continuation     = true;   // eps-ladder retry on failure
};

struct RadialSolution {
    ProblemParams params;
    Mesh mesh;
    ModelKind model = ModelKind::nonlocal;
    std::vector<double> u;   // nodal values
    std::vector<double> du;  // nodal derivative (see reconstruct_derivative)
    double c = 1.0;          // multiplier of sinh u; 1 in the local model
    int newton_iterations = 0;
    double residual_norm = 0.0;  // stencil-weighted sup norm at the last iterate
    bool converged = false;
};

// Thrown when Newton (including the continuation ladder) fails; carries the
// last residual norm for diagnostics.
struct SolverFailure : std::runtime_error {
    double residual_norm;
    int iterations;
    SolverFailure(const std::string& what, double rn, int it)
        : std::runtime_error(what), residual_norm(rn), iterations(it) {}
};

// Coupled Newton on (u, C): the nodal equations plus the normalization row
// C (N/R^N) int r^{N-1} cosh u dr = 1 solved as one bordered system.
RadialSolution solve_nonlocal(const ProblemParams& pp, const Mesh& mesh,
                              const SolveOptions& opts = {});

// Oracle mode: outer Picard iteration on C around inner fixed-C Newton
// solves. Slower, structurally independent of the bordered elimination.
RadialSolution solve_nonlocal_picard(const ProblemParams& pp, const Mesh& mesh,
                                     const SolveOptions& opts = {});

// Local comparison model: C frozen at 1.
RadialSolution solve_local(const ProblemParams& pp, const Mesh& mesh,
                           const SolveOptions& opts = {});

// Fourth-order stencil derivative of the nodal profile; for converged
// boundary-value solutions the last node is closed with the Robin identity
// (a0 - u(R))/(gamma eps), which reproduces the discrete boundary operator
// exactly.
std::vector<double> reconstruct_derivative(const RadialSolution& sol);

// Conserved-flux functional on [R/2, R]:
//
//   Phi(t) = eps^2/2 u'(t)^2 + (N-1) eps^2 int_{R/2}^t u'^2/r dr - C cosh u(t)
//
// is constant along exact solutions; returns its nodal values, their mean
// (the conserved constant, approximately -C for thin layers) and the largest
// deviation from the mean.
struct FluxConstancy {
    double mean = 0.0;
    double max_deviation = 0.0;
    std::vector<double> t;
    std::vector<double> phi;
};
FluxConstancy integro_identity_check(const RadialSolution& sol);

// Discrete energy of an arbitrary nodal profile:
//
//   E = eps^2/2 int u'^2 r^{N-1} dr
//     + (R^N/N) log( (N/R^N) int cosh(u) r^{N-1} dr )
//     + eps/(2 gamma) R^{N-1} (u(R) - a0)^2.
double energy(const ProblemParams& pp, const Mesh& mesh, const std::vector<double>& u);

// Structural checks on a converged solution: monotonicity, bounds, the
// range of the nonlocal factor and the Robin condition. Throws on violation.
void validate_solution(const RadialSolution& sol);

}  // namespace shgordon
