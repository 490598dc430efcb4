#include "shgordon/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

#include "shgordon/expansions.hpp"
#include "shgordon/numerics.hpp"

namespace shgordon {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

struct Discretization {
    const ProblemParams& pp;
    const Mesh& mesh;
    bool couple_c;     // true: C is the trailing unknown; false: C frozen
    double c_frozen = 1.0;

    std::size_t M;                   // last node index
    std::vector<double> rpow;        // r^{N-1}
    std::vector<double> tw;          // trapezoid weights
    std::vector<double> bc_w;        // one-sided derivative weights at R
    std::vector<double> row_w;       // per-row weights for the residual norm
    double vol_inv;                  // N / R^N

    Discretization(const ProblemParams& p, const Mesh& m, bool couple, double cfree)
        : pp(p), mesh(m), couple_c(couple), c_frozen(cfree) {
        M = mesh.size() - 1;
        rpow.resize(M + 1);
        for (std::size_t i = 0; i <= M; ++i)
            rpow[i] = std::pow(mesh.nodes[i], pp.dim - 1.0);
        tw.assign(M + 1, 0.0);
        for (std::size_t i = 1; i <= M; ++i) {
            const double h = mesh.h(i);
            tw[i - 1] += 0.5 * h;
            tw[i] += 0.5 * h;
        }
        bc_w = fd_weights(mesh.nodes[M],
                          {mesh.nodes[M - 2], mesh.nodes[M - 1], mesh.nodes[M]}, 1);
        vol_inv = pp.dim / std::pow(pp.radius, pp.dim);

        // Convergence is measured in a stencil-weighted sup norm: each
        // difference row is divided by its own eps^2/h^2 scale (capped at 1)
        // so that rounding in the large difference quotients on the finest
        // intervals cannot dominate the reported residual.
        const double e2 = pp.eps * pp.eps;
        row_w.assign(M + 2, 1.0);
        row_w[0] = std::min(1.0, mesh.h(1) * mesh.h(1) / (2.0 * pp.dim * e2));
        for (std::size_t i = 1; i < M; ++i)
            row_w[i] = std::min(1.0, mesh.h(i) * mesh.h(i + 1) / (2.0 * e2));
    }

    double weighted_norm(const Eigen::VectorXd& F) const {
        double rn = 0.0;
        for (Eigen::Index i = 0; i < F.size(); ++i)
            rn = std::max(rn, row_w[std::size_t(i)] * std::abs(F[i]));
        return rn;
    }

    std::size_t n_unknowns() const { return M + 1 + (couple_c ? 1 : 0); }

    double cvalue(const Eigen::VectorXd& x) const {
        return couple_c ? x[M + 1] : c_frozen;
    }

    // Volume average of cosh u times N/R^N (trapezoid).
    double cosh_average(const Eigen::VectorXd& x) const {
        double q = 0.0;
        for (std::size_t i = 0; i <= M; ++i) q += tw[i] * rpow[i] * std::cosh(x[i]);
        return vol_inv * q;
    }

    void residual(const Eigen::VectorXd& x, Eigen::VectorXd& F) const {
        const double e2 = pp.eps * pp.eps;
        const double N = pp.dim;
        const double C = cvalue(x);
        F.resize(n_unknowns());

        // r = 0: symmetry closure of the radial Laplacian, eps^2 N u''(0).
        {
            const double h1 = mesh.h(1);
            F[0] = e2 * N * 2.0 * (x[1] - x[0]) / (h1 * h1) - C * std::sinh(x[0]);
        }
        for (std::size_t i = 1; i < M; ++i) {
            const double hi = mesh.h(i), hn = mesh.h(i + 1);
            const double d2 = 2.0 * ((x[i + 1] - x[i]) / hn - (x[i] - x[i - 1]) / hi) / (hi + hn);
            const double d1 = (hi * hi * (x[i + 1] - x[i]) + hn * hn * (x[i] - x[i - 1])) /
                              (hi * hn * (hi + hn));
            F[i] = e2 * (d2 + (N - 1.0) / mesh.nodes[i] * d1) - C * std::sinh(x[i]);
        }
        {
            double dR = 0.0;
            for (int j = 0; j < 3; ++j) dR += bc_w[j] * x[M - 2 + j];
            F[M] = x[M] + pp.gamma * pp.eps * dR - pp.a0;
        }
        if (couple_c) F[M + 1] = C * cosh_average(x) - 1.0;
    }

    void jacobian(const Eigen::VectorXd& x, SpMat& J) const {
        const double e2 = pp.eps * pp.eps;
        const double N = pp.dim;
        const double C = cvalue(x);
        std::vector<Triplet> trip;
        trip.reserve(4 * (M + 2));

        {
            const double h1 = mesh.h(1);
            const double a = e2 * N * 2.0 / (h1 * h1);
            trip.emplace_back(0, 0, -a - C * std::cosh(x[0]));
            trip.emplace_back(0, 1, a);
            if (couple_c) trip.emplace_back(0, M + 1, -std::sinh(x[0]));
        }
        for (std::size_t i = 1; i < M; ++i) {
            const double hi = mesh.h(i), hn = mesh.h(i + 1);
            const double conv = (N - 1.0) / mesh.nodes[i];
            const double a_lo = e2 * (2.0 / (hi * (hi + hn)) - conv * hn / (hi * (hi + hn)));
            const double a_hi = e2 * (2.0 / (hn * (hi + hn)) + conv * hi / (hn * (hi + hn)));
            const double a_di = e2 * (-2.0 / (hi * hn) + conv * (hn - hi) / (hi * hn)) -
                                C * std::cosh(x[i]);
            trip.emplace_back(int(i), int(i) - 1, a_lo);
            trip.emplace_back(int(i), int(i), a_di);
            trip.emplace_back(int(i), int(i) + 1, a_hi);
            if (couple_c) trip.emplace_back(int(i), int(M) + 1, -std::sinh(x[i]));
        }
        for (int j = 0; j < 3; ++j) {
            double v = pp.gamma * pp.eps * bc_w[j];
            if (j == 2) v += 1.0;
            trip.emplace_back(int(M), int(M) - 2 + j, v);
        }
        if (couple_c) {
            for (std::size_t i = 0; i <= M; ++i)
                trip.emplace_back(int(M) + 1, int(i),
                                  C * vol_inv * tw[i] * rpow[i] * std::sinh(x[i]));
            trip.emplace_back(int(M) + 1, int(M) + 1, cosh_average(x));
        }

        J.resize(int(n_unknowns()), int(n_unknowns()));
        J.setFromTriplets(trip.begin(), trip.end());
    }
};

double inf_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// Leading-order layer profile; satisfies the Robin datum exactly through the
// definition of b, which is what makes it a good global starting point.
Eigen::VectorXd asymptotic_guess(const ProblemParams& pp, const Mesh& mesh, double b) {
    const std::size_t n = mesh.size();
    Eigen::VectorXd u(n);
    const double t4 = std::tanh(b / 4.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = t4 * std::exp(-(pp.radius - mesh.nodes[i]) / pp.eps);
        u[i] = 4.0 * std::atanh(w);
    }
    return u;
}

struct NewtonResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged = false;
};

NewtonResult newton(const Discretization& d, Eigen::VectorXd x, const SolveOptions& opts,
                    double tol_scale) {
    const double tol = opts.residual_tol * tol_scale;
    Eigen::VectorXd F, Ft, xt;
    SpMat J;
    Eigen::SparseLU<SpMat> lu;
    NewtonResult res;
    double last_step = 0.0;

    for (int it = 0; it <= opts.max_iterations; ++it) {
        d.residual(x, F);
        const double rn = d.weighted_norm(F);
        if (!std::isfinite(rn)) break;
        if (rn <= tol && (it == 0 || last_step <= opts.step_tol)) {
            res.x = x;
            res.iterations = it;
            res.residual_norm = rn;
            res.converged = true;
            return res;
        }
        if (it == opts.max_iterations) break;

        d.jacobian(x, J);
        lu.compute(J);
        if (lu.info() != Eigen::Success) break;
        Eigen::VectorXd delta = lu.solve(-F);
        if (!delta.allFinite()) break;

        // Armijo backtracking on the residual sup-norm.
        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            xt = x + lambda * delta;
            d.residual(xt, Ft);
            const double rt = d.weighted_norm(Ft);
            if (std::isfinite(rt) && rt <= (1.0 - 1e-4 * lambda) * rn) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) xt = x + lambda * delta;  // smallest step, let the loop decide
        last_step = lambda * inf_norm(delta);
        x = xt;
        res.iterations = it + 1;
    }
    d.residual(x, F);
    res.x = x;
    res.residual_norm = d.weighted_norm(F);
    res.converged = false;
    return res;
}

RadialSolution solve_impl(const ProblemParams& pp_in, const Mesh& mesh, ModelKind model,
                          const SolveOptions& opts, bool picard) {
    pp_in.validate();
    validate_mesh(pp_in, mesh);
    const double sign = pp_in.a0 < 0.0 ? -1.0 : 1.0;
    ProblemParams pp = pp_in;
    pp.a0 = std::abs(pp_in.a0);
    const double tol_scale = std::max(1.0, pp.a0);
    const double b = solve_b(pp);

    RadialSolution sol;
    sol.params = pp_in;
    sol.mesh = mesh;
    sol.model = model;

    auto run_newton = [&](double eps_eff, bool couple, double c_fixed,
                          const Eigen::VectorXd& x0, const SolveOptions& o) {
        ProblemParams q = pp;
        q.eps = eps_eff;
        Discretization d(q, mesh, couple, c_fixed);
        return newton(d, x0, o, tol_scale);
    };

    const bool couple = (model == ModelKind::nonlocal) && !picard;
    const std::size_t M = mesh.size() - 1;

    auto initial_state = [&](double eps_eff, bool with_c, double c0) {
        ProblemParams q = pp;
        q.eps = eps_eff;
        Eigen::VectorXd u = asymptotic_guess(q, mesh, b);
        if (!with_c) return u;
        Eigen::VectorXd x(M + 2);
        x.head(M + 1) = u;
        x[M + 1] = c0;
        return x;
    };

    const double c0 = model == ModelKind::nonlocal
                          ? std::clamp(expand_boundary(pp).c.at(pp.eps),
                                       1.0 / std::cosh(pp.a0), 1.0)
                          : 1.0;

    NewtonResult nr;
    if (picard) {
        // Outer fixed-point on C; every inner solve is a fixed-C Newton. Each
        // inner solve restarts from the asymptotic guess: warm-starting from
        // the previous profile lets the zero-step residual exit freeze u as
        // soon as the old profile fits the new C within tolerance, and the
        // frozen pair then reads as settled while still well off the coupled
        // solution. Cold starts keep every C-evaluation step-converged.
        SolveOptions inner = opts;
        inner.residual_tol = std::min(opts.residual_tol, 1e-13);
        const Eigen::VectorXd u_start = initial_state(pp.eps, false, 0.0);
        Eigen::VectorXd u = u_start;
        double C = c0;
        bool settled = false;
        for (int outer = 0; outer < 200 && !settled; ++outer) {
            nr = run_newton(pp.eps, false, C, u_start, inner);
            if (!nr.converged)
                throw SolverFailure("picard: inner Newton failed", nr.residual_norm,
                                    nr.iterations);
            u = nr.x;
            Discretization d(pp, mesh, false, C);
            const double Cn = 1.0 / d.cosh_average(u);
            sol.newton_iterations += nr.iterations;
            settled = std::abs(Cn - C) <= 1e-13 * std::max(1.0, std::abs(C));
            C = Cn;
        }
        if (!settled)
            throw SolverFailure("picard: outer iteration stalled", nr.residual_norm,
                                sol.newton_iterations);
        sol.c = C;
        // Report the residual of the fully coupled system.
        Eigen::VectorXd x(M + 2), F;
        x.head(M + 1) = u;
        x[M + 1] = C;
        Discretization dc(pp, mesh, true, 1.0);
        dc.residual(x, F);
        sol.residual_norm = dc.weighted_norm(F);
        sol.converged = true;
        sol.u.assign(u.data(), u.data() + M + 1);
    } else {
        nr = run_newton(pp.eps, couple, couple ? 0.0 : (model == ModelKind::local ? 1.0 : c0),
                        initial_state(pp.eps, couple, c0), opts);
        if (!nr.converged && opts.continuation) {
            // Walk the perturbation parameter down from 8x; each stage feeds
            // the next one's initial state.
            Eigen::VectorXd x = initial_state(8.0 * pp.eps, couple, c0);
            bool ok = true;
            for (double f : {8.0, 4.0, 2.0, 1.0}) {
                nr = run_newton(f * pp.eps, couple,
                                couple ? 0.0 : (model == ModelKind::local ? 1.0 : c0), x, opts);
                if (!nr.converged) {
                    ok = false;
                    break;
                }
                x = nr.x;
            }
            if (!ok)
                throw SolverFailure("newton: continuation ladder failed", nr.residual_norm,
                                    nr.iterations);
        }
        if (!nr.converged)
            throw SolverFailure("newton: no convergence", nr.residual_norm, nr.iterations);
        sol.newton_iterations = nr.iterations;
        sol.residual_norm = nr.residual_norm;
        sol.converged = true;
        sol.u.assign(nr.x.data(), nr.x.data() + M + 1);
        sol.c = couple ? nr.x[M + 1] : (model == ModelKind::local ? 1.0 : c0);
    }

    if (sign < 0)
        for (auto& v : sol.u) v = -v;
    sol.du = reconstruct_derivative(sol);
    return sol;
}

}  // namespace

RadialSolution solve_nonlocal(const ProblemParams& pp, const Mesh& mesh,
                              const SolveOptions& opts) {
    return solve_impl(pp, mesh, ModelKind::nonlocal, opts, false);
}

RadialSolution solve_nonlocal_picard(const ProblemParams& pp, const Mesh& mesh,
                                     const SolveOptions& opts) {
    return solve_impl(pp, mesh, ModelKind::nonlocal, opts, true);
}

RadialSolution solve_local(const ProblemParams& pp, const Mesh& mesh,
                           const SolveOptions& opts) {
    return solve_impl(pp, mesh, ModelKind::local, opts, false);
}

std::vector<double> reconstruct_derivative(const RadialSolution& sol) {
    auto du = derivative_on_nodes(sol.mesh.nodes, sol.u, 5);
    if (sol.converged) {
        const auto& pp = sol.params;
        du.back() = (pp.a0 - sol.u.back()) / (pp.gamma * pp.eps);
    }
    return du;
}

FluxConstancy integro_identity_check(const RadialSolution& sol) {
    const auto& pp = sol.params;
    const auto& r = sol.mesh.nodes;
    const double half = 0.5 * pp.radius;
    std::size_t j0 = 0;
    while (j0 < r.size() && r[j0] < half) ++j0;
    if (r.size() - j0 < 4)
        throw std::runtime_error("integro_identity_check: too few nodes in [R/2, R]");

    std::vector<double> t(r.begin() + j0, r.end());
    std::vector<double> g(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = sol.du[j0 + i];
        g[i] = d * d / t[i];
    }
    const auto acc = cumulative_integral(t, g);

    const double e2 = pp.eps * pp.eps;
    FluxConstancy out;
    out.t = t;
    out.phi.resize(t.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = sol.du[j0 + i];
        out.phi[i] = 0.5 * e2 * d * d + (pp.dim - 1.0) * e2 * acc[i] -
                     sol.c * std::cosh(sol.u[j0 + i]);
        mean += out.phi[i];
    }
    mean /= double(t.size());
    out.mean = mean;
    for (double v : out.phi)
        out.max_deviation = std::max(out.max_deviation, std::abs(v - mean));
    return out;
}

double energy(const ProblemParams& pp, const Mesh& mesh, const std::vector<double>& u) {
    pp.validate();
    if (u.size() != mesh.size()) throw std::invalid_argument("energy: profile size mismatch");
    const auto& r = mesh.nodes;
    const double N = pp.dim, R = pp.radius;

    const auto du = derivative_on_nodes(r, u, 5);
    std::vector<double> grad(u.size()), coshw(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double w = std::pow(r[i], N - 1.0);
        grad[i] = du[i] * du[i] * w;
        coshw[i] = std::cosh(u[i]) * w;
    }
    const double vol = std::pow(R, N) / N;
    const double grad_term = 0.5 * pp.eps * pp.eps * trapezoid(r, grad);
    const double log_term = vol * std::log(trapezoid(r, coshw) / vol);
    const double diff = u.back() - pp.a0;
    const double robin_term = pp.eps / (2.0 * pp.gamma) * std::pow(R, N - 1.0) * diff * diff;
    return grad_term + log_term + robin_term;
}

void validate_solution(const RadialSolution& sol) {
    const double sign = sol.params.a0 < 0.0 ? -1.0 : 1.0;
    const double a = std::abs(sol.params.a0);
    const double slack = 1e-9 * std::max(1.0, a);
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sol.u.size(); ++i) {
        const double v = sign * sol.u[i];
        if (v < -slack || v > a + slack)
            throw std::runtime_error("solution: value escapes [0, a0]");
        if (v < prev - slack)
            throw std::runtime_error("solution: profile not monotone toward the boundary");
        prev = std::max(prev, v);
    }
    if (sol.model == ModelKind::nonlocal) {
        if (sol.c < 1.0 / std::cosh(a) - slack || sol.c > 1.0 + slack)
            throw std::runtime_error("solution: nonlocal factor outside [sech-range, 1]");
    }
    const auto& pp = sol.params;
    const double robin = sol.u.back() + pp.gamma * pp.eps * sol.du.back() - pp.a0;
    if (std::abs(robin) > 1e-8 * std::max(1.0, a))
        throw std::runtime_error("solution: Robin condition violated");
}

}  // namespace shgordon
