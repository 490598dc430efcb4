#include "shgordon/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shgordon/numerics.hpp"

namespace shgordon {

namespace {

// Numeric instance of the two-term slope map: the sinh part takes the
// computed boundary value, the curvature part the leading term b.
double dtn_at(const ProblemParams& pp, double b, double uR) {
    return 2.0 / pp.eps * std::sinh(uR / 2.0) -
           2.0 / pp.radius * std::tanh(b / 4.0) *
               (pp.dim * std::cosh(b / 2.0) * std::cosh(b / 2.0) - 1.0);
}

std::string fmt_num(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

InterpolatedValue interpolate_window(const RadialSolution& sol, double r, std::size_t width_lo,
                                     std::size_t width_hi) {
    const auto& x = sol.mesh.nodes;
    std::size_t j = static_cast<std::size_t>(
        std::upper_bound(x.begin(), x.end(), r) - x.begin());
    if (j > 0) --j;  // x[j] <= r (< x[j+1] except at the right end)

    auto stencil = [&](std::size_t width, double& uq, double& dq) {
        std::size_t lo = j + 1 >= width / 2 ? j + 1 - width / 2 : 0;
        lo = std::min(lo, x.size() - width);
        const std::vector<double> xs(x.begin() + lo, x.begin() + lo + width);
        const std::vector<double> us(sol.u.begin() + lo, sol.u.begin() + lo + width);
        const std::vector<double> ds(sol.du.begin() + lo, sol.du.begin() + lo + width);
        uq = lagrange_interpolate(xs, us, r);
        dq = lagrange_interpolate(xs, ds, r);
    };

    InterpolatedValue out;
    out.r = r;
    double u2, d2;
    stencil(width_lo, out.u, out.du);
    stencil(width_hi, u2, d2);
    out.u_error = std::abs(out.u - u2);
    out.du_error = std::abs(out.du - d2);
    return out;
}

}  // namespace

void SweepPlan::validate() const {
    base.validate();
    if (eps_list.size() < 4)
        throw std::invalid_argument("SweepPlan: need at least 4 eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]) || !(eps_list[i] > 0.0))
            throw std::invalid_argument("SweepPlan: eps_list must be strictly decreasing and positive");
    for (double p : p_list)
        if (!(p >= 0.0)) throw std::invalid_argument("SweepPlan: p_list entries must be >= 0");
}

RateFit fit_rate(const std::string& channel, const std::vector<double>& eps,
                 const std::vector<double>& err, double min_order) {
    if (eps.size() != err.size() || eps.size() < 2)
        throw std::invalid_argument("fit_rate: bad table");
    RateFit fit;
    fit.channel = channel;
    fit.eps = eps;
    fit.err = err;
    fit.min_order = min_order;

    fit.monotone = true;
    for (std::size_t i = 1; i < err.size(); ++i)
        if (!(err[i] < err[i - 1])) fit.monotone = false;

    const double floor = 1e-14;
    fit.trivial = std::all_of(err.begin(), err.end(), [&](double e) { return e <= floor; });
    if (fit.trivial) {
        fit.pass = true;
        return fit;
    }

    std::vector<double> lx(eps.size()), ly(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        lx[i] = std::log(eps[i]);
        ly[i] = std::log(std::max(err[i], 1e-300));
    }
    const LineFit lf = fit_line(lx, ly);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.max_residual = lf.max_residual;
    fit.pass = min_order > 0.0 ? (fit.slope >= min_order && fit.max_residual <= 0.2)
                               : fit.monotone;
    return fit;
}

RateFit refit_without_largest(const RateFit& fit) {
    if (fit.eps.size() < 3) throw std::invalid_argument("refit_without_largest: too short");
    return fit_rate(fit.channel, {fit.eps.begin() + 1, fit.eps.end()},
                    {fit.err.begin() + 1, fit.err.end()}, fit.min_order);
}

SweepResult run_sweep(const SweepPlan& plan) {
    plan.validate();
    SweepResult out;
    out.plan = plan;

    ProblemParams pp = plan.base;
    pp.eps = plan.eps_list.front();
    const double b = solve_b(pp);

    std::vector<LayerPoint> probes;
    for (double p : plan.p_list) probes.push_back({p, 0.0});
    if (plan.with_half_height_q) probes.push_back({0.0, half_height_q(pp)});

    for (double eps : plan.eps_list) {
        pp.eps = eps;
        const Mesh mesh = build_mesh(pp, plan.mesh.n, plan.mesh.grading);
        out.nonlocal.push_back(solve_nonlocal(pp, mesh));
        if (plan.with_local) out.local.push_back(solve_local(pp, mesh));
    }

    const std::size_t ne = plan.eps_list.size();
    auto channel = [&](const std::string& name, double min_order, auto&& value) {
        std::vector<double> err(ne);
        for (std::size_t i = 0; i < ne; ++i) err[i] = value(i);
        out.fits.push_back(fit_rate(name, plan.eps_list, err, min_order));
    };

    channel("c_factor", 1.3, [&](std::size_t i) {
        ProblemParams q = plan.base;
        q.eps = plan.eps_list[i];
        return std::abs(out.nonlocal[i].c - expand_boundary(q).c.at(q.eps));
    });
    channel("boundary_value", 1.3, [&](std::size_t i) {
        ProblemParams q = plan.base;
        q.eps = plan.eps_list[i];
        return std::abs(out.nonlocal[i].u.back() - expand_boundary(q).u_R.at(q.eps));
    });
    channel("boundary_slope", 1.3, [&](std::size_t i) {
        ProblemParams q = plan.base;
        q.eps = plan.eps_list[i];
        return q.eps * std::abs(out.nonlocal[i].du.back() - expand_boundary(q).du_R.at(q.eps));
    });
    channel("dtn_map", 0.4, [&](std::size_t i) {
        ProblemParams q = plan.base;
        q.eps = plan.eps_list[i];
        return std::abs(out.nonlocal[i].du.back() - dtn_at(q, b, out.nonlocal[i].u.back()));
    });

    for (const auto& pt : probes) {
        const std::string tag = "_p" + fmt_num(pt.p) + "_q" + fmt_num(pt.q);
        channel("layer_value" + tag, 0.0, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            const auto le = layer_expansion(q, pt);
            const auto iv = interpolate_at(out.nonlocal[i], pt);
            return std::abs(iv.u - le.u.at(q.eps)) / q.eps;
        });
        channel("layer_slope" + tag, 0.0, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            const auto le = layer_expansion(q, pt);
            const auto iv = interpolate_at(out.nonlocal[i], pt);
            return std::abs(iv.du - le.du.at(q.eps));
        });
    }

    if (plan.with_local) {
        channel("local_boundary_value", 1.3, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            return std::abs(out.local[i].u.back() -
                            local_model_expansions(q, {0.0, 0.0}).v_R.at(q.eps));
        });
        channel("local_boundary_slope", 1.3, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            return q.eps * std::abs(out.local[i].du.back() -
                                    local_model_expansions(q, {0.0, 0.0}).dv_R.at(q.eps));
        });
        channel("gap_boundary_value", 0.0, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            const double gap = (out.nonlocal[i].u.back() - out.local[i].u.back()) / q.eps;
            return std::abs(gap - comparison_limits(q, {0.0, 0.0}).boundary_value_gap);
        });
        channel("gap_boundary_slope", 0.0, [&](std::size_t i) {
            ProblemParams q = plan.base;
            q.eps = plan.eps_list[i];
            const double gap = out.nonlocal[i].du.back() - out.local[i].du.back();
            return std::abs(gap - comparison_limits(q, {0.0, 0.0}).boundary_slope_gap);
        });
        for (double p : plan.p_list) {
            const LayerPoint pt{p, 0.0};
            const std::string tag = "_p" + fmt_num(p);
            channel("gap_layer_value" + tag, 0.0, [&](std::size_t i) {
                ProblemParams q = plan.base;
                q.eps = plan.eps_list[i];
                const auto a = interpolate_at(out.nonlocal[i], pt);
                const auto c = interpolate_at(out.local[i], pt);
                return std::abs((a.u - c.u) / q.eps -
                                comparison_limits(q, pt).layer_value_gap);
            });
            channel("gap_layer_slope" + tag, 0.0, [&](std::size_t i) {
                ProblemParams q = plan.base;
                q.eps = plan.eps_list[i];
                const auto a = interpolate_at(out.nonlocal[i], pt);
                const auto c = interpolate_at(out.local[i], pt);
                return std::abs((a.du - c.du) - comparison_limits(q, pt).layer_slope_gap);
            });
        }
    }
    return out;
}

InterpolatedValue interpolate_at_radius(const RadialSolution& sol, double r) {
    if (r < sol.mesh.nodes.front() || r > sol.mesh.nodes.back())
        throw std::domain_error("interpolate_at: radius outside the mesh");
    return interpolate_window(sol, r, 4, 6);
}

InterpolatedValue interpolate_at(const RadialSolution& sol, const LayerPoint& pt) {
    pt.validate();
    return interpolate_at_radius(sol, pt.radius_at(sol.params));
}

double find_half_height_radius(const RadialSolution& sol, double b) {
    const double sign = sol.params.a0 < 0.0 ? -1.0 : 1.0;
    const double uR = sign * sol.u.back();
    const double target = 0.5 * std::abs(uR - std::abs(b));
    if (!(target > 0.0))
        throw std::domain_error("find_half_height_radius: boundary correction is zero");

    // March inward until the deviation exceeds the target, then bisect on
    // the interpolant. The profile is monotone, so the bracket is clean.
    const auto& x = sol.mesh.nodes;
    std::size_t j = x.size() - 1;
    while (j > 0 && uR - sign * sol.u[j - 1] < target) --j;
    if (j == 0) throw std::runtime_error("find_half_height_radius: no bracket");

    double lo = x[j - 1], hi = x[j];
    auto dev = [&](double r) {
        return (uR - sign * interpolate_at_radius(sol, r).u) - target;
    };
    // dev(lo) >= 0 > dev(hi) up to interpolation wiggle
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dev(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * sol.params.radius) break;
    }
    return 0.5 * (lo + hi);
}

DichotomyReport dichotomy_check(const std::vector<RadialSolution>& sweep,
                                const std::vector<double>& c_list) {
    if (sweep.empty()) throw std::invalid_argument("dichotomy_check: empty sweep");
    DichotomyReport rep;
    rep.c_list = c_list;
    for (const auto& s : sweep) rep.eps.push_back(s.params.eps);

    const ProblemParams base = sweep.front().params;
    const double b = solve_b(base);

    rep.near_pass = true;
    for (double c : c_list) {
        const double k = solve_k_of_p(base, b, c);
        rep.floor_u.push_back(0.5 * k);
        rep.floor_du.push_back(std::sinh(k / 2.0));
        std::vector<double> un, dn;
        for (const auto& s : sweep) {
            const auto iv = interpolate_at(s, {c, 0.0});
            un.push_back(iv.u);
            dn.push_back(s.params.eps * iv.du);
            if (iv.u < rep.floor_u.back() || dn.back() < rep.floor_du.back())
                rep.near_pass = false;
        }
        rep.u_near.push_back(std::move(un));
        rep.eps_du_near.push_back(std::move(dn));
    }

    rep.far_pass = true;
    for (const auto& s : sweep) {
        const double r = s.params.radius - std::sqrt(s.params.eps);
        if (r < 0.0) throw std::domain_error("dichotomy_check: sqrt(eps) exceeds the radius");
        const auto iv = interpolate_at_radius(s, r);
        const double env = decay_envelope(s.params, r);
        rep.u_far.push_back(std::abs(iv.u));
        rep.eps_du_far.push_back(s.params.gamma * s.params.eps * std::abs(iv.du));
        rep.envelope_far.push_back(env);
        if (rep.u_far.back() > env || rep.eps_du_far.back() > env) rep.far_pass = false;
    }
    for (std::size_t i = 1; i < rep.u_far.size(); ++i)
        if (rep.u_far[i] > rep.u_far[i - 1]) rep.far_pass = false;
    return rep;
}

}  // namespace shgordon
