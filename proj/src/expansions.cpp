#include "shgordon/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shgordon {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

// Shared hyperbolic quantities of the leading boundary value.
struct BCoeffs {
    double N, R, g;
    double b;
    double sh2, ch2;   // sinh(b/2), cosh(b/2)
    double th4, s4;    // tanh(b/4), sech^2(b/4)
    double sh4sq;      // sinh^2(b/4)
    double D;          // gamma cosh(b/2) + 1

    BCoeffs(const ProblemParams& pp, double b_) {
        N = pp.dim;
        R = pp.radius;
        g = pp.gamma;
        b = b_;
        sh2 = std::sinh(b / 2);
        ch2 = std::cosh(b / 2);
        th4 = std::tanh(b / 4);
        s4 = sech(b / 4) * sech(b / 4);
        sh4sq = std::sinh(b / 4) * std::sinh(b / 4);
        D = g * ch2 + 1.0;
    }

    // 1 + (N-1)/(2R) x, the curvature weight attached to sech^2 terms
    double W(double x) const { return 1.0 + (N - 1.0) / (2.0 * R) * x; }
};

// Depth profile residual A(k) - p; A is strictly decreasing on (0, b].
double depth_residual(const BCoeffs& c, double k, double p) {
    const double tk = std::tanh(k / 4);
    const double A = (1.0 + (c.N - 1.0) / (2.0 * c.R)) * std::log(c.th4 / tk)
                   + (c.N - 1.0) / (4.0 * c.R) * (tk * tk - c.th4 * c.th4);
    return A - p;
}

// Correction coefficient at a layer point; the local-model variant replaces
// the (N cosh^2(b/2) - 1) factor by (N - 1) and drops the p-term.
double correction_H(const BCoeffs& c, double k, double p, double q, bool nonlocal) {
    const double s4k = sech(k / 4) * sech(k / 4);
    const double front = nonlocal ? (c.N * c.ch2 * c.ch2 - 1.0) : (c.N - 1.0);
    const double drift = nonlocal ? (2.0 * q - 4.0 * c.N * p * c.sh4sq) : (2.0 * q);
    return c.g * front * c.s4 / c.D * (c.W(c.s4) / c.W(s4k)) - drift / c.W(s4k);
}

// Slope expansion at a layer point with leading value k and correction H;
// the curvature term 2N sinh^2(b/4) is the nonlocal factor's footprint and
// is absent in the local model.
TwoTerm layer_slope(const BCoeffs& c, double k, double H, bool nonlocal) {
    const double shk = std::sinh(k / 2);
    const double s4k = sech(k / 4) * sech(k / 4);
    const double curvature = (nonlocal ? 2.0 * c.N * c.sh4sq : 0.0)
                           + (c.N - 1.0) / 2.0 * s4k
                           - H / 2.0 * std::cosh(k / 2);
    return TwoTerm{2.0 * shk, -2.0 * shk / c.R * curvature, -1};
}

double solve_b_positive(double g, double a0) {
    // Strictly increasing g(b) = b + 2 gamma sinh(b/2) - a0 with a sign
    // change on [0, a0]; damped Newton stays inside the bracket.
    double lo = 0.0, hi = a0;
    double b = a0 / (1.0 + g);  // linearization at 0
    const double tol = 1e-14 * std::max(1.0, a0);
    for (int it = 0; it < 200; ++it) {
        const double f = b + 2.0 * g * std::sinh(b / 2) - a0;
        if (f > 0)
            hi = b;
        else
            lo = b;
        if (std::abs(f) <= tol) return b;
        const double df = 1.0 + g * std::cosh(b / 2);
        double bn = b - f / df;
        if (!(bn > lo && bn < hi)) bn = 0.5 * (lo + hi);
        if (bn == b) return b;
        b = bn;
    }
    return b;
}

}  // namespace

double solve_b(const ProblemParams& pp) {
    pp.validate();
    if (pp.a0 < 0.0) throw std::domain_error("solve_b: a0 < 0 (use odd symmetry)");
    if (pp.a0 == 0.0) return 0.0;
    return solve_b_positive(pp.gamma, pp.a0);
}

BoundaryExpansion expand_boundary(const ProblemParams& pp) {
    pp.validate();
    const double sign = pp.a0 < 0.0 ? -1.0 : 1.0;
    ProblemParams ap = pp;
    ap.a0 = std::abs(pp.a0);

    BoundaryExpansion out;
    out.c = TwoTerm{1.0, 0.0, 0};
    if (ap.a0 == 0.0) {
        out.u_R = TwoTerm{0.0, 0.0, 0};
        out.du_R = TwoTerm{0.0, 0.0, -1};
        return out;
    }

    const BCoeffs c(ap, solve_b_positive(ap.gamma, ap.a0));
    const double T = (c.N * c.ch2 * c.ch2 - 1.0) * c.th4 / c.D;
    out.b = sign * c.b;
    out.c = TwoTerm{1.0, -2.0 * c.N / c.R * (c.ch2 - 1.0), 0};
    out.u_R = TwoTerm{sign * c.b, sign * 2.0 * c.g / c.R * T, 0};
    out.du_R = TwoTerm{sign * 2.0 * c.sh2, -sign * 2.0 / c.R * T, -1};
    return out;
}

TwoTerm dtn_two_term(const ProblemParams& pp, const TwoTerm& u_R) {
    pp.validate();
    if (u_R.lead_order != 0)
        throw std::invalid_argument("dtn_two_term: boundary value must have lead_order 0");
    const double m = u_R.leading;
    if (!(m > 0.0))
        throw std::domain_error("dtn_two_term: requires a positive leading boundary value");
    const double N = pp.dim, R = pp.radius;
    const double curb = 2.0 / R * std::tanh(m / 4) * (N * std::cosh(m / 2) * std::cosh(m / 2) - 1.0);
    return TwoTerm{2.0 * std::sinh(m / 2),
                   u_R.correction * std::cosh(m / 2) - curb, -1};
}

double solve_k_of_p(const ProblemParams& pp, double b, double p) {
    pp.validate();
    if (p < 0.0) throw std::domain_error("solve_k_of_p: p < 0");
    if (b < 0.0) throw std::domain_error("solve_k_of_p: b < 0 (use odd symmetry)");
    if (b == 0.0) return 0.0;
    if (p == 0.0) return b;

    const BCoeffs c(pp, b);
    // Initial lower guard from the flat-geometry profile (drops both 1/R
    // corrections), halved once; the residual is decreasing in k, so expand
    // the guard downward until it brackets.
    double lo = 0.5 * std::min(b, 4.0 * std::atanh(c.th4 * std::exp(-p)));
    while (depth_residual(c, lo, p) < 0.0) lo *= 0.5;
    double hi = b;
    double k = std::min(b, 4.0 * std::atanh(c.th4 * std::exp(-p)));
    if (!(k > lo && k < hi)) k = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = depth_residual(c, k, p);
        if (f > 0)
            lo = k;  // residual positive means k below the root
        else
            hi = k;
        if (std::abs(f) <= 1e-13) return k;
        const double tk = std::tanh(k / 4);
        const double dA = -(1.0 + (c.N - 1.0) / (2.0 * c.R)) / (2.0 * std::sinh(k / 2))
                        + (c.N - 1.0) / (8.0 * c.R) * tk * (1.0 - tk * tk);
        double kn = k - f / dA;
        if (!(kn > lo && kn < hi)) kn = 0.5 * (lo + hi);
        if (kn == k) return k;
        k = kn;
    }
    return k;
}

LayerExpansion layer_expansion(const ProblemParams& pp, const LayerPoint& pt) {
    pp.validate();
    pt.validate();
    const double sign = pp.a0 < 0.0 ? -1.0 : 1.0;
    ProblemParams ap = pp;
    ap.a0 = std::abs(pp.a0);

    LayerExpansion out;
    out.u = TwoTerm{0.0, 0.0, 0};
    out.du = TwoTerm{0.0, 0.0, -1};
    if (ap.a0 == 0.0) return out;

    const BCoeffs c(ap, solve_b_positive(ap.gamma, ap.a0));
    const double k = solve_k_of_p(ap, c.b, pt.p);
    const double H = correction_H(c, k, pt.p, pt.q, true);
    out.k = sign * k;
    out.H = H;
    out.u = TwoTerm{sign * k, sign * H * std::sinh(k / 2) / c.R, 0};
    out.du = layer_slope(c, k, H, true);
    out.du.leading *= sign;
    out.du.correction *= sign;
    return out;
}

LocalExpansion local_model_expansions(const ProblemParams& pp, const LayerPoint& pt) {
    pp.validate();
    pt.validate();
    const double sign = pp.a0 < 0.0 ? -1.0 : 1.0;
    ProblemParams ap = pp;
    ap.a0 = std::abs(pp.a0);

    LocalExpansion out;
    out.v_R = TwoTerm{0.0, 0.0, 0};
    out.dv_R = TwoTerm{0.0, 0.0, -1};
    out.v = TwoTerm{0.0, 0.0, 0};
    out.dv = TwoTerm{0.0, 0.0, -1};
    if (ap.a0 == 0.0) return out;

    const BCoeffs c(ap, solve_b_positive(ap.gamma, ap.a0));
    out.b = sign * c.b;
    const double Tloc = (c.N - 1.0) / c.R * 2.0 * c.th4 / c.D;
    out.v_R = TwoTerm{sign * c.b, sign * c.g * Tloc, 0};
    out.dv_R = TwoTerm{sign * 2.0 * c.sh2, -sign * Tloc, -1};

    const double k = solve_k_of_p(ap, c.b, pt.p);
    const double H = correction_H(c, k, pt.p, pt.q, false);
    out.k = sign * k;
    out.H = H;
    out.v = TwoTerm{sign * k, sign * H * std::sinh(k / 2) / c.R, 0};
    out.dv = layer_slope(c, k, H, false);
    out.dv.leading *= sign;
    out.dv.correction *= sign;
    return out;
}

ComparisonLimits comparison_limits(const ProblemParams& pp, const LayerPoint& pt) {
    pp.validate();
    pt.validate();
    const double sign = pp.a0 < 0.0 ? -1.0 : 1.0;
    ProblemParams ap = pp;
    ap.a0 = std::abs(pp.a0);

    ComparisonLimits out;
    if (ap.a0 == 0.0) return out;

    const BCoeffs c(ap, solve_b_positive(ap.gamma, ap.a0));
    out.boundary_value_gap =
        sign * c.N / c.R * 2.0 * c.g * c.sh2 * (c.ch2 - 1.0) / c.D;
    out.boundary_slope_gap = -out.boundary_value_gap / c.g;

    const double k = solve_k_of_p(ap, c.b, pt.p);
    const double shk = std::sinh(k / 2);
    const double s4k = sech(k / 4) * sech(k / 4);
    // Shared factor gamma W(sech^2(b/4))/D + p of both layer gaps.
    const double P = c.g * c.W(c.s4) / c.D + pt.p;
    out.layer_value_gap =
        sign * 4.0 * c.N * c.sh4sq * shk / (c.R + (c.N - 1.0) / 2.0 * s4k) * P;
    out.layer_slope_gap =
        -sign * 4.0 * c.N / c.R * c.sh4sq * shk * (1.0 - std::cosh(k / 2) / c.W(s4k) * P);
    return out;
}

double half_height_q(const ProblemParams& pp) {
    pp.validate();
    ProblemParams ap = pp;
    ap.a0 = std::abs(pp.a0);
    if (ap.a0 == 0.0) return 0.0;
    const BCoeffs c(ap, solve_b_positive(ap.gamma, ap.a0));
    // Halves the boundary correction: H(0, q*) = H(0, 0)/2.
    return c.g / 4.0 * c.W(c.s4) * (c.N * c.ch2 * c.ch2 - 1.0) * c.s4 / c.D;
}

DecayBound decay_bound(const ProblemParams& pp) {
    pp.validate();
    const double a = std::abs(pp.a0);
    return DecayBound{2.0 * a, 0.125 / std::sqrt(std::cosh(a))};
}

double decay_envelope(const ProblemParams& pp, double r) {
    if (r < 0.0 || r > pp.radius)
        throw std::domain_error("decay_envelope: r outside [0, R]");
    return decay_bound(pp).at(pp, r);
}

ExpansionReport expansion_report(const ProblemParams& pp, const LayerPoint& pt) {
    ExpansionReport rep;
    rep.params = pp;
    rep.point = pt;
    rep.boundary = expand_boundary(pp);
    rep.layer = layer_expansion(pp, pt);
    rep.local = local_model_expansions(pp, pt);
    rep.limits = comparison_limits(pp, pt);
    rep.envelope = decay_bound(pp);
    return rep;
}

}  // namespace shgordon
