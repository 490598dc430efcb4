#pragma once

#include "shgordon/params.hpp"

namespace shgordon {

// Closed-form two-term asymptotics of the boundary-layer solution. Everything
// here is eps-free arithmetic on the root b of
//
//   b + 2 gamma sinh(b/2) = a0,
//
// which fixes the leading boundary value shared by the nonlocal and local
// models. Negative boundary data are handled by odd symmetry: compute with
// |a0| and negate every u-side output (even outputs, like the nonlocal
// factor, are unchanged).

// Root of b + 2 gamma sinh(b/2) = a0 in [0, a0]. Unique since the left side
// is strictly increasing. Residual at return <= 1e-13 * max(1, a0).
// a0 == 0 returns 0 (trivial branch); a0 < 0 is a domain error.
double solve_b(const ProblemParams& pp);

struct BoundaryExpansion {
    double b = 0.0;  // leading boundary value
    TwoTerm c;       // nonlocal factor C[u]
    TwoTerm u_R;     // boundary value u(R)
    TwoTerm du_R;    // boundary slope u'(R), lead_order -1
};

// Two-term expansions of (C[u], u(R), u'(R)) for the nonlocal model.
BoundaryExpansion expand_boundary(const ProblemParams& pp);

// Dirichlet-to-Neumann two-term map: feeds a boundary-value expansion
// m + c eps through
//
//   (2/eps) sinh((m + c eps)/2) - (2/R) tanh(m/4) (N cosh^2(m/2) - 1)
//
// linearized to two terms. Requires m > 0 (layered regime); u_R.lead_order
// must be 0.
TwoTerm dtn_two_term(const ProblemParams& pp, const TwoTerm& u_R);

// Depth profile of the layer: k(p) in (0, b] solves
//
//   (1 + (N-1)/(2R)) log(tanh(b/4)/tanh(k/4))
//     + ((N-1)/(4R)) (tanh^2(k/4) - tanh^2(b/4)) = p,
//
// the left side being strictly decreasing from +inf to 0 on (0, b].
// Residual at return <= 1e-12. p == 0 returns b exactly; p < 0 is a domain
// error; b == 0 returns 0.
double solve_k_of_p(const ProblemParams& pp, double b, double p);

struct LayerExpansion {
    double k = 0.0;  // leading interior value k(p)
    double H = 0.0;  // first-order correction coefficient
    TwoTerm u;       // value at r = R - p eps - (q/R) eps^2
    TwoTerm du;      // slope there, lead_order -1
};

// Two-term expansions of the nonlocal solution at a layer point.
LayerExpansion layer_expansion(const ProblemParams& pp, const LayerPoint& pt);

struct LocalExpansion {
    double b = 0.0;
    TwoTerm v_R;     // boundary value of the local model
    TwoTerm dv_R;    // boundary slope
    double k = 0.0;
    double H = 0.0;  // local-model correction coefficient at the layer point
    TwoTerm v;       // value at the layer point
    TwoTerm dv;      // slope at the layer point
};

// Same expansions for the local model (nonlocal factor frozen at 1).
LocalExpansion local_model_expansions(const ProblemParams& pp, const LayerPoint& pt);

struct ComparisonLimits {
    double boundary_value_gap = 0.0;  // lim (u(R) - v(R))/eps
    double boundary_slope_gap = 0.0;  // lim (u'(R) - v'(R)) = -boundary_value_gap/gamma
    double layer_value_gap    = 0.0;  // lim (u(r_pq) - v(r_pq))/eps
    double layer_slope_gap    = 0.0;  // lim (u'(r_pq) - v'(r_pq)), an O(1) number
};

// Exact limits of the nonlocal-vs-local differences. The boundary slope gap
// is tied to the value gap through the shared Robin condition; the layer
// slope gap stays bounded away from zero, so the two models never collapse
// into each other at slope level.
ComparisonLimits comparison_limits(const ProblemParams& pp, const LayerPoint& pt);

// Offset coefficient q* of the depth-halving point: the radius r_eps where
// the boundary deviation |u(R) - u(r)| reaches half of |u(R) - b| satisfies
// (R - r_eps)/eps^2 -> q*/R with p = 0. At (0, q*) the value correction is
// exactly half of the boundary one.
double half_height_q(const ProblemParams& pp);

// Envelope max{|u|, gamma eps |u'|} <= 2|a0| exp(-(R-r)/(8 eps sqrt(cosh a0))).
DecayBound decay_bound(const ProblemParams& pp);

// Convenience evaluation of the envelope at radius r in [0, R].
double decay_envelope(const ProblemParams& pp, double r);

// Bundle of everything above for one parameter set and one layer point.
struct ExpansionReport {
    ProblemParams params;
    LayerPoint point;
    BoundaryExpansion boundary;
    LayerExpansion layer;
    LocalExpansion local;
    ComparisonLimits limits;
    DecayBound envelope;
};

ExpansionReport expansion_report(const ProblemParams& pp, const LayerPoint& pt);

}  // namespace shgordon
