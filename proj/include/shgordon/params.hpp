#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace shgordon {

// Parameter bundle for the radial boundary-layer problem
//
//   eps^2 ( u'' + (N-1)/r u' ) = C[u] sinh u   on (0, R),
//   u'(0) = 0,   u(R) + gamma eps u'(R) = a0,
//
// where C[u] normalizes the volume average of cosh u to one (nonlocal model)
// or is frozen at 1 (local model). The dimension is a real parameter: the
// radial operator makes sense for any N > 1.
struct ProblemParams {
    double dim    = 2.0;   // N > 1
    double radius = 1.0;   // R > 0
    double gamma  = 1.0;   // Robin coefficient, > 0
    double a0     = 1.0;   // boundary datum, >= 0 (negative data by odd symmetry)
    double eps    = 0.01;  // singular-perturbation parameter, > 0

    void validate() const {
        if (!(dim > 1.0))
            throw std::invalid_argument("ProblemParams: dim must be > 1, got " + std::to_string(dim));
        if (!(radius > 0.0))
            throw std::invalid_argument("ProblemParams: radius must be > 0, got " + std::to_string(radius));
        if (!(gamma > 0.0))
            throw std::invalid_argument("ProblemParams: gamma must be > 0, got " + std::to_string(gamma));
        if (!(eps > 0.0))
            throw std::invalid_argument("ProblemParams: eps must be > 0, got " + std::to_string(eps));
        if (!std::isfinite(a0))
            throw std::invalid_argument("ProblemParams: a0 must be finite");
    }
};

// Interior point anchored to the boundary layer,
//   r = R - p eps - (q/R) eps^2,  p >= 0, q real.
struct LayerPoint {
    double p = 0.0;
    double q = 0.0;

    void validate() const {
        if (!(p >= 0.0) || !std::isfinite(q))
            throw std::invalid_argument("LayerPoint: requires p >= 0 and finite q");
    }

    double radius_at(const ProblemParams& pp) const {
        return pp.radius - p * pp.eps - (q / pp.radius) * pp.eps * pp.eps;
    }
};

// Truncated two-term expansion
//
//   value(eps) = leading * eps^lead_order + correction * eps^(lead_order+1).
//
// Values carry lead_order = 0, slopes lead_order = -1. Kept as an explicit
// pair so consumers can form remainder channels against either term without
// re-deriving coefficients from evaluated numbers.
struct TwoTerm {
    double leading    = 0.0;
    double correction = 0.0;
    int lead_order    = 0;

    double leading_at(double eps) const { return leading * std::pow(eps, lead_order); }
    double correction_at(double eps) const { return correction * std::pow(eps, lead_order + 1); }
    double at(double eps) const { return leading_at(eps) + correction_at(eps); }
};

// Pointwise a-priori envelope max{|u(r)|, gamma eps |u'(r)|} <= amplitude *
// exp(-rate (R - r)/eps), valid for both models once eps is below the
// existence threshold.
struct DecayBound {
    double amplitude = 0.0;  // 2 |a0|
    double rate      = 0.0;  // (1/8) (cosh a0)^{-1/2}

    double at(const ProblemParams& pp, double r) const {
        return amplitude * std::exp(-rate * (pp.radius - r) / pp.eps);
    }
};

}  // namespace shgordon
