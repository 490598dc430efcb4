#include "shgordon/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shgordon/numerics.hpp"

namespace shgordon {

namespace {

// int_0^b g(t) dt for g with an integrable t^(tau-1) endpoint behavior,
// through the substitution t = s^(1/tau).
double singular_integral(const std::function<double(double)>& g, double b, double tau,
                         double abs_tol) {
    if (b <= 0.0) return 0.0;
    if (tau >= 1.0) return adaptive_gauss(g, 0.0, b, abs_tol);
    const double inv = 1.0 / tau;
    auto phi = [&](double s) { return g(std::pow(s, inv)) * inv * std::pow(s, inv - 1.0); };
    return adaptive_gauss(phi, 0.0, std::pow(b, tau), abs_tol);
}

void require_tau(double tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw std::domain_error("HolderFunction: tau must lie in (0, 1]");
}

}  // namespace

double holder_constant(const HolderFunction& F, double lo, double hi, int samples) {
    require_tau(F.tau);
    if (!(hi > lo)) throw std::invalid_argument("holder_constant: empty range");
    double L = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / samples;
        // nested scales probe both local and far-pair quotients
        for (double d = (hi - lo) * 0.5; d > 1e-9 * (hi - lo); d *= 0.25) {
            const double y = std::min(hi, x + d);
            if (y <= x) continue;
            L = std::max(L, std::abs(F(y) - F(x)) / std::pow(y - x, F.tau));
        }
    }
    return L;
}

double weight_Ii(const HolderFunction& F, double b, double abs_tol) {
    require_tau(F.tau);
    if (b < 0.0) throw std::domain_error("weight_Ii: b < 0");
    const double F0 = F(0.0);
    auto g = [&](double t) {
        const double s = 2.0 * std::sinh(t / 2.0);
        return (F(s) - F0) / s;
    };
    return singular_integral(g, b, F.tau, abs_tol);
}

double weight_Iii(const HolderFunction& F, double b, double abs_tol) {
    require_tau(F.tau);
    if (b < 0.0) throw std::domain_error("weight_Iii: b < 0");
    const double F0 = F(0.0);
    auto g = [&](double t) { return (F(t) - F0) / (2.0 * std::sinh(t / 2.0)); };
    return singular_integral(g, b, F.tau, abs_tol);
}

double weight_II(const HolderFunction& F, double b, double kp, bool gradient_flavor,
                 double abs_tol) {
    require_tau(F.tau);
    if (!(kp > 0.0))
        throw std::domain_error("weight_II: window depth kp must be positive");
    if (kp > b) throw std::domain_error("weight_II: kp must lie in (0, b]");
    auto g = [&](double t) {
        const double s = 2.0 * std::sinh(t / 2.0);
        return gradient_flavor ? F(s) / s : F(t) / s;
    };
    return adaptive_gauss(g, kp, b, abs_tol);
}

PairingResult empirical_pairing(const RadialSolution& sol, const HolderFunction& F,
                                const std::function<double(double)>& h, PairingMode mode,
                                std::optional<double> window_p) {
    require_tau(F.tau);
    if (!sol.converged) throw std::invalid_argument("empirical_pairing: needs a converged solution");
    const auto& pp = sol.params;
    const auto& r = sol.mesh.nodes;

    auto X = [&](std::size_t i) {
        return mode == PairingMode::gradient ? pp.eps * std::abs(sol.du[i]) : sol.u[i];
    };

    PairingResult out;
    const std::size_t need =
        static_cast<std::size_t>(std::ceil(200.0 / F.tau - 1e-9));
    out.resolution_warning = count_layer_nodes(pp, sol.mesh) < need;

    if (!window_p) {
        const double F0 = F(0.0);
        std::vector<double> integrand(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            integrand[i] = h(r[i]) * (F(X(i)) - F0) / pp.eps;
        out.value = simpson(r, integrand);
        return out;
    }

    const double p = *window_p;
    if (!(p >= 0.0)) throw std::domain_error("empirical_pairing: window p must be >= 0");
    if (p == 0.0) {
        out.value = 0.0;
        return out;
    }
    const double rp = pp.radius - p * pp.eps;
    if (rp < 0.0) throw std::domain_error("empirical_pairing: window exceeds the domain");

    // Nodes inside [rp, R], plus rp itself by cubic interpolation.
    std::size_t j = static_cast<std::size_t>(
        std::lower_bound(r.begin(), r.end(), rp) - r.begin());
    std::vector<double> xs, ys;
    if (r[j] > rp && j > 0) {
        std::size_t lo = j >= 2 ? j - 2 : 0;
        lo = std::min(lo, r.size() - 4);
        const std::vector<double> xn(r.begin() + lo, r.begin() + lo + 4);
        const std::vector<double> un(sol.u.begin() + lo, sol.u.begin() + lo + 4);
        const std::vector<double> dn(sol.du.begin() + lo, sol.du.begin() + lo + 4);
        const double uin = lagrange_interpolate(xn, un, rp);
        const double din = lagrange_interpolate(xn, dn, rp);
        const double Xin = mode == PairingMode::gradient ? pp.eps * din : uin;
        xs.push_back(rp);
        ys.push_back(h(rp) * F(Xin) / pp.eps);
    }
    for (; j < r.size(); ++j) {
        xs.push_back(r[j]);
        ys.push_back(h(r[j]) * F(X(j)) / pp.eps);
    }
    if (xs.size() < 3)
        throw std::runtime_error("empirical_pairing: window too narrow for the mesh");
    out.value = simpson(xs, ys);
    return out;
}

std::vector<HolderFunction> standard_observables() {
    return {
        {"identity", [](double s) { return s; }, 1.0},
        {"square", [](double s) { return s * s; }, 1.0},
        {"root", [](double s) { return std::sqrt(std::abs(s)); }, 0.5},
        {"asinh2", [](double s) { return 2.0 * std::asinh(s / 2.0); }, 1.0},
        {"sinh2", [](double s) { return 2.0 * std::sinh(s / 2.0); }, 1.0},
    };
}

std::vector<SpatialWeight> standard_weights(double R) {
    return {
        {"one", [](double) { return 1.0; }},
        {"linear", [R](double r) { return r / R; }},
        {"cosine", [R](double r) { return std::cos(M_PI * r / (2.0 * R)); }},
        {"hat_mid", [R](double r) {
             const double d = std::abs(r - 0.5 * R) / (0.25 * R);
             return d >= 1.0 ? 0.0 : 1.0 - d;
         }},
    };
}

}  // namespace shgordon
