// Command-line front end. Exit codes: 0 success, 1 a requested check failed,
// 2 configuration or usage error, 3 solver failure.

#include <cstddef>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "shgordon/concentration.hpp"
#include "shgordon/expansions.hpp"
#include "shgordon/harness.hpp"
#include "shgordon/io.hpp"
#include "shgordon/mesh.hpp"
#include "shgordon/solver.hpp"

namespace fs = std::filesystem;
namespace io = shgordon::io;
using nlohmann::json;

namespace {

struct CommonOpts {
    io::RunConfig flags;
    std::string config_path;
    std::string out;
    std::string format = "csv";
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_eps) {
    cmd->add_option("--N", o.flags.dim, "spatial dimension N (> 1, real)");
    cmd->add_option("--R", o.flags.radius, "ball radius R (> 0)");
    cmd->add_option("--gamma", o.flags.gamma, "Robin coefficient (> 0)");
    cmd->add_option("--a0", o.flags.a0, "boundary datum");
    if (with_eps) cmd->add_option("--eps", o.flags.eps, "perturbation parameter (> 0)");
    cmd->add_option("--mesh-n", o.flags.mesh_n, "interior mesh intervals (>= 50)");
    cmd->add_option("--grading", o.flags.grading, "mesh layout: uniform | geometric")
        ->check(CLI::IsMember({"uniform", "geometric"}));
    cmd->add_option("--config", o.config_path, "flat JSON config; flags override its fields")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output path (sweep treats it as a directory)");
    cmd->add_option("--format", o.format, "payload format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

struct Resolved {
    shgordon::ProblemParams pp;
    std::size_t mesh_n = 3200;
    shgordon::GradingSpec grading;
    std::string grading_name = "geometric";
};

Resolved resolve(const CommonOpts& o) {
    io::RunConfig cfg;
    if (!o.config_path.empty()) cfg = io::load_config(o.config_path);
    cfg = cfg.overridden_by(o.flags);

    Resolved r;
    r.pp.dim = cfg.dim.value_or(2.0);
    r.pp.radius = cfg.radius.value_or(1.0);
    r.pp.gamma = cfg.gamma.value_or(1.0);
    r.pp.a0 = cfg.a0.value_or(2.0);
    r.pp.eps = cfg.eps.value_or(0.01);
    try {
        r.pp.validate();
    } catch (const std::invalid_argument& e) {
        throw io::ConfigError(e.what());
    }
    const int n = cfg.mesh_n.value_or(3200);
    if (n < 50) throw io::ConfigError("mesh_n must be >= 50, got " + std::to_string(n));
    r.mesh_n = static_cast<std::size_t>(n);
    r.grading_name = cfg.grading.value_or("geometric");
    r.grading.kind = r.grading_name == "uniform" ? shgordon::Grading::uniform
                                                 : shgordon::Grading::geometric;
    return r;
}

json params_json(const shgordon::ProblemParams& pp) {
    return {{"N", pp.dim}, {"R", pp.radius}, {"gamma", pp.gamma}, {"a0", pp.a0}, {"eps", pp.eps}};
}

json twoterm_json(const shgordon::TwoTerm& t) {
    return {{"leading", t.leading}, {"correction", t.correction}, {"lead_order", t.lead_order}};
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out.empty())
        std::cout << content;
    else
        io::write_file_atomic(o.out, content);
}

fs::path sidecar_path(const std::string& out) {
    fs::path p = out;
    p.replace_extension(".json");
    return p;
}

std::string fd(double v) { return io::format_double(v); }

int cmd_solve(const CommonOpts& o, const std::string& model) {
    Resolved r = resolve(o);
    shgordon::Mesh mesh = shgordon::build_mesh(r.pp, r.mesh_n, r.grading);
    shgordon::RadialSolution sol = model == "local" ? shgordon::solve_local(r.pp, mesh)
                                                    : shgordon::solve_nonlocal(r.pp, mesh);
    json meta = {{"params", params_json(r.pp)},
                 {"model", model},
                 {"mesh_n", r.mesh_n},
                 {"grading", r.grading_name},
                 {"c_factor", sol.c},
                 {"residual", sol.residual_norm},
                 {"newton_iterations", sol.newton_iterations},
                 {"energy", shgordon::energy(r.pp, sol.mesh, sol.u)}};
    if (o.format == "json") {
        meta["r"] = sol.mesh.nodes;
        meta["u"] = sol.u;
        meta["du"] = sol.du;
        emit(o, meta.dump(2) + "\n");
        return 0;
    }
    io::CsvTable t({"r", "u", "du", "model"});
    for (std::size_t i = 0; i < sol.mesh.size(); ++i)
        t.row({fd(sol.mesh.nodes[i]), fd(sol.u[i]), fd(sol.du[i]), model});
    emit(o, t.str());
    if (!o.out.empty()) io::write_file_atomic(sidecar_path(o.out), meta.dump(2) + "\n");
    return 0;
}

int cmd_expand(const CommonOpts& o, std::vector<double> p_list, std::vector<double> q_list) {
    Resolved r = resolve(o);
    if (p_list.empty()) p_list = {0.0, 0.5, 1.0, 2.0};
    const double qstar = shgordon::half_height_q(r.pp);
    if (q_list.empty()) q_list = {0.0, qstar};

    io::CsvTable t({"p", "q", "k_p", "u2", "du2", "v2", "dv2"});
    json grid = json::array();
    for (double p : p_list) {
        for (double q : q_list) {
            shgordon::LayerPoint pt{p, q};
            auto lay = shgordon::layer_expansion(r.pp, pt);
            auto loc = shgordon::local_model_expansions(r.pp, pt);
            const double e = r.pp.eps;
            t.row({fd(p), fd(q), fd(lay.k), fd(lay.u.at(e)), fd(lay.du.at(e)), fd(loc.v.at(e)),
                   fd(loc.dv.at(e))});
            grid.push_back({{"p", p},
                            {"q", q},
                            {"k_p", lay.k},
                            {"u2", lay.u.at(e)},
                            {"du2", lay.du.at(e)},
                            {"v2", loc.v.at(e)},
                            {"dv2", loc.dv.at(e)}});
        }
    }

    auto rep = shgordon::expansion_report(r.pp, shgordon::LayerPoint{p_list.front(), q_list.front()});
    json report = {{"params", params_json(r.pp)},
                   {"b", rep.boundary.b},
                   {"c_factor", twoterm_json(rep.boundary.c)},
                   {"boundary_value", twoterm_json(rep.boundary.u_R)},
                   {"boundary_slope", twoterm_json(rep.boundary.du_R)},
                   {"local_boundary_value", twoterm_json(rep.local.v_R)},
                   {"local_boundary_slope", twoterm_json(rep.local.dv_R)},
                   {"half_height_q", qstar},
                   {"decay", {{"amplitude", rep.envelope.amplitude}, {"rate", rep.envelope.rate}}},
                   {"limits",
                    {{"boundary_value_gap", rep.limits.boundary_value_gap},
                     {"boundary_slope_gap", rep.limits.boundary_slope_gap},
                     {"layer_value_gap", rep.limits.layer_value_gap},
                     {"layer_slope_gap", rep.limits.layer_slope_gap}}},
                   {"point", {{"p", rep.point.p}, {"q", rep.point.q}}},
                   {"layer",
                    {{"k", rep.layer.k},
                     {"H", rep.layer.H},
                     {"value", twoterm_json(rep.layer.u)},
                     {"slope", twoterm_json(rep.layer.du)}}},
                   {"local_layer",
                    {{"k", rep.local.k},
                     {"H", rep.local.H},
                     {"value", twoterm_json(rep.local.v)},
                     {"slope", twoterm_json(rep.local.dv)}}}};
    if (rep.boundary.b > 0.0)
        report["slope_map"] = twoterm_json(shgordon::dtn_two_term(r.pp, rep.boundary.u_R));

    if (o.format == "json") {
        json top = {{"report", report}, {"grid", grid}};
        emit(o, top.dump(2) + "\n");
        return 0;
    }
    emit(o, t.str());
    if (!o.out.empty()) io::write_file_atomic(sidecar_path(o.out), report.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const CommonOpts& o, std::vector<double> eps_list, std::vector<double> p_list,
              bool no_local, bool no_qstar) {
    Resolved r = resolve(o);
    shgordon::SweepPlan plan;
    plan.base = r.pp;
    plan.eps_list = eps_list.empty() ? std::vector<double>{0.08, 0.04, 0.02, 0.01, 0.005, 0.0025}
                                     : eps_list;
    plan.mesh.n = r.mesh_n;
    plan.mesh.grading = r.grading;
    if (!p_list.empty()) plan.p_list = p_list;
    plan.with_local = !no_local;
    plan.with_half_height_q = !no_qstar;
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw io::ConfigError(e.what());
    }

    auto res = shgordon::run_sweep(plan);

    bool all_pass = true;
    json channels = json::array();
    for (const auto& f : res.fits) {
        all_pass = all_pass && f.pass;
        channels.push_back({{"channel", f.channel},
                            {"slope", f.slope},
                            {"intercept", f.intercept},
                            {"max_residual", f.max_residual},
                            {"min_order", f.min_order},
                            {"trivial", f.trivial},
                            {"monotone", f.monotone},
                            {"pass", f.pass},
                            {"eps", f.eps},
                            {"err", f.err}});
    }
    json top = {{"params", params_json(r.pp)},
                {"eps_list", plan.eps_list},
                {"channels", channels},
                {"all_pass", all_pass}};

    if (o.out.empty()) {
        if (o.format == "json") {
            std::cout << top.dump(2) << "\n";
        } else {
            io::CsvTable t({"channel", "slope", "max_residual", "min_order", "monotone", "pass"});
            for (const auto& f : res.fits)
                t.row({f.channel, fd(f.slope), fd(f.max_residual), fd(f.min_order),
                       f.monotone ? "1" : "0", f.pass ? "1" : "0"});
            std::cout << t.str();
        }
    } else {
        fs::create_directories(o.out);
        for (const auto& f : res.fits) {
            io::CsvTable t({"eps", "error"});
            for (std::size_t i = 0; i < f.eps.size(); ++i) t.row({fd(f.eps[i]), fd(f.err[i])});
            io::write_file_atomic(fs::path(o.out) / (f.channel + ".csv"), t.str());
        }
        io::write_file_atomic(fs::path(o.out) / "ratefits.json", top.dump(2) + "\n");
    }
    return all_pass ? 0 : 1;
}

int cmd_concentrate(const CommonOpts& o, std::vector<std::string> f_names,
                    std::vector<std::string> h_names, const std::string& mode_name,
                    std::optional<double> window_p) {
    Resolved r = resolve(o);
    const auto observables = shgordon::standard_observables();
    const auto weights = shgordon::standard_weights(r.pp.radius);

    auto pick_F = [&](const std::string& name) -> const shgordon::HolderFunction& {
        for (const auto& F : observables)
            if (F.name == name) return F;
        throw io::ConfigError("unknown observable \"" + name + "\"");
    };
    auto pick_h = [&](const std::string& name) -> const shgordon::SpatialWeight& {
        for (const auto& w : weights)
            if (w.name == name) return w;
        throw io::ConfigError("unknown spatial weight \"" + name + "\"");
    };
    if (f_names.empty())
        for (const auto& F : observables) f_names.push_back(F.name);
    if (h_names.empty()) h_names.push_back("one");
    const auto mode = mode_name == "value" ? shgordon::PairingMode::value
                                           : shgordon::PairingMode::gradient;

    shgordon::ProblemParams abs_pp = r.pp;
    abs_pp.a0 = std::abs(r.pp.a0);
    const double b = shgordon::solve_b(abs_pp);
    double kp = 0.0;
    if (window_p && *window_p > 0.0) kp = shgordon::solve_k_of_p(r.pp, b, *window_p);

    shgordon::Mesh mesh = shgordon::build_mesh(r.pp, r.mesh_n, r.grading);
    shgordon::RadialSolution sol = shgordon::solve_nonlocal(r.pp, mesh);

    io::CsvTable t({"F", "h", "mode", "window", "eps", "empirical", "limit", "relerr"});
    json rows = json::array();
    bool warned = false;
    for (const auto& fn : f_names) {
        const auto& F = pick_F(fn);
        for (const auto& hn : h_names) {
            const auto& h = pick_h(hn);
            auto pr = shgordon::empirical_pairing(sol, F, h.h, mode, window_p);
            warned = warned || pr.resolution_warning;
            double w = 0.0;
            if (!window_p) {
                w = mode == shgordon::PairingMode::gradient ? shgordon::weight_Ii(F, b)
                                                            : shgordon::weight_Iii(F, b);
            } else if (*window_p > 0.0) {
                w = shgordon::weight_II(F, b, kp, mode == shgordon::PairingMode::gradient);
            }
            const double limit = h.h(r.pp.radius) * w;
            const double gap = std::abs(pr.value - limit);
            const double relerr = std::abs(limit) > 1e-14 ? gap / std::abs(limit) : gap;
            const std::string window = window_p ? fd(*window_p) : "full";
            t.row({F.name, h.name, mode_name, window, fd(r.pp.eps), fd(pr.value), fd(limit),
                   fd(relerr)});
            rows.push_back({{"F", F.name},
                            {"h", h.name},
                            {"mode", mode_name},
                            {"window", window},
                            {"eps", r.pp.eps},
                            {"empirical", pr.value},
                            {"limit", limit},
                            {"relerr", relerr},
                            {"resolution_warning", pr.resolution_warning}});
        }
    }
    if (warned)
        std::cerr << "note: layer resolution is marginal for at least one observable; "
                     "raise --mesh-n for tighter pairings\n";

    if (o.format == "json") {
        json top = {{"params", params_json(r.pp)}, {"b", b}, {"rows", rows}};
        emit(o, top.dump(2) + "\n");
        return 0;
    }
    emit(o, t.str());
    return 0;
}

int cmd_dichotomy(const CommonOpts& o, std::vector<double> eps_list, std::vector<double> c_list) {
    Resolved r = resolve(o);
    if (eps_list.empty()) eps_list = {0.08, 0.04, 0.02, 0.01, 0.005, 0.0025};
    if (c_list.empty()) c_list = {0.5, 1.0, 2.0};

    std::vector<shgordon::RadialSolution> sols;
    for (double eps : eps_list) {
        shgordon::ProblemParams pp = r.pp;
        pp.eps = eps;
        shgordon::Mesh mesh = shgordon::build_mesh(pp, r.mesh_n, r.grading);
        sols.push_back(shgordon::solve_nonlocal(pp, mesh));
    }
    auto rep = shgordon::dichotomy_check(sols, c_list);
    const bool pass = rep.near_pass && rep.far_pass;

    io::CsvTable t({"kind", "c", "eps", "value", "bound", "pass"});
    for (std::size_t ci = 0; ci < rep.c_list.size(); ++ci) {
        for (std::size_t ei = 0; ei < rep.eps.size(); ++ei) {
            const bool pu = rep.u_near[ci][ei] >= rep.floor_u[ci];
            const bool pd = rep.eps_du_near[ci][ei] >= rep.floor_du[ci];
            t.row({"near_value", fd(rep.c_list[ci]), fd(rep.eps[ei]), fd(rep.u_near[ci][ei]),
                   fd(rep.floor_u[ci]), pu ? "1" : "0"});
            t.row({"near_slope", fd(rep.c_list[ci]), fd(rep.eps[ei]), fd(rep.eps_du_near[ci][ei]),
                   fd(rep.floor_du[ci]), pd ? "1" : "0"});
        }
    }
    for (std::size_t ei = 0; ei < rep.eps.size(); ++ei) {
        const bool pu = rep.u_far[ei] <= rep.envelope_far[ei];
        const bool pd = rep.eps_du_far[ei] <= rep.envelope_far[ei];
        t.row({"far_value", "", fd(rep.eps[ei]), fd(rep.u_far[ei]), fd(rep.envelope_far[ei]),
               pu ? "1" : "0"});
        t.row({"far_slope", "", fd(rep.eps[ei]), fd(rep.eps_du_far[ei]), fd(rep.envelope_far[ei]),
               pd ? "1" : "0"});
    }

    json verdict = {{"params", params_json(r.pp)},
                    {"c_list", rep.c_list},
                    {"eps", rep.eps},
                    {"u_near", rep.u_near},
                    {"eps_du_near", rep.eps_du_near},
                    {"floor_u", rep.floor_u},
                    {"floor_du", rep.floor_du},
                    {"u_far", rep.u_far},
                    {"eps_du_far", rep.eps_du_far},
                    {"envelope_far", rep.envelope_far},
                    {"near_pass", rep.near_pass},
                    {"far_pass", rep.far_pass},
                    {"pass", pass}};

    if (o.format == "json") {
        emit(o, verdict.dump(2) + "\n");
    } else {
        emit(o, t.str());
        if (!o.out.empty()) io::write_file_atomic(sidecar_path(o.out), verdict.dump(2) + "\n");
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-layer laboratory for a singularly perturbed nonlocal sinh-Gordon "
                 "problem in a ball (radial reduction)"};
    app.require_subcommand(1);

    CommonOpts solve_o, expand_o, sweep_o, conc_o, dich_o;
    std::string solve_model = "nonlocal";
    std::vector<double> expand_p, expand_q;
    std::vector<double> sweep_eps, sweep_p;
    bool sweep_no_local = false, sweep_no_qstar = false;
    std::vector<std::string> conc_F, conc_h;
    std::string conc_mode = "gradient";
    std::optional<double> conc_window;
    std::vector<double> dich_eps, dich_c;

    auto* solve_cmd = app.add_subcommand("solve", "solve one model and dump the radial profile");
    add_common_flags(solve_cmd, solve_o, true);
    solve_cmd->add_option("--model", solve_model, "nonlocal | local")
        ->check(CLI::IsMember({"nonlocal", "local"}));

    auto* expand_cmd =
        app.add_subcommand("expand", "tabulate the closed-form two-term expansions");
    add_common_flags(expand_cmd, expand_o, true);
    expand_cmd->add_option("--p", expand_p, "layer depths p (default 0 0.5 1 2)");
    expand_cmd->add_option("--q", expand_q, "second-order offsets q (default 0 and q*)");

    auto* sweep_cmd =
        app.add_subcommand("sweep", "run the eps sweep and fit every error channel");
    add_common_flags(sweep_cmd, sweep_o, false);
    sweep_cmd->add_option("--eps", sweep_eps,
                          "decreasing eps ladder (default 0.08 ... 0.0025, at least 4)");
    sweep_cmd->add_option("--p", sweep_p, "layer depths p (default 0 0.5 1 2)");
    sweep_cmd->add_flag("--no-local", sweep_no_local, "skip the local comparison model");
    sweep_cmd->add_flag("--no-qstar", sweep_no_qstar, "skip the q = q* layer probes");

    auto* conc_cmd = app.add_subcommand(
        "concentrate", "empirical concentration pairings against their exact weights");
    add_common_flags(conc_cmd, conc_o, true);
    conc_cmd->add_option("--F", conc_F,
                         "observables: identity square root asinh2 sinh2 (default all)");
    conc_cmd->add_option("--weight", conc_h,
                         "spatial weights: one linear cosine hat_mid (default one)");
    conc_cmd->add_option("--mode", conc_mode, "pair against eps|u'| or u")
        ->check(CLI::IsMember({"gradient", "value"}));
    conc_cmd->add_option("--window", conc_window, "restrict to [R - p eps, R] (p >= 0)");

    auto* dich_cmd = app.add_subcommand(
        "dichotomy", "near-boundary floors vs far-field decay along an eps sweep");
    add_common_flags(dich_cmd, dich_o, false);
    dich_cmd->add_option("--eps", dich_eps, "decreasing eps ladder (default 0.08 ... 0.0025)");
    dich_cmd->add_option("--c", dich_c, "probe depths c in r = R - c eps (default 0.5 1 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_o, solve_model);
        if (expand_cmd->parsed()) return cmd_expand(expand_o, expand_p, expand_q);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_o, sweep_eps, sweep_p, sweep_no_local, sweep_no_qstar);
        if (conc_cmd->parsed())
            return cmd_concentrate(conc_o, conc_F, conc_h, conc_mode, conc_window);
        if (dich_cmd->parsed()) return cmd_dichotomy(dich_o, dich_eps, dich_c);
    } catch (const shgordon::SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << " (residual " << e.residual_norm << " after "
                  << e.iterations << " iterations)\n";
        return 3;
    } catch (const io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
