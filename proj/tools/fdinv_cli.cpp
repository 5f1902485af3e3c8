#include "fdinv/config.hpp"
#include "fdinv/forward.hpp"
#include "fdinv/inverse.hpp"
#include "fdinv/laplace.hpp"
#include "fdinv/modes.hpp"
#include "fdinv/serialize.hpp"
#include "fdinv/specfun.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

using namespace fdinv;
using io::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Common {
    std::string out{"out"};
    std::optional<std::uint64_t> seed;
    bool quiet{false};

    std::string path(const std::string& name) const { return (std::filesystem::path(out) / name).string(); }
    void say(const std::string& msg) const {
        if (!quiet) {
            std::cout << msg << '\n';
        }
    }
    void warn(const std::string& msg) const {
        if (!quiet) {
            std::cerr << "warning: " << msg << '\n';
        }
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for noise injection (overrides data.seed)");
    sub->add_flag("--quiet", c.quiet, "suppress progress output");
}

void write_json(const std::string& path, const json& j) { io::write_atomic(path, j.dump(2) + "\n"); }

std::vector<int> parse_modes(const ExperimentConfig& cfg) {
    std::vector<int> modes;
    const std::string text = cfg.task_value("modes", "");
    if (text.empty()) {
        for (int k = 1; k <= std::min(cfg.K, 8); ++k) {
            modes.push_back(k);
        }
        return modes;
    }
    for (const complex& v : parse_complex_list(text)) {
        const int k = static_cast<int>(v.real());
        if (v.imag() != 0.0 || k != v.real() || k < 1 || k > cfg.K) {
            throw ConfigError("task.modes: entries must be integers in [1, K]");
        }
        modes.push_back(k);
    }
    return modes;
}

double task_number(const ExperimentConfig& cfg, const std::string& key, double fallback) {
    const std::string text = cfg.task_value(key, "");
    if (text.empty()) {
        return fallback;
    }
    const complex v = parse_complex(text);
    if (v.imag() != 0.0) {
        throw ConfigError("task." + key + " must be real");
    }
    return v.real();
}

// relative block error, absolute when the reference block is zero
double block_error(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double ref = want.norm();
    const double diff = (got - want).norm();
    return ref > 0.0 ? diff / ref : diff;
}

int cmd_forward(const std::string& config, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const StateTrajectory traj = solve(cfg.model, table, cfg.phi, cfg.psi, cfg.src, cfg.time);
    FluxTrace flux = boundary_flux(traj, table);
    if (cfg.noise > 0.0 && flux.values.size() > 0) {
        std::mt19937_64 rng(c.seed.value_or(cfg.seed));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double rms = std::sqrt(flux.values.cwiseAbs2().mean());
        const bool complex_data = flux.values.imag().cwiseAbs().maxCoeff() > 0.0;
        for (Eigen::Index i = 0; i < flux.values.size(); ++i) {
            const double re = gauss(rng);
            const double im = complex_data ? gauss(rng) : 0.0;
            flux.values(i) += cfg.noise * rms * complex(re, im);
        }
    }
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(cfg.x_points, 0.0, std::numbers::pi);
    io::write_atomic(c.path("state.csv"), io::state_csv(traj, x));
    io::write_atomic(c.path("flux.csv"), io::flux_csv(flux));
    json summary;
    summary["K"] = cfg.K;
    summary["M"] = cfg.M;
    summary["time_points"] = traj.time.size();
    summary["flux_samples"] = flux.time.size();
    summary["c0"] = traj.c0;
    summary["noise"] = cfg.noise;
    write_json(c.path("forward.json"), summary);
    c.say("forward: " + std::to_string(flux.time.size()) + " flux samples written to " + c.path("flux.csv"));
    return 0;
}

int cmd_laplace_scan(const std::string& config, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const JumpContext ctx = JumpContext::build(cfg.model, table, cfg.phi, cfg.psi, cfg.src);
    const std::vector<complex> s = parse_complex_list(cfg.task_value("s", "0.5; 1; 2; 5; 1+1i; 2-1i; 0.5+3i"));
    std::vector<complex> values;
    std::vector<std::string> warnings;
    for (const complex& z : s) {
        values.push_back(flux_transform(ctx, z, Side::principal, &warnings));
    }
    for (const auto& w : warnings) {
        c.warn(w);
    }
    io::write_atomic(c.path("laplace.csv"), io::transform_csv(s, values));
    c.say("laplace-scan: " + std::to_string(s.size()) + " points written to " + c.path("laplace.csv"));
    return 0;
}

int cmd_jump_scan(const std::string& config, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const JumpContext ctx = JumpContext::build(cfg.model, table, cfg.phi, cfg.psi, cfg.src);
    const Eigen::VectorXd rho = parse_grid(cfg.task_value("rho", "0.1:5:50"));
    std::vector<complex> s;
    std::vector<complex> values;
    for (Eigen::Index i = 0; i < rho.size(); ++i) {
        if (!(rho(i) > 0.0)) {
            throw ConfigError("task.rho: values must be positive");
        }
        s.emplace_back(-std::pow(rho(i), 1.0 / cfg.model.alpha), 0.0);
        values.push_back(jump(ctx, rho(i)));
    }
    io::write_atomic(c.path("jump.csv"), io::transform_csv(s, values));
    c.say("jump-scan: " + std::to_string(s.size()) + " points written to " + c.path("jump.csv"));
    return 0;
}

int cmd_residues(const std::string& config, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const JumpContext ctx = JumpContext::build(cfg.model, table, cfg.phi, cfg.psi, cfg.src);
    ResidueOptions opt;
    opt.nodes = static_cast<int>(task_number(cfg, "nodes", opt.nodes));
    opt.radius = task_number(cfg, "radius", 0.0);
    json out;
    json reports = json::array();
    double worst = 0.0;
    if (!ctx.coupled) {
        out["problem"] = "ip1";
        for (int n : parse_modes(cfg)) {
            const ResidueReport r = residue_ip1(ctx, n, opt);
            worst = std::max(worst, r.rel_error);
            reports.push_back(io::to_json(r));
        }
    } else {
        out["problem"] = "ip2";
        for (int n : parse_modes(cfg)) {
            const Ip2Residues r = residue_ip2(ctx, n, opt);
            worst = std::max({worst, r.breve.rel_error, r.hat.rel_error});
            json item;
            item["mode"] = n;
            item["breve"] = io::to_json(r.breve);
            item["hat"] = io::to_json(r.hat);
            item["double_pole"] = r.double_pole;
            item["determinant"] = r.determinant;
            item["relation_violation"] = r.relation_violation;
            item["branches"] = r.branches;
            reports.push_back(item);
        }
    }
    out["reports"] = reports;
    out["max_rel_error"] = worst;
    write_json(c.path("residues.json"), out);
    c.say("residues: max relative error " + io::real(worst));
    return 0;
}

int cmd_invert(const std::string& config, const std::string& data_file, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const std::string file = data_file.empty() ? c.path("flux.csv") : data_file;
    const FluxTrace data = io::read_flux_csv(file);
    const std::string problem_name = cfg.task_value("problem", cfg.model.a != 0.0 ? "ip2" : "ip1");
    Problem problem;
    try {
        problem = parse_problem(problem_name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("task.problem: ") + e.what());
    }
    const double mu = task_number(cfg, "mu", 0.0);
    const ReconstructionResult res = lsq_reconstruct(data, cfg.model, table, cfg.M, mu, problem);
    for (const auto& w : res.warnings) {
        c.warn(w);
    }
    json out = io::to_json(res);
    json errors;
    errors["phi"] = block_error(res.phi_hat.coeffs, cfg.phi.coeffs);
    errors["f"] = block_error(res.f_hat, cfg.src.f);
    double worst = std::max(errors["phi"].get<double>(), errors["f"].get<double>());
    if (problem == Problem::ip2) {
        errors["psi"] = block_error(res.psi_hat.coeffs, cfg.psi.coeffs);
        errors["chi"] = block_error(res.chi_hat, cfg.src.chi);
        worst = std::max({worst, errors["psi"].get<double>(), errors["chi"].get<double>()});
    }
    errors["max"] = worst;
    out["errors_vs_config"] = errors;

    const std::string sweep = cfg.task_value("mu_sweep", "");
    if (!sweep.empty()) {
        std::string csv = "mu,residual_norm,solution_norm\n";
        json curve = json::array();
        for (const complex& m : parse_complex_list(sweep)) {
            const ReconstructionResult r = lsq_reconstruct(data, cfg.model, table, cfg.M, m.real(), problem);
            const double norm = std::sqrt(r.phi_hat.coeffs.squaredNorm() + r.f_hat.squaredNorm() +
                                          r.psi_hat.coeffs.squaredNorm() + r.chi_hat.squaredNorm());
            csv += io::real(m.real()) + "," + io::real(r.residual_norm) + "," + io::real(norm) + "\n";
            curve.push_back({{"mu", m.real()}, {"residual_norm", r.residual_norm}, {"solution_norm", norm}});
        }
        io::write_atomic(c.path("lcurve.csv"), csv);
        out["l_curve"] = curve;
    }
    write_json(c.path("invert.json"), out);
    c.say("invert: rank " + std::to_string(res.numerical_rank) + "/" + std::to_string(res.unknowns) +
          ", residual " + io::real(res.residual_norm) + ", max coefficient error " + io::real(worst));
    return 0;
}

int cmd_validate(const std::string& config, const Common& c) {
    const ExperimentConfig cfg = load_config(config);
    const ModeTable table = build_mode_table(cfg.model, cfg.K);
    const SeparationReport sep = check_separation(table);
    json out;
    out["admissible"] = true;
    out["K"] = cfg.K;
    out["c1"] = table.c1;
    out["c2"] = table.c2;
    out["separation_applicable"] = sep.applicable;
    out["separation_holds"] = sep.holds();
    json v = json::array();
    for (const auto& s : sep.violations) {
        v.push_back({{"k", s.k}, {"n", s.n}, {"kind", s.kind}, {"gap", s.gap}});
    }
    out["separation_violations"] = v;
    write_json(c.path("validate.json"), out);
    c.say("validate: admissible; c1 = " + io::real(table.c1) + ", c2 = " + io::real(table.c2) +
          (sep.applicable ? (sep.holds() ? ", separation holds" : ", separation FAILS") : ""));
    return 0;
}

int cmd_specfun_check(const Common& c) {
    json out = json::array();
    bool ok = true;
    for (const auto& chk : specfun::identity_suite()) {
        ok = ok && chk.pass();
        out.push_back({{"name", chk.name},
                       {"points", chk.points},
                       {"max_error", chk.max_error},
                       {"tolerance", chk.tolerance},
                       {"pass", chk.pass()}});
        c.say((chk.pass() ? "ok   " : "FAIL ") + chk.name + "  " + io::real(chk.max_error));
    }
    write_json(c.path("specfun.json"), out);
    return ok ? 0 : kNumericalError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fdinv: forward solves, transform scans, residue checks and reconstructions"};
    app.require_subcommand(1);
    Common common;
    std::string config;
    std::string data_file;

    auto* forward = app.add_subcommand("forward", "solve and write state.csv and flux.csv");
    auto* laplace = app.add_subcommand("laplace-scan", "flux transform at task.s points");
    auto* jumps = app.add_subcommand("jump-scan", "jump across the negative axis on task.rho");
    auto* residues = app.add_subcommand("residues", "contour residues against closed forms");
    auto* invert = app.add_subcommand("invert", "least-squares reconstruction from a flux file");
    auto* validate = app.add_subcommand("validate", "admissibility and separation report");
    auto* check = app.add_subcommand("specfun-check", "special-function identity suite");
    for (auto* sub : {forward, laplace, jumps, residues, invert, validate}) {
        sub->add_option("config", config, "experiment config")->required();
        add_common(sub, common);
    }
    add_common(check, common);
    invert->add_option("--data", data_file, "flux CSV (default OUT/flux.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*forward) return cmd_forward(config, common);
        if (*laplace) return cmd_laplace_scan(config, common);
        if (*jumps) return cmd_jump_scan(config, common);
        if (*residues) return cmd_residues(config, common);
        if (*invert) return cmd_invert(config, data_file, common);
        if (*validate) return cmd_validate(config, common);
        if (*check) return cmd_specfun_check(common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
    return kConfigError;
}
