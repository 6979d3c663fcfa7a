// rrlab: batch front-end for the renormalization laboratory.
//
// Subcommands: eig, shift, rr-scan, ledger, kernel-check, propagate,
// demo-naive.  All numeric output is written atomically as CSV/JSON with
// 17-significant-digit scientific notation, plus a manifest sidecar.
// Exit codes: 0 ok, 2 config error, 3 numerical-tolerance failure,
// 4 admissibility failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrlab/atom.hpp"
#include "rrlab/config.hpp"
#include "rrlab/io.hpp"
#include "rrlab/kernels.hpp"
#include "rrlab/meanfield.hpp"
#include "rrlab/memconv.hpp"
#include "rrlab/renorm.hpp"
#include "rrlab/rrforce.hpp"
#include "rrlab/rspt.hpp"

namespace {

using namespace rrlab;

struct CommonArgs {
    std::string config_path;
    unsigned long long seed = 12345;
};

ModelConfig load_or_default(const std::string& path) {
    if (path.empty()) {
        ModelConfig cfg;
        cfg.validate();
        return cfg;
    }
    return load_config_file(path);
}

std::vector<double> alpha_ladder(double lo, double hi, int steps) {
    if (!(lo > 0.0) || !(hi > lo) || steps < 2)
        throw ConfigError("alpha scan needs 0 < min < max and steps >= 2");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i)
        out.push_back(lo * std::pow(hi / lo, double(i) / (steps - 1)));
    return out;
}

void write_manifest(const std::string& primary_out, const std::string& command,
                    const std::string& config_text, unsigned long long seed,
                    const std::vector<std::string>& outputs, double wall_s) {
    RunManifest m;
    m.command = command;
    m.config_hash = fnv1a_hex(config_text);
    m.code_version = kCodeVersion;
    m.seed = seed;
    m.outputs = outputs;
    m.wall_time_s = wall_s;
    atomic_write_file(primary_out + ".manifest.json", m.to_json());
}

PulseSpec load_pulse(const std::string& path, int dim) {
    if (path.empty()) return PulseSpec::off(dim);
    std::ifstream in(path);
    if (!in) throw ConfigError("pulse: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto kv = parse_flat_keyvalue(ss.str());
    PulseSpec pulse;
    pulse.polarization = Vec::zero(dim);
    pulse.polarization[0] = 1.0;
    for (const auto& [key, value] : kv) {
        try {
            if (key == "amplitude") pulse.amplitude = std::stod(value);
            else if (key == "omega_L") pulse.omega_L = std::stod(value);
            else if (key == "t_center") pulse.t_center = std::stod(value);
            else if (key == "sigma") pulse.sigma = std::stod(value);
            else if (key == "pol_x") pulse.polarization[0] = std::stod(value);
            else if (key == "pol_y") pulse.polarization[1] = std::stod(value);
            else if (key == "pol_z") pulse.polarization[2] = std::stod(value);
            else if (key == "envelope") pulse.envelope = value == "off"
                                                            ? PulseSpec::Envelope::Off
                                                            : PulseSpec::Envelope::Gaussian;
            else throw ConfigError("pulse: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError("pulse: bad value for '" + key + "'");
        }
    }
    const double pn = pulse.polarization.norm();
    if (pn > 0) pulse.polarization *= 1.0 / pn;
    return pulse;
}

int run_eig(const CommonArgs& common, int jmax, const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    GridOptions gopts;
    gopts.n = cfg.grid_n;
    gopts.L = cfg.grid_L;
    gopts.seed = static_cast<unsigned>(common.seed);
    auto spec = solve_spectrum(cfg.potential_spec(), jmax, gopts);

    Json j = Json::object();
    Json energies = Json::array();
    for (double e : spec.energies) energies.push_back(Json(e));
    j["dim"] = Json(spec.dim);
    j["jmax"] = Json(spec.jmax);
    j["analytic"] = Json(spec.analytic);
    j["energies"] = std::move(energies);
    Json pelems = Json::array();
    for (int jp = 0; jp <= spec.jmax; ++jp)
        for (int jj = 0; jj <= spec.jmax; ++jj) {
            bool nonzero = false;
            for (int c = 0; c < spec.dim; ++c)
                if (std::abs(spec.p_elem(jp, jj, c)) > 0) nonzero = true;
            if (!nonzero) continue;
            Json ent = Json::object();
            ent["jp"] = Json(jp);
            ent["j"] = Json(jj);
            Json re = Json::array(), im = Json::array();
            for (int c = 0; c < spec.dim; ++c) {
                re.push_back(Json(spec.p_elem(jp, jj, c).real()));
                im.push_back(Json(spec.p_elem(jp, jj, c).imag()));
            }
            ent["re"] = std::move(re);
            ent["im"] = std::move(im);
            pelems.push_back(std::move(ent));
        }
    j["p_elems"] = std::move(pelems);
    Json p2 = Json::array();
    for (double v : spec.p2) p2.push_back(Json(v));
    j["p2"] = std::move(p2);
    if (!spec.convergence.empty()) {
        Json conv = Json::array();
        for (double v : spec.convergence) conv.push_back(Json(v));
        j["convergence"] = std::move(conv);
    }
    auto cs = momentum_coupling_sum(spec, 0);
    j["sum_rule_deficit_j0"] = Json(cs.completeness_deficit);
    atomic_write_file(out, j.dump(2));
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "eig", cfg.canonical_text(), common.seed, {out}, wall);
    return 0;
}

int run_shift(const CommonArgs& common, int dim, int level, int jmax, double alpha_flag,
              const std::string& alpha_scan, const std::string& eps_mode,
              const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    if (dim != 0) cfg.dim = dim;
    cfg.validate();
    if (alpha_flag > 0) cfg.alpha = alpha_flag;
    auto spec = solve_spectrum(PotentialSpec::harmonic(cfg.omega0, cfg.dim, cfg.mass), jmax);
    auto ctx = make_kernel_context(cfg.alpha, cfg.mass, cfg.eta);
    ShiftOptions opts;
    opts.eps_mode = eps_mode == "extrapolate" ? EpsMode::Extrapolate : EpsMode::PoleSplit;

    auto one_shift = [&](double alpha) {
        return cfg.dim == 2 ? renorm_shift_d2(spec, ctx, level, cfg.charge, opts)
                            : renorm_shift_d3(spec, alpha, level, cfg.charge, opts);
    };

    Json j = Json::object();
    j["dim"] = Json(cfg.dim);
    j["level"] = Json(level);
    j["jmax"] = Json(jmax);
    j["eps_mode"] = Json(eps_mode);
    if (alpha_scan.empty()) {
        auto shift = one_shift(cfg.alpha);
        j["alpha"] = Json(cfg.alpha);
        j["re"] = Json(shift.e2.real());
        j["im"] = Json(shift.e2.imag());
        j["gamma"] = Json(shift.gamma());
        auto rows =
            cancellation_report(spec, cfg.dim, level, {cfg.alpha}, cfg.charge, ctx.alpha0);
        Json pieces = Json::object();
        pieces["raw_re"] = Json(rows[0].raw.real());
        pieces["raw_im"] = Json(rows[0].raw.imag());
        pieces["subtraction"] = Json(rows[0].subtraction);
        pieces["counterterm"] = Json(rows[0].counterterm);
        pieces["residual"] = Json(rows[0].residual);
        j["pieces"] = std::move(pieces);
    } else {
        double lo, hi;
        int steps;
        if (std::sscanf(alpha_scan.c_str(), "%lf,%lf,%d", &lo, &hi, &steps) != 3)
            throw ConfigError("--alpha-scan expects min,max,steps");
        Json arr = Json::array();
        for (double a : alpha_ladder(lo, hi, steps)) {
            auto shift = one_shift(a);
            Json ent = Json::object();
            ent["alpha"] = Json(a);
            ent["re"] = Json(shift.e2.real());
            ent["im"] = Json(shift.e2.imag());
            ent["gamma"] = Json(shift.gamma());
            arr.push_back(std::move(ent));
        }
        j["scan"] = std::move(arr);
    }
    atomic_write_file(out, j.dump(2));
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "shift", cfg.canonical_text(), common.seed, {out}, wall);
    return 0;
}

int run_rr_scan(const CommonArgs& common, int dim, double alpha_min, double alpha_max, int steps,
                double omega0, const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    if (dim != 0) cfg.dim = dim;
    if (omega0 > 0) cfg.omega0 = omega0;
    cfg.validate();

    SwitchingProfile sw;
    sw.q = cfg.charge;
    sw.T_sw = cfg.switching_T;
    sw.t_on = -12.0 * cfg.switching_T;
    const double t0 = sw.t_on - 16.0 * cfg.switching_T;
    const double dt = 2.0 * M_PI / cfg.omega0 / 128.0;
    const int n = static_cast<int>((20.0 - t0) / dt) + 1;
    auto traj = harmonic_trajectory(0.05, cfg.omega0, 0, cfg.dim, sw, t0, dt, n);

    const double t_eval = 2.0 * M_PI / cfg.omega0;
    auto alphas = alpha_ladder(alpha_min, alpha_max, steps);
    auto fit = divergence_scan(cfg.mass, cfg.eta, traj, cfg.dim, alphas, t_eval, 1e-9);

    CsvTable csv({"alpha", "force_local_coeff", "fit_residual"});
    const double accel = traj.vdot_at(t_eval)[0];
    std::vector<double> xs(alphas.size());
    double xbar = 0.0, fbar = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        xs[i] = cfg.dim == 3 ? std::sqrt(alphas[i]) : std::log(alphas[i]);
        xbar += xs[i];
        fbar += fit.forces[i];
    }
    xbar /= alphas.size();
    fbar /= alphas.size();
    const double intercept = fbar - fit.coefficient * accel * xbar;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        csv.add_row({alphas[i], fit.local_coeffs[i],
                     fit.forces[i] - (fit.coefficient * accel * xs[i] + intercept)});
    atomic_write_file(out, csv.str());

    Json j = Json::object();
    j["dim"] = Json(cfg.dim);
    j["law"] = Json(fit.law == DivergenceFit::Law::SqrtAlpha ? "sqrt_alpha" : "log_alpha");
    j["coefficient"] = Json(fit.coefficient);
    j["r_squared"] = Json(fit.r_squared);
    j["law_satisfied"] = Json(fit.law_satisfied);
    const double expected = cfg.dim == 3
                                ? -(4.0 / 3.0) * cfg.charge * cfg.charge / std::sqrt(2.0 * M_PI)
                                : -cfg.charge * cfg.charge / (4.0 * M_PI);
    j["expected_prefactor"] = Json(expected);
    atomic_write_file(out + ".fit.json", j.dump(2));

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "rr-scan", cfg.canonical_text(), common.seed, {out, out + ".fit.json"},
                   wall);
    if (!fit.law_satisfied) {
        std::fprintf(stderr, "rr-scan: divergence-law fit failed (R^2 = %.6f)\n", fit.r_squared);
        return 3;
    }
    return 0;
}

int run_ledger(const CommonArgs& common, double alpha_min, double alpha_max, int steps,
               const std::string& format, const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    auto ctx = make_kernel_context(cfg.alpha, cfg.mass, cfg.eta);
    auto alphas = alpha_ladder(alpha_min, alpha_max, steps);
    if (format == "csv") {
        CsvTable csv({"alpha", "m_bare", "counterterm_O_q2", "discarded_constant"});
        for (double a : alphas)
            csv.add_row({a, bare_mass(cfg.dim, cfg.mass, cfg.charge, a, ctx.alpha0),
                         counterterm_series(cfg.dim, cfg.mass, cfg.charge, a, ctx.alpha0, 1).value,
                         discarded_vacuum_constant(cfg.dim, a, cfg.charge, cfg.mass)});
        atomic_write_file(out, csv.str());
    } else if (format == "json") {
        Json arr = Json::array();
        for (double a : alphas) {
            Json ent = Json::object();
            ent["alpha"] = Json(a);
            ent["m_bare"] = Json(bare_mass(cfg.dim, cfg.mass, cfg.charge, a, ctx.alpha0));
            ent["counterterm_O_q2"] =
                Json(counterterm_series(cfg.dim, cfg.mass, cfg.charge, a, ctx.alpha0, 1).value);
            ent["discarded_constant"] =
                Json(discarded_vacuum_constant(cfg.dim, a, cfg.charge, cfg.mass));
            arr.push_back(std::move(ent));
        }
        Json j = Json::object();
        j["alpha0"] = Json(ctx.alpha0);
        j["rows"] = std::move(arr);
        atomic_write_file(out, j.dump(2));
    } else {
        throw ConfigError("ledger: format must be csv or json");
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "ledger", cfg.canonical_text(), common.seed, {out}, wall);
    return 0;
}

int run_kernel_check(const CommonArgs& common, const std::string& table,
                     const std::string& table_out, const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    std::vector<std::string> outputs{out};

    // admissibility of the memory signal q_t vddot generated by this config
    SwitchingProfile sw;
    sw.q = cfg.charge;
    sw.T_sw = cfg.switching_T;
    sw.t_on = -12.0 * cfg.switching_T;
    const double t0 = sw.t_on - 16.0 * cfg.switching_T;
    const double dt = 2.0 * M_PI / cfg.omega0 / 256.0;
    const int n = static_cast<int>((0.0 - t0) / dt) + 1;
    auto traj = harmonic_trajectory(0.05, cfg.omega0, 0, cfg.dim, sw, t0, dt, n);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = traj.q_sample(i) * traj.vddot_fn(traj.t_at(i))[0];
    auto rep = admissibility_check(spectrum_from_samples(f, dt));

    Json j = Json::object();
    auto cond = [&](const AdmissibilityReport::Condition& c) {
        Json e = Json::object();
        e["pass"] = Json(c.pass);
        e["evidence"] = Json(c.evidence);
        e["note"] = Json(c.note);
        return e;
    };
    j["cond1_fourier_transformable"] = cond(rep.cond1);
    j["cond3_low_omega_series"] = cond(rep.cond3);
    j["cond4_high_omega_falloff"] = cond(rep.cond4);
    j["all_pass"] = Json(rep.all_pass());
    atomic_write_file(out, j.dump(2));

    if (!table.empty()) {
        std::vector<double> alphas{1.0, 10.0, 100.0, 1000.0};
        std::vector<double> ss;
        for (int i = 0; i <= 30; ++i) ss.push_back(0.1 * i);
        auto rows = kernel_table(table.c_str(), alphas, ss, cfg.mass, cfg.eta);
        CsvTable csv({"alpha", "s", "value"});
        for (const auto& r : rows) csv.add_row({r.alpha, r.s, r.value});
        atomic_write_file(table_out, csv.str());
        outputs.push_back(table_out);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "kernel-check", cfg.canonical_text(), common.seed, outputs, wall);
    if (!rep.all_pass()) {
        std::string which = !rep.cond1.pass  ? "cond1 (Fourier transformability)"
                            : !rep.cond3.pass ? "cond3 (low-Omega power series)"
                                              : "cond4 (high-Omega falloff)";
        std::fprintf(stderr, "kernel-check: admissibility failure at %s\n", which.c_str());
        return 4;
    }
    return 0;
}

int run_propagate(const CommonArgs& common, const std::string& pulse_path, double T, double dt,
                  const std::string& prefix) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    auto pulse = load_pulse(pulse_path, cfg.dim);
    auto res = propagate(cfg, pulse, T, dt);

    const std::string traj_path = prefix + "_trajectory.csv";
    const std::string modes_path = prefix + "_modes.json";
    std::vector<std::string> header{"t"};
    const char* comp = "xyz";
    for (int k = 0; k < cfg.dim; ++k) header.push_back(std::string("v_") + comp[k]);
    for (int k = 0; k < cfg.dim; ++k) header.push_back(std::string("x_") + comp[k]);
    header.push_back("norm");
    CsvTable csv(header);
    for (std::size_t i = 0; i < res.t.size(); ++i) {
        std::vector<double> row{res.t[i]};
        for (int k = 0; k < cfg.dim; ++k) row.push_back(res.v[i][k]);
        for (int k = 0; k < cfg.dim; ++k) row.push_back(res.x_mean[i][k]);
        row.push_back(res.norm[i]);
        csv.add_row(row);
    }
    atomic_write_file(traj_path, csv.str());

    SwitchingProfile sw;
    sw.q = cfg.charge;
    sw.T_sw = cfg.switching_T;
    sw.t_on = -5.0 * cfg.switching_T;
    auto traj = res.as_trajectory(sw);
    auto modes = reconstruct_modes(cfg, traj, 16);
    Json marr = Json::array();
    for (std::size_t i = 0; i < modes.k.size(); ++i) {
        Json ent = Json::object();
        ent["k"] = Json(modes.k[i]);
        Json dir = Json::array();
        for (int c = 0; c < cfg.dim; ++c) dir.push_back(Json(modes.k_hat[i][c]));
        ent["k_hat"] = std::move(dir);
        ent["pol"] = Json(modes.pol[i]);
        ent["re"] = Json(modes.beta[i].real());
        ent["im"] = Json(modes.beta[i].imag());
        marr.push_back(std::move(ent));
    }
    Json mj = Json::object();
    mj["modes"] = std::move(marr);
    atomic_write_file(modes_path, mj.dump(2));

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(traj_path, "propagate", cfg.canonical_text(), common.seed,
                   {traj_path, modes_path}, wall);
    return 0;
}

int run_demo_naive(const CommonArgs& common, double alpha_min, double alpha_max, int steps,
                   const std::string& out) {
    const auto t_start = std::chrono::steady_clock::now();
    auto cfg = load_or_default(common.config_path);
    SwitchingProfile sw;
    sw.q = cfg.charge;
    sw.T_sw = cfg.switching_T;
    sw.t_on = -12.0 * cfg.switching_T;
    const double t0 = sw.t_on - 16.0 * cfg.switching_T;
    const double dt = 2.0 * M_PI / cfg.omega0 / 128.0;
    const int n = static_cast<int>((20.0 - t0) / dt) + 1;
    auto traj = harmonic_trajectory(0.05, cfg.omega0, 0, cfg.dim, sw, t0, dt, n);
    std::vector<double> times;
    const double period = 2.0 * M_PI / cfg.omega0;
    for (int i = 0; i < 6; ++i) times.push_back(period * (1.0 + i / 6.0));

    auto rows = naive_breakdown_demo(cfg.dim, cfg.mass, cfg.charge, cfg.eta,
                                     alpha_ladder(alpha_min, alpha_max, steps), traj, times);
    CsvTable csv({"alpha", "c_local", "m_eff_naive", "m_eff_renorm", "a_rr_local"});
    for (const auto& r : rows)
        csv.add_row({r.alpha, r.c_local, r.m_eff_naive, r.m_eff_renorm, r.a_rr_local});
    atomic_write_file(out, csv.str());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(out, "demo-naive", cfg.canonical_text(), common.seed, {out}, wall);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rrlab: regularized coupling kernels, radiation-reaction forces, renormalized "
                 "level shifts and mean-field propagation for a single-electron atom"};
    app.require_subcommand(1);

    CommonArgs common;
    app.add_option("--config", common.config_path, "flat key-value config file");
    app.add_option("--seed", common.seed, "seed for randomized property suites");

    auto* eig = app.add_subcommand("eig", "bound-state spectrum and momentum matrix elements");
    int eig_jmax = 5;
    std::string eig_out = "eig.json";
    eig->add_option("--jmax", eig_jmax);
    eig->add_option("--out,-o", eig_out);

    auto* shift = app.add_subcommand("shift", "renormalized second-order level shift");
    int shift_dim = 0, shift_level = 0, shift_jmax = 8;
    double shift_alpha = 0.0;
    std::string shift_scan, shift_eps = "pole", shift_out = "shift.json";
    shift->add_option("--dim", shift_dim);
    shift->add_option("--level", shift_level);
    shift->add_option("--jmax", shift_jmax);
    shift->add_option("--alpha", shift_alpha);
    shift->add_option("--alpha-scan", shift_scan, "min,max,steps");
    shift->add_option("--eps-mode", shift_eps)->check(CLI::IsMember({"pole", "extrapolate"}));
    shift->add_option("--out,-o", shift_out);

    auto* rr = app.add_subcommand("rr-scan", "radiation-reaction divergence-law scan");
    int rr_dim = 0, rr_steps = 6;
    double rr_min = 1e3, rr_max = 1e6, rr_omega0 = 0.0;
    std::string rr_out = "rr_scan.csv";
    rr->add_option("--dim", rr_dim);
    rr->add_option("--alpha-min", rr_min);
    rr->add_option("--alpha-max", rr_max);
    rr->add_option("--steps", rr_steps);
    rr->add_option("--omega0", rr_omega0);
    rr->add_option("--out,-o", rr_out);

    auto* led = app.add_subcommand("ledger", "bare mass, counterterm and discarded constants");
    double led_min = 1e2, led_max = 1e8;
    int led_steps = 13;
    std::string led_format = "csv", led_out = "ledger.csv";
    led->add_option("--alpha-min", led_min);
    led->add_option("--alpha-max", led_max);
    led->add_option("--steps", led_steps);
    led->add_option("--format", led_format)->check(CLI::IsMember({"csv", "json"}));
    led->add_option("--out,-o", led_out);

    auto* kc = app.add_subcommand("kernel-check", "memory-kernel admissibility report");
    std::string kc_table, kc_table_out = "kernel_table.csv", kc_out = "kernel_check.json";
    kc->add_option("--table", kc_table)->check(CLI::IsMember({"rho", "xi", "f"}));
    kc->add_option("--table-out", kc_table_out);
    kc->add_option("--out,-o", kc_out);

    auto* prop = app.add_subcommand("propagate", "renormalized mean-field propagation");
    std::string prop_pulse, prop_prefix = "run";
    double prop_T = 10.0, prop_dt = 0.01;
    prop->add_option("--pulse", prop_pulse, "flat key-value pulse file");
    prop->add_option("--T", prop_T);
    prop->add_option("--dt", prop_dt);
    prop->add_option("--out-prefix", prop_prefix);

    auto* demo = app.add_subcommand("demo-naive", "naive-breakdown demonstration table");
    double demo_min = 1e3, demo_max = 1e6;
    int demo_steps = 5;
    std::string demo_out = "breakdown.csv";
    demo->add_option("--alpha-min", demo_min);
    demo->add_option("--alpha-max", demo_max);
    demo->add_option("--steps", demo_steps);
    demo->add_option("--out,-o", demo_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eig->parsed()) return run_eig(common, eig_jmax, eig_out);
        if (shift->parsed())
            return run_shift(common, shift_dim, shift_level, shift_jmax, shift_alpha, shift_scan,
                             shift_eps, shift_out);
        if (rr->parsed())
            return run_rr_scan(common, rr_dim, rr_min, rr_max, rr_steps, rr_omega0, rr_out);
        if (led->parsed())
            return run_ledger(common, led_min, led_max, led_steps, led_format, led_out);
        if (kc->parsed()) return run_kernel_check(common, kc_table, kc_table_out, kc_out);
        if (prop->parsed()) return run_propagate(common, prop_pulse, prop_T, prop_dt, prop_prefix);
        if (demo->parsed()) return run_demo_naive(common, demo_min, demo_max, demo_steps, demo_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnboundPotentialError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const AdmissibilityError& e) {
        std::fprintf(stderr, "admissibility failure (%s): %s\n", e.condition.c_str(), e.what());
        return 4;
    } catch (const ToleranceError& e) {
        std::fprintf(stderr, "numerical tolerance failure: %s\n", e.what());
        return 3;
    } catch (const GridTooCoarseError& e) {
        std::fprintf(stderr, "numerical tolerance failure: %s\n", e.what());
        return 3;
    } catch (const PropagationError& e) {
        std::fprintf(stderr, "numerical tolerance failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
