#include "rrlab/meanfield.hpp"

#include <cmath>

#include "rrlab/memconv.hpp"
#include "rrlab/renorm.hpp"
#include "rrlab/rrforce.hpp"

namespace rrlab {

Vec PulseSpec::field(double t) const {
    Vec f = polarization;
    if (envelope == Envelope::Off || amplitude == 0.0) return Vec::zero(f.dim);
    const double u = (t - t_center) / sigma;
    const double env = std::exp(-0.5 * u * u);
    return f * (amplitude * env * std::cos(omega_L * t));
}

Vec PulseSpec::field_dot(double t) const {
    Vec f = polarization;
    if (envelope == Envelope::Off || amplitude == 0.0) return Vec::zero(f.dim);
    const double u = (t - t_center) / sigma;
    const double env = std::exp(-0.5 * u * u);
    const double d = -u / sigma * env * std::cos(omega_L * t) -
                     env * omega_L * std::sin(omega_L * t);
    return f * (amplitude * d);
}

PulseSpec PulseSpec::off(int dim) {
    PulseSpec p;
    p.envelope = Envelope::Off;
    p.polarization = Vec::zero(dim);
    return p;
}

Trajectory PropagationResult::as_trajectory(const SwitchingProfile& sw) const {
    Trajectory tr;
    tr.t0 = t.front();
    tr.dt = t.size() > 1 ? t[1] - t[0] : 1.0;
    tr.n = static_cast<int>(t.size());
    tr.dim = v.front().dim;
    tr.switching = sw;
    tr.v.resize(static_cast<std::size_t>(tr.n) * tr.dim);
    tr.q.resize(tr.n);
    for (int i = 0; i < tr.n; ++i) {
        for (int k = 0; k < tr.dim; ++k) tr.v[static_cast<std::size_t>(i) * tr.dim + k] = v[i][k];
        tr.q[i] = sw.at(t[i]);
    }
    return tr;
}

PropagationResult propagate(const ModelConfig& cfg, const PulseSpec& pulse, double T, double dt,
                            const PropagateOptions& opts) {
    const int d = cfg.dim;
    const double m = cfg.mass;
    const double q = cfg.charge;
    const PotentialSpec pot = cfg.potential_spec();
    const int steps = static_cast<int>(std::llround(T / dt));
    if (steps < 1) throw std::invalid_argument("propagate: T/dt must be at least 1");

    SwitchingProfile sw;
    sw.q = q;
    sw.T_sw = cfg.switching_T;
    sw.t_on = opts.t0 - 5.0 * cfg.switching_T;  // flat (q ~ q_phys) over the run window

    auto ctx = make_kernel_context(cfg.alpha, m, cfg.eta);

    PropagationResult res;
    res.state.psi = std::make_unique<WaveGrid>(d, cfg.grid_n, cfg.grid_L);
    WaveGrid& grid = *res.state.psi;

    // potential, gradient and Hessian tables
    std::vector<double> V(grid.size());
    std::vector<double> gradV(static_cast<std::size_t>(d) * grid.size());
    std::vector<double> hessV(static_cast<std::size_t>(d) * d * grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec x = grid.x_at(i);
        V[i] = pot.eval_nd(x);
        const Vec g = pot.grad_nd(x);
        for (int k = 0; k < d; ++k) gradV[static_cast<std::size_t>(k) * grid.size() + i] = g[k];
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                hessV[(static_cast<std::size_t>(a) * d + b) * grid.size() + i] =
                    pot.hessian_nd(x, a, b);
    }

    // initial state: ground state of p^2/2m + V, optionally displaced
    if (pot.kind == PotentialSpec::Kind::IsotropicHarmonic) {
        const double w0 = pot.omega0;
        grid.fill([&](const Vec& x) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double xs = x[k] - opts.x0_shift[k];
                r2 += xs * xs;
            }
            return std::complex<double>(std::exp(-0.5 * m * w0 * r2), 0.0);
        });
    } else {
        // imaginary-time relaxation for non-harmonic ground states; any
        // requested displacement is applied afterwards by an exact shift
        grid.fill([&](const Vec& x) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) r2 += x[k] * x[k];
            return std::complex<double>(std::exp(-0.5 * r2), 0.0);
        });
        const double dtau = 0.02;
        double e_prev = 1e300;
        for (int it = 0; it < 4000; ++it) {
            for (std::size_t i = 0; i < grid.size(); ++i)
                grid[i] *= std::exp(-V[i] * dtau * 0.5);
            grid.apply_kinetic_damping(m, dtau);
            for (std::size_t i = 0; i < grid.size(); ++i)
                grid[i] *= std::exp(-V[i] * dtau * 0.5);
            grid.normalize();
            if (it % 50 == 49) {
                const double e = grid.energy(V, m);
                if (std::abs(e - e_prev) < 1e-12 * std::max(1.0, std::abs(e))) break;
                e_prev = e;
            }
        }
        if (opts.x0_shift.max_abs() > 0.0) {
            Vec shift = opts.x0_shift;
            shift.dim = d;
            grid.apply_translation(shift, 1.0);
        }
    }

    const int hist_cap = steps + 4;
    res.state.v_history = VelocityHistory(d, opts.t0, dt, hist_cap);
    VelocityHistory& hist = res.state.v_history;
    std::vector<double> frame_phase(grid.size(), 0.0);

    // Bandwidth budget of the counter-rotated frame: the accumulated phase
    // gradient is bounded by |integral of (t - t0) v dt| times the Hessian
    // row sum over the density support; past the grid's Nyquist wavenumber
    // the gradient expectations silently alias.
    double hess_bound = 0.0;
    {
        double rho_max = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            rho_max = std::max(rho_max, std::norm(grid[i]));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (std::norm(grid[i]) < 1e-10 * rho_max) continue;
            for (int a = 0; a < d; ++a) {
                double row = 0.0;
                for (int b = 0; b < d; ++b)
                    row += std::abs(hessV[(static_cast<std::size_t>(a) * d + b) * grid.size() + i]);
                hess_bound = std::max(hess_bound, row);
            }
        }
    }
    Vec wind_integral = Vec::zero(d);

    double t = opts.t0;
    Vec v = opts.v0;
    v.dim = d;

    // g0 = <-grad V>, gdot0 = d/dt <-grad V> = -<(v.grad) grad V>, both from
    // the current state; the in-step force model g(s) = g0 + (s - t) gdot0
    // keeps the velocity update a genuine one-step method
    Vec g0 = grid.expectation_neg_gradV(gradV);
    Vec gdot0 = Vec::zero(d);
    Vec vdot_prev = Vec::zero(d), vdot_prev2 = Vec::zero(d);

    auto gradient_rate = [&](const Vec& vel) {
        long double acc[3] = {0.0L, 0.0L, 0.0L};
        const double w = std::pow(grid.h(), d);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double rho = std::norm(grid[i]) * w;
            for (int a = 0; a < d; ++a) {
                double hv = 0.0;
                for (int b = 0; b < d; ++b)
                    hv += hessV[(static_cast<std::size_t>(a) * d + b) * grid.size() + i] * vel[b];
                acc[a] -= hv * rho;
            }
        }
        Vec r = Vec::zero(d);
        for (int a = 0; a < d; ++a) r[a] = static_cast<double>(acc[a]);
        return r;
    };

    auto total_force = [&](double s, const Vec& mem_force) {
        // called only at knots where g0 is fresh
        Vec f = g0;
        const double qs = sw.at(s);
        f += pulse.field(s) * qs;
        if (!opts.disable_al_force && q != 0.0) {
            if (d == 3) {
                // order-reduced third-derivative term
                Vec drive_dot = pulse.field_dot(s) * qs + pulse.field(s) * sw.dot_at(s);
                Vec vddot_red = (gdot0 + drive_dot) * (1.0 / m);
                f += vddot_red * ((2.0 / 3.0) * qs * qs);
            } else {
                f += mem_force * qs;
            }
        }
        return f;
    };

    auto record = [&](double tt, const Vec& vv) {
        res.t.push_back(tt);
        res.v.push_back(vv);
        res.x_mean.push_back(grid.expectation_x());
        const double nn = grid.norm();
        res.norm.push_back(nn);
        res.max_norm_drift = std::max(res.max_norm_drift, std::abs(nn - 1.0));
        if (opts.record_energy) res.energy.push_back(grid.energy(V, m));
        if (std::abs(nn - 1.0) > opts.norm_tol)
            throw PropagationError("propagate: norm drift exceeded tolerance");
        if (vv.norm() > opts.v_bound)
            throw PropagationError("propagate: runaway velocity |v| = " +
                                   std::to_string(vv.norm()));
    };

    // initial sample
    {
        Vec f0 = total_force(t, Vec::zero(d));
        hist.push(v, f0 * (1.0 / m), Vec::zero(d), sw.at(t));
        vdot_prev = f0 * (1.0 / m);
        vdot_prev2 = vdot_prev;
        record(t, v);
    }

    for (int step = 0; step < steps; ++step) {
        // frozen memory force for this step (d=2)
        Vec mem_force = Vec::zero(d);
        if (d == 2 && !opts.disable_al_force && q != 0.0 && hist.size() >= 4) {
            for (int k = 0; k < d; ++k) {
                auto sig = hist.memory_signal(k);
                auto conv = conv_time(sig, dt, ctx.t_tilde);
                mem_force[k] = -1.0 / (2.0 * M_PI) * conv.value;
            }
        }

        // half kick from the current state
        gdot0 = gradient_rate(v);
        Vec v_half = v + total_force(t, mem_force) * (0.5 * dt / m);

        // drift: exact Strang sub-steps for psi at the midpoint velocity.
        // The state is held in the frame chi = exp(+i V (t - t0)) psi~, which
        // removes the secular potential phase that would otherwise wind past
        // the grid bandwidth; the chi equation is
        // i chi' = [v.p - (t - t0) v.gradV] chi, still a diagonal position
        // phase plus an exact spectral translation.
        if (!opts.reference_kinetic_split) {
            if (v_half.max_abs() * dt > opts.cfl_safety * grid.h())
                throw PropagationError("propagate: translation per step exceeds grid cell");
            if (v_half.max_abs() > 0.0) {
                const double t_mid_rel = (t - opts.t0) + 0.5 * dt;
                wind_integral += v_half * (t_mid_rel * dt);
                if (hess_bound * wind_integral.norm() > 0.8 * M_PI / grid.h())
                    throw PropagationError(
                        "propagate: accumulated phase gradient approaching the grid bandwidth; "
                        "refine the grid or shorten the run");
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    double vg = 0.0;
                    for (int kk = 0; kk < d; ++kk)
                        vg += v_half[kk] * gradV[static_cast<std::size_t>(kk) * grid.size() + i];
                    frame_phase[i] = -t_mid_rel * vg;
                }
                grid.apply_potential_phase(frame_phase, 0.5 * dt);
                grid.apply_translation(v_half, dt);
                grid.apply_potential_phase(frame_phase, 0.5 * dt);
            }
        } else {
            grid.apply_potential_phase(V, 0.5 * dt);
            grid.apply_kinetic_phase(m, dt);
            grid.apply_potential_phase(V, 0.5 * dt);
        }

        t += dt;

        // half kick from the updated state
        g0 = grid.expectation_neg_gradV(gradV);
        gdot0 = gradient_rate(v_half);
        Vec f_new = total_force(t, mem_force);
        v = v_half + f_new * (0.5 * dt / m);

        // derivatives for the history: vdot from the force at the new time,
        // vddot by backward differences
        Vec vdot_new = f_new * (1.0 / m);
        Vec vddot_new = Vec::zero(d);
        if (hist.size() >= 2) {
            for (int k = 0; k < d; ++k)
                vddot_new[k] = (3 * vdot_new[k] - 4 * vdot_prev[k] + vdot_prev2[k]) / (2 * dt);
        }
        if (d == 3 && !opts.disable_al_force && q != 0.0) {
            Vec drive_dot =
                pulse.field_dot(t) * sw.at(t) + pulse.field(t) * sw.dot_at(t);
            Vec vddot_red = (gdot0 + drive_dot) * (1.0 / m);
            res.al_reduction_residual =
                std::max(res.al_reduction_residual, (vddot_new - vddot_red).max_abs());
        }
        hist.push(v, vdot_new, vddot_new, sw.at(t));
        vdot_prev2 = vdot_prev;
        vdot_prev = vdot_new;

        record(t, v);
    }

    res.state.t = t;
    res.state.norm = res.norm.back();
    res.steps = steps;
    return res;
}

Vec al_force(int d, const KernelContext& ctx, const VelocityHistory& hist, double q_t) {
    if (hist.size() < 4)
        throw InsufficientHistoryError("al_force: need at least 4 history samples");
    const double c = ctx.c;
    Vec f = Vec::zero(hist.dim());
    if (d == 3) {
        const Vec vdd = hist.vddot(hist.size() - 1);
        for (int k = 0; k < hist.dim(); ++k) f[k] = (2.0 / 3.0) * q_t * q_t / (c * c * c) * vdd[k];
        return f;
    }
    if (d != 2) throw std::invalid_argument("al_force: d must be 2 or 3");
    if (hist.dropped_samples())
        throw InsufficientHistoryError("al_force: ring buffer dropped early history");
    for (int k = 0; k < hist.dim(); ++k) {
        auto sig = hist.memory_signal(k);
        auto conv = conv_time(sig, hist.dt(), ctx.t_tilde);
        if (!conv.sufficient_history)
            throw InsufficientHistoryError("al_force: memory window tail bound too large");
        f[k] = -q_t / (2.0 * M_PI * c * c) * conv.value;
    }
    return f;
}

ModeAmplitudes reconstruct_modes(const ModelConfig& cfg, const Trajectory& traj, int n_k,
                                 std::complex<double> beta0) {
    const int d = cfg.dim;
    const double alpha = cfg.alpha;
    const double k_lo = cfg.omega0 / 10.0;
    const double k_hi = 10.0 * std::sqrt(alpha);

    std::vector<Vec> dirs;
    if (d == 2) {
        for (int j = 0; j < 8; ++j) {
            const double th = 2.0 * M_PI * j / 8.0;
            dirs.emplace_back(std::cos(th), std::sin(th));
        }
    } else {
        for (int a = 0; a < 3; ++a)
            for (double s : {1.0, -1.0}) {
                Vec e = Vec::zero(3);
                e[a] = s;
                dirs.push_back(e);
            }
        const double r = 1.0 / std::sqrt(3.0);
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0})
                for (double sz : {1.0, -1.0}) dirs.emplace_back(sx * r, sy * r, sz * r);
    }

    ModeAmplitudes out;
    const double t = traj.t_end();
    const double t0 = traj.t0;
    for (int ik = 0; ik < n_k; ++ik) {
        const double k = k_lo * std::pow(k_hi / k_lo, n_k > 1 ? double(ik) / (n_k - 1) : 0.0);
        const double w = k;  // omega_k = c k, c = 1
        const double cutoff = std::exp(-k * k / (4.0 * alpha));
        for (std::size_t idir = 0; idir < dirs.size(); ++idir) {
            auto eps_set = polarization_basis(dirs[idir]);
            for (std::size_t ip = 0; ip < eps_set.size(); ++ip) {
                // Simpson over the sampled trajectory
                std::complex<double> acc{0.0, 0.0};
                int mth = traj.n - 1;
                if (mth % 2 == 1) --mth;
                auto val = [&](int j) {
                    const double tp = traj.t_at(j);
                    return std::exp(std::complex<double>(0.0, -w * (t - tp))) * traj.q_sample(j) *
                           eps_set[ip].dot(traj.v_sample(j));
                };
                std::complex<double> s = val(0) + val(mth);
                for (int j = 1; j < mth; ++j) s += val(j) * ((j % 2) ? 4.0 : 2.0);
                acc = s * (traj.dt / 3.0);
                if (mth != traj.n - 1) acc += 0.5 * traj.dt * (val(traj.n - 2) + val(traj.n - 1));
                // source coefficient +i/(2 pi sqrt(w)), matching the modal EOM
                // and the Heisenberg-picture solution of the field equation
                std::complex<double> beta =
                    beta0 * std::exp(std::complex<double>(0.0, -w * (t - t0))) +
                    std::complex<double>(0.0, 1.0) * acc * (cutoff / (2.0 * M_PI * std::sqrt(w)));
                out.k.push_back(k);
                out.k_hat.push_back(dirs[idir]);
                out.pol.push_back(static_cast<int>(ip));
                out.beta.push_back(beta);
            }
        }
    }
    return out;
}

std::vector<BreakdownRow> naive_breakdown_demo(int d, double m, double q, double eta,
                                               const std::vector<double>& alphas,
                                               const Trajectory& traj,
                                               const std::vector<double>& fit_times) {
    std::vector<BreakdownRow> rows;
    double vmax = 0.0;
    for (double tt : fit_times) vmax = std::max(vmax, traj.v_at(tt).max_abs());
    for (double alpha : alphas) {
        auto ctx = make_kernel_context(alpha, m, eta);
        const double tol = 1e-8 * std::max(1.0, std::pow(alpha / 1e3, 0.75));
        auto comp = fit_force_composition(ctx, traj, d, fit_times, tol);
        BreakdownRow row;
        row.alpha = alpha;
        row.c_local = comp.c_vdot;
        row.m_eff_naive = m + comp.c_vdot;
        row.m_eff_renorm = bare_mass(d, m, q, alpha, ctx.alpha0, ctx.c) + comp.c_vdot;
        const double qt = traj.switching.q;
        if (d == 3)
            row.a_rr_local = (4.0 / 3.0) * qt / ctx.c * std::sqrt(alpha / (2.0 * M_PI)) * vmax;
        else
            row.a_rr_local = qt / (4.0 * M_PI * ctx.c) * std::log(alpha / ctx.alpha0) * vmax;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rrlab
