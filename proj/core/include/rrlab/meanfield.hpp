#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "rrlab/atom.hpp"
#include "rrlab/config.hpp"
#include "rrlab/fftgrid.hpp"
#include "rrlab/kernels.hpp"
#include "rrlab/trajectory.hpp"
#include "rrlab/vec.hpp"

namespace rrlab {

struct PropagationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PulseSpec {
    double amplitude = 0.0;
    double omega_L = 1.0;
    double t_center = 0.0;
    double sigma = 1.0;
    Vec polarization;
    enum class Envelope { Gaussian, Off } envelope = Envelope::Gaussian;

    Vec field(double t) const;
    Vec field_dot(double t) const;
    static PulseSpec off(int dim);
};

/// Phase-redefined atomic state plus the classical velocity record.
struct MeanFieldState {
    std::unique_ptr<WaveGrid> psi;
    VelocityHistory v_history;
    double t = 0.0;
    double norm = 1.0;
};

struct PropagateOptions {
    double t0 = 0.0;
    Vec v0;                  // initial velocity
    Vec x0_shift;            // initial displacement of the ground state
    double v_bound = 0.4;    // non-relativistic runaway guard (c = 1)
    double norm_tol = 1e-8;  // abort threshold on norm drift
    double cfl_safety = 0.75;
    bool record_energy = false;
    bool reference_kinetic_split = false;  // p^2/2m + V splitting (q = 0 checks)
    bool disable_al_force = false;
};

struct PropagationResult {
    std::vector<double> t;
    std::vector<Vec> v;
    std::vector<Vec> x_mean;
    std::vector<double> norm;
    std::vector<double> energy;  // when record_energy
    MeanFieldState state;        // final state (grid inspectable)
    double max_norm_drift = 0.0;
    double al_reduction_residual = 0.0;  // d=3: max |literal vddot - reduced|
    int steps = 0;

    Trajectory as_trajectory(const SwitchingProfile& sw) const;
};

/// Renormalized mean-field propagation: psi stepped by exact Strang sub-steps
/// (V phase in position, rigid translation in momentum), v stepped by RK4 on
/// the local forces with the d=2 memory term frozen per step and the d=3
/// third-derivative term order-reduced.
PropagationResult propagate(const ModelConfig& cfg, const PulseSpec& pulse, double T, double dt,
                            const PropagateOptions& opts = {});

/// Abraham-Lorentz force from a velocity history:
///   d=2: -(q_t/2pi c^2) conv_time(q v-ddot, t_c = t~) per component
///   d=3: (2/3)(q_t^2/c^3) v-ddot(t)
Vec al_force(int d, const KernelContext& ctx, const VelocityHistory& hist, double q_t);

struct ModeAmplitudes {
    std::vector<double> k;                    // per-mode |k|
    std::vector<Vec> k_hat;
    std::vector<int> pol;
    std::vector<std::complex<double>> beta;   // one amplitude per (k, dir, pol)
};

/// Coherent-state amplitudes radiated by the trajectory:
/// beta = beta0 e^{-i w (t-t0)} - (1/2pi) sqrt(1/w) e^{-k^2/4alpha}
///        int e^{-i w (t-t')} q_{t'} (eps . v(t')) dt'.
ModeAmplitudes reconstruct_modes(const ModelConfig& cfg, const Trajectory& traj, int n_k,
                                 std::complex<double> beta0 = {0.0, 0.0});

struct BreakdownRow {
    double alpha = 0.0;
    double c_local = 0.0;        // measured v-dot coefficient of the exact RR force
    double m_eff_naive = 0.0;    // m + c_local
    double m_eff_renorm = 0.0;   // m_bare(alpha) + c_local
    double a_rr_local = 0.0;     // leading |A_RR| magnitude
};

/// Demonstrates the naive mean-field breakdown: without the counterterm the
/// inertia of the velocity equation grows with alpha, with it the physical
/// mass is recovered.
std::vector<BreakdownRow> naive_breakdown_demo(int d, double m, double q, double eta,
                                               const std::vector<double>& alphas,
                                               const Trajectory& traj,
                                               const std::vector<double>& fit_times);

}  // namespace rrlab
