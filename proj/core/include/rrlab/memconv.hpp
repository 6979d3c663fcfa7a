#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rrlab/trajectory.hpp"
#include "rrlab/vec.hpp"

namespace rrlab {

struct ConvResult {
    double value = 0.0;
    double tail_bound = 0.0;      // estimated contribution missing beyond the history window
    bool sufficient_history = true;
};

/// I_t = int f(t') ln((t - t')/t_c) dt' over the sampled history, evaluated at
/// the time of the last sample.  The log kernel is integrated exactly against
/// a piecewise-cubic fit of f, so the t' -> t singularity needs no special
/// casing beyond the analytic moments of the last panel.
ConvResult conv_time(const std::vector<double>& f, double dt, double t_c);

struct SignalSpectrum {
    std::function<std::complex<double>(double)> f_tilde;  // Omega >= 0 only
    double f0 = 0.0;                                      // f~(0), real
    std::complex<double> f0_prime{0.0, 0.0};              // f~'(0)
    double falloff_exponent = -1.0;                       // high-Omega decay estimate
    std::vector<double> samples;                          // raw signal when known
    double dt = 0.0;
};

/// Half-line transform f~(Omega) = (1/2pi) int_0^inf f(t - tau) e^{-i Omega tau} dtau
/// of a sampled signal; also estimates the low-Omega coefficients and falloff.
SignalSpectrum spectrum_from_samples(const std::vector<double>& f, double dt);

SignalSpectrum spectrum_analytic(std::function<std::complex<double>(double)> f_tilde, double f0,
                                 std::complex<double> f0_prime, double falloff_exponent);

/// Frequency-domain evaluation of I_t: closed-form low-Omega panel on
/// [0, Omega_cut] (constant + linear pieces analytic, quadratic remainder by
/// quadrature) plus the epsilon-free tail on [Omega_cut, inf).
double conv_freq(const SignalSpectrum& spec, double t_c, double omega_cut, double tol = 1e-10);

struct ChiMoment {
    std::vector<std::complex<double>> chi;           // per spatial component
    std::vector<std::complex<double>> recursion_rhs; // (q_t/2pi) d^{nu-1}x(t) - i Omega chi_{nu-1}
    double recursion_residual = 0.0;                 // max-abs defect, nu >= 2 only
};

/// chi_nu(Omega) = (1/2pi) int_-inf^t q_{t'} d^nu x(t')/dt'^nu e^{-i Omega (t-t')} dt'
/// from the trajectory history (nu in 1..3), with the recursive identity checked.
ChiMoment chi_moments(const Trajectory& traj, int nu, double omega);

struct AdmissibilityReport {
    struct Condition {
        bool pass = false;
        double evidence = 0.0;
        std::string note;
    };
    Condition cond1;  // Fourier transformability (windowed transform stability)
    Condition cond3;  // low-Omega power series with finite coefficients
    Condition cond4;  // falloff O(Omega^-1) or faster
    bool all_pass() const { return cond1.pass && cond3.pass && cond4.pass; }
};

AdmissibilityReport admissibility_check(const SignalSpectrum& spec);

/// Thrown by consumers when a required admissibility condition fails.
struct AdmissibilityError : std::runtime_error {
    std::string condition;
    AdmissibilityError(std::string cond, const std::string& msg)
        : std::runtime_error(msg), condition(std::move(cond)) {}
};

}  // namespace rrlab
