#pragma once

#include <stdexcept>
#include <vector>

#include "rrlab/kernels.hpp"
#include "rrlab/trajectory.hpp"
#include "rrlab/vec.hpp"

namespace rrlab {

struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientHistoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RrForceResult {
    Vec force;
    double error = 0.0;  // quadrature + truncation estimate
    bool converged = true;
};

/// Electric RR force on the prescribed trajectory at finite alpha:
///   -(prefactor) int_-inf^t dt' int_0^inf k^{d-1} dk cos(k c (t-t'))
///                 e^{-k^2/2alpha} q_{t'} v(t')
/// with prefactor 4 q_t/(3 pi) for d=3 and q_t/(2 pi) for d=2.  The d=2
/// evaluator integrates k first through Xi_alpha'; the d=3 time integral is
/// truncated at |t-t'| > 8/(c sqrt(alpha)).
/// Throws ToleranceError when the estimated error exceeds abs_tol.
RrForceResult rr_force_exact(const KernelContext& ctx, const Trajectory& traj, int d, double t,
                             double abs_tol = 1e-8);

/// Two-term asymptotic force:
///   d=3: -(4/3)(q_t^2/c^2) sqrt(alpha/2pi) vdot + (2/3)(q_t^2/c^3) vddot
///   d=2: -(q_t^2/4pi c^2) ln(alpha/alpha0) vdot - (q_t/2pi c^2) *
///        int q_{t'} vddot(t') ln((t-t')/t~) dt'   (memory term via conv_time)
Vec rr_force_asymptotic(const KernelContext& ctx, const Trajectory& traj, int d, double t);

struct DivergenceFit {
    int dim = 3;
    enum class Law { SqrtAlpha, LogAlpha } law = Law::SqrtAlpha;
    double coefficient = 0.0;  // fitted slope normalized by the acceleration
    double residual = 0.0;     // 1 - R^2
    double r_squared = 1.0;
    bool law_satisfied = true;  // R^2 >= 0.999
    std::vector<double> alphas;
    std::vector<double> forces;        // projected force component per alpha
    std::vector<double> local_coeffs;  // force / acceleration per alpha
};

/// Scans rr_force_exact over the alpha list and fits the local-term law:
/// slope of F vs sqrt(alpha) (d=3) or ln(alpha) (d=2), normalized by the
/// acceleration at t_eval.  Requires >= 5 alphas spanning >= 3 decades.
DivergenceFit divergence_scan(double m, double eta, const Trajectory& traj, int d,
                              const std::vector<double>& alphas, double t_eval,
                              double abs_tol = 1e-8);

struct ForceComposition {
    double c_vdot = 0.0;   // F contains -c_vdot * vdot(t)
    double c_vddot = 0.0;  // F contains +c_vddot * vddot(t)
    double residual = 0.0;
};

/// Least-squares split of the exact force over one period of a harmonic
/// trajectory into acceleration and jerk components.
ForceComposition fit_force_composition(const KernelContext& ctx, const Trajectory& traj, int d,
                                       const std::vector<double>& times, double abs_tol = 1e-8);

}  // namespace rrlab
