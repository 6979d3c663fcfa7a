#pragma once

#include <vector>

#include "rrlab/vec.hpp"

namespace rrlab {

// Internal units: hbar = c = 1, times in units of the Compton time 1/m.
// c is kept as a symbolic field (fixed to 1) so formulas read like the math.

struct KernelContext {
    double alpha;    // UV regulator, 1/length^2
    double c;        // speed of light, fixed to 1 internally
    double m;        // physical mass
    double eta;      // dimensionless cutoff ratio
    double t_tilde;  // Compton time hbar/(m c^2)
    double t_c;      // cutoff time eta * t_tilde
    double zeta;     // finite constant of the d=2 kernel expansion
    double alpha0;   // exp(2 c zeta)
};

/// Builds a context; zeta is evaluated by Richardson extrapolation over an
/// alpha ladder (cached per (m, c)).
KernelContext make_kernel_context(double alpha, double m, double eta = 1.0);

/// rho_alpha(s) = sqrt(alpha/2pi) exp(-alpha s^2 / 2)
///             = (1/pi) int_0^inf cos(k s) exp(-k^2/2alpha) dk.
double rho_alpha(const KernelContext& ctx, double s);

/// int_0^inf tau^n d^2/dtau^2 [rho_alpha(c tau)] dtau in closed form, n in 0..3.
double rho_moment(const KernelContext& ctx, int n);

/// Xi_alpha(s) = int_0^inf sin(k s) exp(-k^2/2alpha) dk, odd in s.
double xi_alpha(const KernelContext& ctx, double s);

/// d/ds Xi_alpha(s).
double xi_alpha_prime(const KernelContext& ctx, double s);

/// F_alpha(delta) = int_{t_c}^{delta} Xi_alpha(c tau) dtau, delta > 0.
double f_alpha(const KernelContext& ctx, double delta);

/// F_alpha(0) evaluated through the Dawson-integral route; for large alpha it
/// approaches -(1/2c) ln(eta^2 alpha) + zeta + 1/(2 c^3 eta^2 t~^2 alpha).
double f_alpha_zero(const KernelContext& ctx);

struct ZetaResult {
    double value;
    double error;  // disagreement of the last two ladder depths
};

/// zeta = lim_{alpha->inf} { F_alpha(0)|_{eta=1} + (1/2c) ln alpha } by
/// Richardson extrapolation over the ladder alpha_k = 10^(2+k/2), k = 0..8.
/// Throws on non-convergence.
ZetaResult zeta_const(double m, double c = 1.0, double tol = 1e-7);

/// Same limit with t_c = eta * t_tilde; satisfies zeta(eta) = zeta - ln(eta)/c.
ZetaResult zeta_const_eta(double m, double c, double eta, double tol = 1e-7);

/// Orthonormal polarization basis completing {k_hat}: 1 vector for d=2,
/// 2 vectors for d=3.
std::vector<Vec> polarization_basis(const Vec& k_hat);

/// max-abs entry of kappa kappa^T + sum_p eps eps^T - I.  Rejects non-unit kappa.
double closure_check(const Vec& k_hat, const std::vector<Vec>& basis);

/// Rows (alpha, s, value) for CSV export of a kernel table.
struct KernelTableRow {
    double alpha, s, value;
};
std::vector<KernelTableRow> kernel_table(const char* which, const std::vector<double>& alphas,
                                         const std::vector<double>& ss, double m, double eta);

}  // namespace rrlab
