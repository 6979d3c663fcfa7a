#pragma once

#include <complex>
#include <vector>

#include "rrlab/atom.hpp"
#include "rrlab/kernels.hpp"
#include "rrlab/quadrature.hpp"

namespace rrlab {

enum class EpsMode { PoleSplit, Extrapolate };

struct ShiftOptions {
    EpsMode eps_mode = EpsMode::PoleSplit;
    double alpha = 0.0;       // d=2: 0 means the alpha -> inf limit form
    double K_override = 0.0;  // d=2: 0 means K = sqrt(2 alpha0 exp(-gamma))
    double eps0 = 0.0;        // extrapolation ladder start; 0 picks a scale automatically
    double tol = 1e-11;
};

struct ComplexShift {
    std::complex<double> e2{0.0, 0.0};
    int j = 0;
    int d = 3;
    double alpha = 0.0;      // d=3 regulator (or pre-limit d=2 regulator)
    double K = 0.0;          // d=2 partition momentum
    double eps_used = 0.0;   // 0 for the pole-split path
    int truncation = 0;      // J_max of the spectrum used
    double gamma() const { return -2.0 * e2.imag(); }
};

/// Cutoff-K partial integrals of the naive (unrenormalized) second-order
/// shift, with the fitted growth law of the real part.
struct NaiveScan {
    std::vector<double> K;
    std::vector<std::complex<double>> e2;
    LinearFit re_fit;         // Re vs K (d=3) or vs ln K (d=2)
    double im_drift = 0.0;    // max |Im - Im_last| over the upper half of the scan
    bool fit_ok = true;
};
NaiveScan naive_shift_scan(const AtomSpectrum& spec, int d, int j,
                           const std::vector<double>& K_list, double q);

/// Renormalized d=2 shift: the chi/chi~ partition with K fixed from alpha0,
/// evaluated by principal value plus pole residue (or finite-eps Richardson).
/// A K override adds the compensating <p^2> ln(K^2 e^gamma / 2 alpha0) term so
/// the total is partition invariant.
ComplexShift renorm_shift_d2(const AtomSpectrum& spec, const KernelContext& ctx, int j, double q,
                             const ShiftOptions& opts = {});

/// Renormalized d=3 shift at finite alpha; Re grows as ln(alpha), Im converges.
ComplexShift renorm_shift_d3(const AtomSpectrum& spec, double alpha, int j, double q,
                             const ShiftOptions& opts = {});

/// d(Re E2)/d(ln alpha) by central differencing of renorm_shift_d3.
double shift_d3_log_slope(const AtomSpectrum& spec, double alpha, int j, double q);

struct CancellationRow {
    double alpha = 0.0;
    std::complex<double> raw{0.0, 0.0};  // the combined (finite) first line
    double subtraction = 0.0;            // divergent subtraction line
    double counterterm = 0.0;            // O(q^2) mass counterterm line
    double residual = 0.0;               // subtraction + counterterm
};

/// Per-alpha decomposition of the second-order shift into the raw integral,
/// the divergent subtraction and the counterterm, verifying cancellation.
std::vector<CancellationRow> cancellation_report(const AtomSpectrum& spec, int d, int j,
                                                 const std::vector<double>& alphas, double q,
                                                 double alpha0);

}  // namespace rrlab
