#pragma once

#include <vector>

namespace rrlab {

struct MassLedger {
    int d = 3;
    double m = 1.0;
    double q = 0.0;
    double alpha = 1.0;
    double alpha0 = 1.0;
    double m_bare = 1.0;
    int counterterm_truncation = 1;
};

/// Divergent term absorbed by the bare mass:
///   d=2: (q^2/4pi c^2) ln(alpha/alpha0),  d=3: (4/3)(q^2/c^2) sqrt(alpha/2pi).
double mass_divergent_term(int d, double q, double alpha, double alpha0, double c = 1.0);

/// m_bare = m - divergent term.
double bare_mass(int d, double m, double q, double alpha, double alpha0, double c = 1.0);

MassLedger make_mass_ledger(int d, double m, double q, double alpha, double alpha0, int L,
                            double c = 1.0);

struct CountertermResult {
    double value = 0.0;
    double ratio = 0.0;   // geometric ratio r
    bool formal = false;  // |r| >= 1, truncation is formal only
};

/// (1/2m) sum_{l=1}^{L} r^l with r the dimension-appropriate geometric ratio.
/// L < 0 requests the closed infinite sum, allowed only for |r| < 1.
CountertermResult counterterm_series(int d, double m, double q, double alpha, double alpha0,
                                     int L, double c = 1.0);

/// The j-independent divergent constant discarded from the level shifts:
///   d=2: (q^2 hbar / 2 m c) sqrt(alpha/2pi),  d=3: (q^2 hbar / pi m c) alpha.
double discarded_vacuum_constant(int d, double alpha, double q, double m, double c = 1.0,
                                 double hbar = 1.0);

/// alpha at which the bare mass crosses zero, found by bisection.
double bare_mass_zero_crossing(int d, double m, double q, double alpha0, double c = 1.0);

/// Closed-form root of the prescription, for cross-checking the bisection.
double bare_mass_zero_closed_form(int d, double m, double q, double alpha0, double c = 1.0);

}  // namespace rrlab
