#include "rrlab/renorm.hpp"

#include <cmath>
#include <stdexcept>

namespace rrlab {

double mass_divergent_term(int d, double q, double alpha, double alpha0, double c) {
      if (!(alpha > 0.0)) throw std::invalid_argument("mass_divergent_term: alpha must be positive");
    if (d == 2) return q * q / (4.0 * M_PI * c * c) * std::log(alpha / alpha0);
    if (d == 3) return (4.0 / 3.0) * q * q / (c * c) * std::sqrt(alpha / (2.0 * M_PI));
    throw std::invalid_argument("mass_divergent_term: d must be 2 or 3");
}

double bare_mass(int d, double m, double q, double alpha, double alpha0, double c) {
    return m - mass_divergent_term(d, q, alpha, alpha0, c);
}

MassLedger make_mass_ledger(int d, double m, double q, double alpha, double alpha0, int L,
                            double c) {
    MassLedger ledger;
    ledger.d = d;
    ledger.m = m;
    ledger.q = q;
    ledger.alpha = alpha;
    ledger.alpha0 = alpha0;
    ledger.m_bare = bare_mass(d, m, q, alpha, alpha0, c);
    ledger.counterterm_truncation = L;
    return ledger;
}

CountertermResult counterterm_series(int d, double m, double q, double alpha, double alpha0,
                                     int L, double c) {
    CountertermResult out;
    out.ratio = mass_divergent_term(d, q, alpha, alpha0, c) / m;
    out.formal = std::abs(out.ratio) >= 1.0;
    if (L < 0) {
        if (out.formal)
            throw std::domain_error(
                "counterterm_series: closed sum requested outside |r| < 1 (formal series)");
        out.value = out.ratio / (1.0 - out.ratio) / (2.0 * m);
        return out;
    }
    double term = 1.0, sum = 0.0;
    for (int l = 1; l <= L; ++l) {
        term *= out.ratio;
        sum += term;
    }
    out.value = sum / (2.0 * m);
    return out;
}

double discarded_vacuum_constant(int d, double alpha, double q, double m, double c, double hbar) {
    if (d == 2) return q * q * hbar / (2.0 * m * c) * std::sqrt(alpha / (2.0 * M_PI));
    if (d == 3) return q * q * hbar / (M_PI * m * c) * alpha;
    throw std::invalid_argument("discarded_vacuum_constant: d must be 2 or 3");
}

double bare_mass_zero_crossing(int d, double m, double q, double alpha0, double c) {
    if (q == 0.0) throw std::domain_error("bare_mass_zero_crossing: q = 0 never crosses");
    double lo = alpha0 * 1e-12, hi = alpha0;
    while (bare_mass(d, m, q, hi, alpha0, c) > 0.0) hi *= 4.0;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bare_mass(d, m, q, mid, alpha0, c) > 0.0)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double bare_mass_zero_closed_form(int d, double m, double q, double alpha0, double c) {
    if (d == 2) return alpha0 * std::exp(4.0 * M_PI * c * c * m / (q * q));
    if (d == 3) {
        const double s = 3.0 * m * c * c / (4.0 * q * q);
        return 2.0 * M_PI * s * s;
    }
    throw std::invalid_argument("bare_mass_zero_closed_form: d must be 2 or 3");
}

}  // namespace rrlab
