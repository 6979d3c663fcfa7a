#include "rrlab/rspt.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rrlab/special.hpp"

namespace rrlab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double gaussian_cut(double alpha) { return alpha > 0.0 ? 8.7 * std::sqrt(alpha) : 0.0; }

// int_a^b f(k)/(omega - k + i eps) dk in the eps -> +0 sense:
//   -PV int f(k)/(k - omega) dk - i pi f(omega)   when a < omega < b.
// b may be infinite (decaying f assumed); a Gaussian envelope width guides the
// tail handling.
std::complex<double> pole_integral(const std::function<double(double)>& f, double a, double b,
                                   double omega, double alpha, double tol) {
    const bool infinite = !std::isfinite(b);
    std::complex<double> acc{0.0, 0.0};
    const double kcut = alpha > 0.0 ? gaussian_cut(alpha) : 0.0;
    double b_eff = b;
    if (infinite) {
        b_eff = std::max({2.0 * std::abs(omega) + 1.0, 2.0 * a + 1.0, kcut});
    }
    const bool pole_inside = omega > a && omega < b_eff;
    if (pole_inside) {
        auto r = pv_cauchy(f, a, b_eff, omega, tol, 1e-12);
        acc -= r.value;
        acc -= std::complex<double>(0.0, M_PI * f(omega));
    } else {
        auto r = integrate_adaptive([&](double k) { return -f(k) / (k - omega); }, a, b_eff, tol,
                                    1e-12);
        acc += r.value;
    }
    if (infinite) {
        auto tail = integrate_to_infinity([&](double k) { return -f(k) / (k - omega); }, b_eff,
                                          0.5 * b_eff, tol, 1e-12);
        acc += tail.value;
    }
    return acc;
}

// Same integral at finite eps, for the Richardson secondary path.
std::complex<double> finite_eps_integral(const std::function<double(double)>& f, double a,
                                         double b, double omega, double alpha, double eps,
                                         double tol) {
    const bool infinite = !std::isfinite(b);
    double b_eff = infinite
                       ? std::max({2.0 * std::abs(omega) + 1.0, 2.0 * a + 1.0, gaussian_cut(alpha)})
                       : b;
    auto integrand = [&](double k) {
        return f(k) / std::complex<double>(omega - k, eps);
    };
    std::vector<double> pts{a, b_eff};
    if (omega > a && omega < b_eff)
        for (double w : {50.0, 5.0})
            for (double s : {-1.0, 1.0}) {
                const double p = omega + s * w * eps;
                if (p > a && p < b_eff) pts.push_back(p);
            }
    std::sort(pts.begin(), pts.end());
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = integrate_adaptive_c(integrand, pts[i], pts[i + 1], tol / pts.size(), 1e-12);
        acc += r.value;
    }
    if (infinite) {
        auto tail_re = integrate_to_infinity(
            [&](double k) { return (integrand(k)).real(); }, b_eff, 0.5 * b_eff, tol, 1e-12);
        auto tail_im = integrate_to_infinity(
            [&](double k) { return (integrand(k)).imag(); }, b_eff, 0.5 * b_eff, tol, 1e-12);
        acc += std::complex<double>(tail_re.value, tail_im.value);
    }
    return acc;
}

std::complex<double> eps_richardson(const std::function<std::complex<double>(double)>& shift_of_eps,
                                    double eps0) {
    std::vector<double> xs;
    std::vector<double> re, im;
    for (int i = 0; i < 5; ++i) {
        const double e = eps0 / std::pow(2.0, i);
        auto v = shift_of_eps(e);
        xs.push_back(e);
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return {neville_to_zero(xs, re).value, neville_to_zero(xs, im).value};
}

double default_K(const KernelContext& ctx) {
    return std::sqrt(2.0 * ctx.alpha0 * std::exp(-kEulerGamma));
}

}  // namespace

NaiveScan naive_shift_scan(const AtomSpectrum& spec, int d, int j,
                           const std::vector<double>& K_list, double q) {
    if (K_list.size() < 5)
        throw std::invalid_argument("naive_shift_scan: need at least 5 ascending K values");
    const double m = spec.mass;
    const double pref = d == 3 ? 2.0 * q * q / (3.0 * M_PI * m * m) : q * q / (4.0 * M_PI * m * m);

    // cutoff partial integrals, elementary per level pair:
    //   d=3: int_0^K k/(w-k+ie) dk = -K - w ln|(K-w)/w| - i pi w [0<w<K]
    //   d=2: int_0^K 1/(w-k+ie) dk =      ln|w/(w-K)|   - i pi   [0<w<K]
    auto partial = [&](double w, double K) -> std::complex<double> {
        if (w == 0.0) return d == 3 ? std::complex<double>(-K, 0.0) : std::complex<double>(0, 0);
        std::complex<double> out{0.0, 0.0};
        const bool pole = w > 0.0 && w < K;
        if (d == 3) {
            out = std::complex<double>(-K - w * std::log(std::abs((K - w) / w)), 0.0);
            if (pole) out += std::complex<double>(0.0, -M_PI * w);
        } else {
            out = std::complex<double>(std::log(std::abs(w / (w - K))), 0.0);
            if (pole) out += std::complex<double>(0.0, -M_PI);
        }
        return out;
    };

    NaiveScan scan;
    scan.K = K_list;
    for (double K : K_list) {
        std::complex<double> e2{0.0, 0.0};
        for (int jp = 0; jp <= spec.jmax; ++jp) {
            if (jp == j) continue;
            const double c = spec.coupling(j, jp);
            if (c == 0.0) continue;
            e2 += pref * c * partial(spec.omega_a(j, jp), K);
        }
        scan.e2.push_back(e2);
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < K_list.size(); ++i) {
        xs.push_back(d == 3 ? K_list[i] : std::log(K_list[i]));
        ys.push_back(scan.e2[i].real());
    }
    scan.re_fit = fit_linear(xs, ys);
    scan.fit_ok = scan.re_fit.r_squared >= 0.999;
    const double im_last = scan.e2.back().imag();
    for (std::size_t i = K_list.size() / 2; i < K_list.size(); ++i)
        scan.im_drift = std::max(scan.im_drift, std::abs(scan.e2[i].imag() - im_last));
    return scan;
}

ComplexShift renorm_shift_d2(const AtomSpectrum& spec, const KernelContext& ctx, int j, double q,
                             const ShiftOptions& opts) {
    const double m = spec.mass;
    const double K = opts.K_override > 0.0 ? opts.K_override : default_K(ctx);
    const double alpha = opts.alpha;  // 0 -> limit form (no Gaussian)
    const double pref = q * q / (4.0 * M_PI * m * m);
    auto envelope = [&](double k) {
        return alpha > 0.0 ? std::exp(-k * k / (2.0 * alpha)) : 1.0;
    };

    ComplexShift shift;
    shift.j = j;
    shift.d = 2;
    shift.alpha = alpha;
    shift.K = K;
    shift.truncation = spec.jmax;

    for (int jp = 0; jp <= spec.jmax; ++jp) {
        if (jp == j) continue;
        const double c = spec.coupling(j, jp);
        if (c == 0.0) continue;
        const double w = spec.omega_a(j, jp);
        if (std::abs(w) < 1e-14)
            throw std::domain_error("renorm_shift_d2: degenerate dipole-coupled pair (omega=0)");
        if (std::abs(w - K) < 1e-12 * std::max(1.0, K))
            throw std::domain_error("renorm_shift_d2: resonance sits on the partition momentum");
        // low branch [0,K]: numerator k; high branch [K,inf): numerator omega
        auto f_low = [&](double k) { return envelope(k); };
        auto f_high = [&](double k) { return envelope(k) * w / k; };
        std::complex<double> I;
        if (opts.eps_mode == EpsMode::PoleSplit) {
            I = pole_integral(f_low, 0.0, K, w, alpha, opts.tol);
            I += pole_integral(f_high, K, std::numeric_limits<double>::infinity(), w, alpha,
                               opts.tol);
        } else {
            const double eps0 = opts.eps0 > 0.0 ? opts.eps0 : 0.04 * std::abs(w);
            shift.eps_used = eps0;
            I = eps_richardson(
                [&](double e) {
                    return finite_eps_integral(f_low, 0.0, K, w, alpha, e, opts.tol) +
                           finite_eps_integral(f_high, K, std::numeric_limits<double>::infinity(),
                                               w, alpha, e, opts.tol);
                },
                eps0);
        }
        shift.e2 += pref * c * I;
    }
    // partition-compensation term, zero at the default K
    shift.e2 += q * q / (8.0 * M_PI * m * m) * spec.p2[j] *
                std::log(K * K * std::exp(kEulerGamma) / (2.0 * ctx.alpha0));
    return shift;
}

ComplexShift renorm_shift_d3(const AtomSpectrum& spec, double alpha, int j, double q,
                             const ShiftOptions& opts) {
    if (!(alpha > 0.0)) throw std::invalid_argument("renorm_shift_d3: alpha must be finite > 0");
    const double m = spec.mass;
    const double pref = 2.0 * q * q / (3.0 * M_PI * m * m);

    ComplexShift shift;
    shift.j = j;
    shift.d = 3;
    shift.alpha = alpha;
    shift.truncation = spec.jmax;

    for (int jp = 0; jp <= spec.jmax; ++jp) {
        if (jp == j) continue;
        const double c = spec.coupling(j, jp);
        if (c == 0.0) continue;
        const double w = spec.omega_a(j, jp);
        auto f = [&](double k) { return w * std::exp(-k * k / (2.0 * alpha)); };
        std::complex<double> I;
        if (opts.eps_mode == EpsMode::PoleSplit) {
            I = pole_integral(f, 0.0, std::numeric_limits<double>::infinity(), w, alpha, opts.tol);
        } else {
            const double eps0 = opts.eps0 > 0.0 ? opts.eps0 : 0.04 * std::max(std::abs(w), 1.0);
            shift.eps_used = eps0;
            I = eps_richardson(
                [&](double e) {
                    return finite_eps_integral(f, 0.0, std::numeric_limits<double>::infinity(), w,
                                               alpha, e, opts.tol);
                },
                eps0);
        }
        shift.e2 += pref * c * I;
    }
    return shift;
}

double shift_d3_log_slope(const AtomSpectrum& spec, double alpha, int j, double q) {
    const double h = 0.25;  // in ln(alpha)
    const double hi = renorm_shift_d3(spec, alpha * std::exp(h), j, q).e2.real();
    const double lo = renorm_shift_d3(spec, alpha * std::exp(-h), j, q).e2.real();
    return (hi - lo) / (2.0 * h);
}

std::vector<CancellationRow> cancellation_report(const AtomSpectrum& spec, int d, int j,
                                                 const std::vector<double>& alphas, double q,
                                                 double alpha0) {
    const double m = spec.mass;
    const double p2 = spec.p2[j];
    std::vector<CancellationRow> rows;
    for (double alpha : alphas) {
        CancellationRow row;
        row.alpha = alpha;
        if (d == 3) {
            row.raw = renorm_shift_d3(spec, alpha, j, q).e2;
            row.subtraction = -(2.0 * q * q / (3.0 * M_PI * m * m)) * p2 *
                              std::sqrt(M_PI * alpha / 2.0);
            row.counterterm = (2.0 / 3.0) * (q * q / (m * m)) * std::sqrt(alpha / (2.0 * M_PI)) *
                              p2;
        } else if (d == 2) {
            const double K = std::sqrt(2.0 * alpha0 * std::exp(-kEulerGamma));
            auto ctx = make_kernel_context(alpha, m, 1.0);
            ShiftOptions o;
            o.alpha = alpha;
            row.raw = renorm_shift_d2(spec, ctx, j, q, o).e2;
            row.subtraction = -(q * q / (4.0 * M_PI * m * m)) * p2 * 0.5 *
                              expint_e1(K * K / (2.0 * alpha));
            row.counterterm = q * q / (8.0 * M_PI * m * m) * std::log(alpha / alpha0) * p2;
        } else {
            throw std::invalid_argument("cancellation_report: d must be 2 or 3");
        }
        row.residual = row.subtraction + row.counterterm;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rrlab
