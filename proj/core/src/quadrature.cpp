#include "rrlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace rrlab {

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals,
                              int init_splits) {
    auto r = integrate_adaptive_t<double>(f, a, b, abs_tol, rel_tol, max_intervals, init_splits);
    return {r.value, r.error, r.evals, r.converged};
}

QuadResultC integrate_adaptive_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, double abs_tol, double rel_tol, int max_intervals) {
    auto r = integrate_adaptive_t<std::complex<double>>(f, a, b, abs_tol, rel_tol, max_intervals);
    return {r.value, r.error, r.evals, r.converged};
}

QuadResult integrate_breakpoints(const std::function<double(double)>& f, std::vector<double> pts,
                                 double abs_tol, double rel_tol) {
    std::sort(pts.begin(), pts.end());
    QuadResult total;
    if (pts.size() < 2) return total;
    double piece_tol = abs_tol / std::max<std::size_t>(1, pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i] == pts[i + 1]) continue;
        auto r = integrate_adaptive(f, pts[i], pts[i + 1], piece_tol, rel_tol);
        total.value += r.value;
        total.error += r.error;
        total.evals += r.evals;
        total.converged = total.converged && r.converged;
    }
    return total;
}

QuadResult integrate_oscillatory(const std::function<double(double)>& g, double s, Trig kind,
                                 double k_max, double abs_tol, double rel_tol) {
    const double sa = std::abs(s);
    auto integrand = [&](double k) {
        return g(k) * (kind == Trig::Cos ? std::cos(k * s) : std::sin(k * s));
    };
    if (sa * k_max < 2.0 * M_PI)
        return integrate_adaptive(integrand, 0.0, k_max, abs_tol, rel_tol);

    const double half_period = M_PI / sa;
    QuadResult total;
    double lo = 0.0;
    int quiet = 0;
    double running_scale = 0.0;
    while (lo < k_max) {
        double hi = std::min(lo + half_period, k_max);
        auto r = integrate_adaptive(integrand, lo, hi, abs_tol * 1e-2, rel_tol * 1e-2, 200, 1);
        total.value += r.value;
        total.error += r.error;
        total.evals += r.evals;
        running_scale = std::max(running_scale, std::abs(total.value));
        double gate = std::max(abs_tol, rel_tol * running_scale) * 1e-2;
        quiet = std::abs(r.value) < gate ? quiet + 1 : 0;
        if (quiet >= 3) break;
        lo = hi;
    }
    return total;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double first_width, double abs_tol, double rel_tol,
                                 int max_panels) {
    QuadResult total;
    double lo = a;
    double w = first_width;
    int quiet = 0;
    for (int p = 0; p < max_panels; ++p) {
        auto r = integrate_adaptive(f, lo, lo + w, abs_tol * 1e-2, rel_tol * 1e-2);
        total.value += r.value;
        total.error += r.error;
        total.evals += r.evals;
        double gate = std::max(abs_tol, rel_tol * std::abs(total.value)) * 1e-2;
        quiet = std::abs(r.value) < gate ? quiet + 1 : 0;
        if (quiet >= 2) return total;
        lo += w;
        w *= 2.0;
    }
    total.converged = false;
    return total;
}

QuadResult pv_cauchy(const std::function<double(double)>& g, double a, double b, double c,
                     double abs_tol, double rel_tol) {
    if (!(a < c && c < b)) throw std::invalid_argument("pv_cauchy: pole must lie inside (a,b)");
    const double delta = 0.5 * std::min(c - a, b - c);
    auto outer = [&](double k) { return g(k) / (k - c); };
    QuadResult total = integrate_adaptive(outer, a, c - delta, abs_tol / 3, rel_tol);
    auto right = integrate_adaptive(outer, c + delta, b, abs_tol / 3, rel_tol);
    total.value += right.value;
    total.error += right.error;
    total.evals += right.evals;
    total.converged = total.converged && right.converged;

    // Symmetric window: PV contribution becomes int_0^delta (g(c+u)-g(c-u))/u du.
    const double fd = delta * 1e-2;
    const double g1 = (-g(c + 2 * fd) + 8 * g(c + fd) - 8 * g(c - fd) + g(c - 2 * fd)) / (12 * fd);
    const double g3 =
        (g(c + 2 * fd) - 2 * g(c + fd) + 2 * g(c - fd) - g(c - 2 * fd)) / (2 * fd * fd * fd);
    const double u0 = delta * 1e-3;
    total.value += 2.0 * g1 * u0 + g3 * u0 * u0 * u0 / 9.0;
    auto sym = integrate_adaptive([&](double u) { return (g(c + u) - g(c - u)) / u; }, u0, delta,
                                  abs_tol / 3, rel_tol);
    total.value += sym.value;
    total.error += sym.error;
    total.evals += sym.evals + 4;
    total.converged = total.converged && sym.converged;
    return total;
}

Extrapolated neville_to_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("neville_to_zero: bad inputs");
    const std::size_t n = xs.size();
    std::vector<double> t = ys;
    // sub = extrapolation through points 1..n-1, used as the error reference
    double sub = n >= 2 ? ys[1] : ys[0];
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i)
            t[i] = (xs[i] * t[i + 1] - xs[i + m] * t[i]) / (xs[i] - xs[i + m]);
        if (m == n - 2) sub = t[1];
    }
    return {t[0], std::abs(t[0] - sub)};
}

double composite_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("fit_linear: need >=2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += r * r;
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace rrlab
