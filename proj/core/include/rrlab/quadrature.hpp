#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rrlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
    bool converged = true;
};

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    long evals = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK constants).
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
double scalar_norm(const T& v) {
    return std::abs(v);
}
inline double scalar_norm(const std::complex<double>& v) { return std::abs(v); }

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& kronrod, double& err, long& evals) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T fk = f(mid) * kronrod_w[7];
    T fg = f(mid) * gauss_w[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[i];
        T lo = f(mid - dx);
        T hi = f(mid + dx);
        fk = fk + (lo + hi) * kronrod_w[i];
        if (i % 2 == 1) fg = fg + (lo + hi) * gauss_w[i / 2];
    }
    evals += 15;
    kronrod = fk * h;
    err = scalar_norm((fk - fg) * h);
    // QUADPACK-style sharpening of the raw |K-G| estimate.
    if (err > 0.0) {
        const double scale = scalar_norm(kronrod);
        if (scale > 0.0) {
            double r = std::pow(200.0 * err / std::max(scale, 1e-300), 1.5);
            if (r < 1.0) err = scale * r;
        }
    }
}

template <typename T, typename F>
struct Interval {
    double a, b, err;
    T val;
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod on [a,b].  init_splits > 1 guards against
// features far narrower than the interval.
template <typename T, typename F>
auto integrate_adaptive_t(const F& f, double a, double b, double abs_tol, double rel_tol,
                          int max_intervals = 2000, int init_splits = 16) {
    struct Result {
        T value;
        double error;
        long evals;
        bool converged;
    };
    long evals = 0;
    if (a == b) return Result{T{}, 0.0, evals, true};
    std::vector<detail::Interval<T, F>> segs;
    init_splits = std::max(1, init_splits);
    for (int i = 0; i < init_splits; ++i) {
        const double lo = a + (b - a) * i / init_splits;
        const double hi = a + (b - a) * (i + 1) / init_splits;
        T v0{};
        double e0 = 0.0;
        detail::gk15<T>(f, lo, hi, v0, e0, evals);
        segs.push_back({lo, hi, e0, v0});
    }
    auto total = [&] {
        T s{};
        double e = 0.0;
        for (auto& sg : segs) {
            s = s + sg.val;
            e += sg.err;
        }
        return std::pair<T, double>(s, e);
    };
    while ((int)segs.size() < max_intervals) {
        auto [sum, err] = total();
        double tol = std::max(abs_tol, rel_tol * detail::scalar_norm(sum));
        if (err <= tol) return Result{sum, err, evals, true};
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        auto seg = segs[worst];
        double m = 0.5 * (seg.a + seg.b);
        if (m == seg.a || m == seg.b) break;  // interval exhausted at machine precision
        detail::Interval<T, F> left{seg.a, m, 0.0, T{}}, right{m, seg.b, 0.0, T{}};
        detail::gk15<T>(f, left.a, left.b, left.val, left.err, evals);
        detail::gk15<T>(f, right.a, right.b, right.val, right.err, evals);
        segs[worst] = left;
        segs.push_back(right);
    }
    auto [sum, err] = total();
    bool ok = err <= std::max(abs_tol, rel_tol * detail::scalar_norm(sum));
    return Result{sum, err, evals, ok};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-12,
                              int max_intervals = 2000, int init_splits = 16);

QuadResultC integrate_adaptive_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                                 int max_intervals = 2000);

/// Integral over [a,b] split at interior breakpoints (each piece adaptive).
QuadResult integrate_breakpoints(const std::function<double(double)>& f,
                                 std::vector<double> pts, double abs_tol = 1e-12,
                                 double rel_tol = 1e-12);

enum class Trig { Cos, Sin };

/// int_0^kmax g(k) * trig(k s) dk with half-period panel splitting; g smooth.
QuadResult integrate_oscillatory(const std::function<double(double)>& g, double s, Trig kind,
                                 double k_max, double abs_tol = 1e-12, double rel_tol = 1e-12);

/// Semi-infinite integral of a decaying integrand via geometric panel growth.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double first_width, double abs_tol = 1e-12,
                                 double rel_tol = 1e-12, int max_panels = 200);

/// PV int_a^b g(k)/(k - c) dk, a < c < b.  Symmetric-panel subtraction around the
/// pole; the innermost panel uses the 2nd-order Taylor form of the difference
/// quotient.
QuadResult pv_cauchy(const std::function<double(double)>& g, double a, double b, double c,
                     double abs_tol = 1e-12, double rel_tol = 1e-12);

/// Polynomial (Neville) extrapolation of (x_i, y_i) to x = 0.
struct Extrapolated {
    double value;
    double error;
};
Extrapolated neville_to_zero(const std::vector<double>& xs, const std::vector<double>& ys);

/// Composite Simpson rule with n (even) panels; test-oracle quality helper.
double composite_simpson(const std::function<double(double)>& f, double a, double b, int n);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double max_residual = 0.0;
};
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace rrlab
