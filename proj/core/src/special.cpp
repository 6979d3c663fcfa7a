#include "rrlab/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_dawson.h>
#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <stdexcept>

#include "rrlab/quadrature.hpp"

namespace rrlab {

namespace {
struct GslHandlerGuard {
    GslHandlerGuard() { gsl_set_error_handler_off(); }
};
const GslHandlerGuard gsl_guard{};
}  // namespace

double dawson(double x) {
    gsl_sf_result r;
    int status = gsl_sf_dawson_e(x, &r);
    if (status != GSL_SUCCESS && status != GSL_EUNDRFLW)
        throw std::runtime_error("dawson: gsl failure");
    return r.val;
}

double expint_e1(double x) {
    gsl_sf_result r;
    int status = gsl_sf_expint_E1_e(x, &r);
    if (status == GSL_EUNDRFLW) return 0.0;
    if (status != GSL_SUCCESS) throw std::runtime_error("expint_e1: gsl failure");
    return r.val;
}

namespace {
constexpr double kDawsonSplit = 6.0;
}

double dawson_integral(double X) {
    const double sign = X < 0 ? -1.0 : 1.0;
    X = std::abs(X);
    const double split = kDawsonSplit;
    if (X <= split) {
        auto r = integrate_adaptive([](double v) { return dawson(v); }, 0.0, X, 1e-14, 1e-13);
        return sign * r.value;
    }
    static const double head = [] {
        auto r =
            integrate_adaptive([](double v) { return dawson(v); }, 0.0, kDawsonSplit, 1e-15, 1e-14);
        return r.value;
    }();
    // D(v) = 1/(2v) + 1/(4v^3) + 3/(8v^5) + O(v^-7) beyond the split point.
    auto asym = [](double v) { return 0.5 / v + 0.25 / (v * v * v) + 0.375 / std::pow(v, 5); };
    double elementary = 0.5 * std::log(X / split) - 0.125 * (1.0 / (X * X) - 1.0 / (split * split)) -
                        (3.0 / 32.0) * (1.0 / std::pow(X, 4) - 1.0 / std::pow(split, 4));
    double hi = std::min(X, 60.0);
    auto rem = integrate_adaptive([&](double v) { return dawson(v) - asym(v); }, split, hi, 1e-15, 1e-13);
    return sign * (head + elementary + rem.value);
}

}  // namespace rrlab
