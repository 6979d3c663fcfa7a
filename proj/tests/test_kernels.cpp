#include "doctest.h"
#include "oracles.hpp"
#include "rrlab/kernels.hpp"
#include "rrlab/quadrature.hpp"

#include <cmath>
#include <random>

using namespace rrlab;

namespace {
constexpr double kGamma = 0.57721566490153286060651209008240243;

// analytic d^2/dtau^2 rho_alpha(c tau), oracle-side
double d2rho(double alpha, double c, double tau) {
    const double a = alpha * c * c;
    return std::sqrt(alpha / (2.0 * M_PI)) * a * (a * tau * tau - 1.0) *
           std::exp(-0.5 * a * tau * tau);
}
}  // namespace

TEST_CASE("rho_alpha closed form vs cosine-transform quadrature") {
    auto ctx = make_kernel_context(2.0 * M_PI, 1.0);
    CHECK(rho_alpha(ctx, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    auto far = make_kernel_context(5.0, 1.0);
    CHECK(std::abs(rho_alpha(far, 40.0)) < 1e-300);

    for (double alpha : {1.0, 10.0, 1000.0}) {
        auto c = make_kernel_context(alpha, 1.0);
        const double kmax = std::sqrt(alpha) * 9.0 + 10.0;
        for (double s : {0.0, 0.3, 1.0, 3.0}) {
            const double ref =
                oracle::trig_transform([&](double k) { return std::exp(-k * k / (2 * alpha)); }, s,
                                       false, kmax, 2048) /
                M_PI;
            CHECK(rho_alpha(c, s) ==
                  doctest::Approx(ref).epsilon(1e-10).scale(std::sqrt(alpha)));
        }
    }
}

TEST_CASE("rho_alpha is a unit-normalized delta family") {
    for (double alpha : {1.0, 100.0}) {
        auto ctx = make_kernel_context(alpha, 1.0);
        const double w = 9.0 / std::sqrt(alpha);
        auto r = integrate_adaptive([&](double s) { return rho_alpha(ctx, s); }, -w, w, 1e-12,
                                    1e-12);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("rho_moment closed forms and quadrature") {
    auto ctx = make_kernel_context(7.3, 1.0);
    CHECK(rho_moment(ctx, 0) == 0.0);
    CHECK(rho_moment(ctx, 1) == doctest::Approx(std::sqrt(7.3 / (2 * M_PI))).epsilon(1e-15));
    CHECK(rho_moment(ctx, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho_moment(ctx, 3) ==
          doctest::Approx(3.0 * std::sqrt(2.0 / (M_PI * 7.3))).epsilon(1e-15));
    CHECK_THROWS_AS(rho_moment(ctx, 4), std::invalid_argument);
    CHECK_THROWS_AS(rho_moment(ctx, -1), std::invalid_argument);

    // quadrature of the analytic integrand reproduces the table
    const double tmax = 9.0 / std::sqrt(7.3);
    for (int n = 0; n <= 3; ++n) {
        auto r = integrate_adaptive(
            [&](double tau) { return std::pow(tau, n) * d2rho(7.3, 1.0, tau); }, 0.0, tmax, 1e-12,
            1e-12);
        CHECK(r.value == doctest::Approx(rho_moment(ctx, n)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("xi_alpha oddness, zero, asymptote, quadrature oracle") {
    auto ctx = make_kernel_context(50.0, 1.0);
    CHECK(xi_alpha(ctx, 0.0) == 0.0);
    CHECK(xi_alpha(ctx, -0.7) == -xi_alpha(ctx, 0.7));

    auto big = make_kernel_context(1e6, 1.0);
    CHECK(xi_alpha(big, 1.0) == doctest::Approx(1.0).epsilon(1e-5));

    const double ref = oracle::trig_transform(
        [](double k) { return std::exp(-k * k / 100.0); }, 0.2, true, 80.0, 4096);
    CHECK(xi_alpha(ctx, 0.2) == doctest::Approx(ref).epsilon(1e-10));

    // continuity across the asymptotic-branch switch (z = 25)
    auto mid = make_kernel_context(2.0, 1.0);
    const double s_switch = 25.0 / std::sqrt(1.0);  // z = s sqrt(alpha/2) = s at alpha = 2
    for (double s : {s_switch * 0.999, s_switch * 1.001}) {
        const double refq = oracle::trig_transform(
            [](double k) { return std::exp(-k * k / 4.0); }, s, true, 30.0, 4096);
        CHECK(xi_alpha(mid, s) == doctest::Approx(refq).epsilon(1e-9));
    }
}

TEST_CASE("xi_alpha_prime consistent with finite differences") {
    auto ctx = make_kernel_context(30.0, 1.0);
    for (double s : {0.05, 0.4, 1.3}) {
        const double h = 1e-6;
        const double fd = (xi_alpha(ctx, s + h) - xi_alpha(ctx, s - h)) / (2 * h);
        CHECK(xi_alpha_prime(ctx, s) == doctest::Approx(fd).epsilon(1e-7));
    }
    // asymptotic branch too
    auto big = make_kernel_context(1e4, 1.0);
    const double s = 26.0 / std::sqrt(1e4 / 2.0) * 1.5;
    const double h = 1e-7;
    const double fd = (xi_alpha(big, s + h) - xi_alpha(big, s - h)) / (2 * h);
    CHECK(xi_alpha_prime(big, s) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("f_alpha endpoints and Simpson oracle") {
    auto ctx = make_kernel_context(100.0, 1.0);
    CHECK(f_alpha(ctx, ctx.t_c) == 0.0);
    CHECK_THROWS_AS(f_alpha(ctx, -1.0), std::invalid_argument);

    auto big = make_kernel_context(1e8, 1.0);
    CHECK(f_alpha(big, M_E * big.t_c) == doctest::Approx(1.0).epsilon(1e-3));

    const double ref = oracle::simpson([&](double tau) { return xi_alpha(ctx, tau); }, ctx.t_c,
                                       0.5, 200000);
    CHECK(f_alpha(ctx, 0.5) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("f_alpha_zero against the k-integral quadrature") {
    // oracle: int_0^inf e^{-k^2/2a} (cos(k t_c) - 1)/k dk on trig-aligned panels
    auto oracle_f0 = [](double alpha, double t_c) {
        const double kmax = std::sqrt(alpha) * 9.5 + 20.0;
        std::vector<double> pts;
        const double halfp = M_PI / t_c;
        for (double p = 0.0; p < kmax; p += halfp) pts.push_back(p);
        pts.push_back(kmax);
        auto integrand = [&](double k) {
            return std::exp(-k * k / (2 * alpha)) * (std::cos(k * t_c) - 1.0) / k;
        };
        // the integrand is regular at k -> 0 (limit 0); nudge the first node
        pts[0] = 1e-12;
        auto r = integrate_breakpoints(integrand, pts, 1e-12, 1e-12);
        return r.value;
    };
    for (double alpha : {1e2, 1e4}) {
        auto ctx = make_kernel_context(alpha, 1.0);
        CHECK(f_alpha_zero(ctx) == doctest::Approx(oracle_f0(alpha, ctx.t_c)).epsilon(1e-9));
    }
    // alpha -> 0 limit vanishes
    auto tiny = make_kernel_context(1e-8, 1.0);
    CHECK(std::abs(f_alpha_zero(tiny)) < 1e-7);
}

TEST_CASE("f_alpha_zero alpha-derivative expansion") {
    // d/dalpha F_alpha(0) = -1/(2 c alpha) - 1/(2 c^3 t_c^2 alpha^2) + O(alpha^-3)
    const double alpha = 1e3;
    auto at = [&](double a) { return f_alpha_zero(make_kernel_context(a, 1.0)); };
    const double h = 0.02 * alpha;
    const double d1 =
        (-at(alpha + 2 * h) + 8 * at(alpha + h) - 8 * at(alpha - h) + at(alpha - 2 * h)) /
        (12.0 * h);
    const double expect = -1.0 / (2.0 * alpha) - 1.0 / (2.0 * alpha * alpha);
    CHECK(d1 == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("f_alpha_zero large-alpha expansion with zeta") {
    auto ctx = make_kernel_context(1e4, 1.0, 1.0);
    const double lhs = f_alpha_zero(ctx) + 0.5 * std::log(ctx.eta * ctx.eta * ctx.alpha) - ctx.zeta;
    const double expect = 1.0 / (2.0 * ctx.eta * ctx.eta * ctx.t_tilde * ctx.t_tilde * ctx.alpha);
    CHECK(lhs == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("zeta ladder: dual ladders, eta shift, derivative") {
    auto za = zeta_const(1.0);
    // second, independent ladder (offset nodes), extrapolated by hand
    std::vector<double> xs, ys;
    for (int k = 0; k <= 8; ++k) {
        const double alpha = std::pow(10.0, 2.25 + 0.5 * k);
        auto ctx = make_kernel_context(alpha, 1.0, 1.0);
        xs.push_back(1.0 / alpha);
        ys.push_back(f_alpha_zero(ctx) + 0.5 * std::log(alpha));
    }
    auto zb = neville_to_zero(xs, ys);
    CHECK(za.value == doctest::Approx(zb.value).epsilon(1e-7));

    // closed form of the ladder limit: zeta = -ln(sqrt(2)/m) - gamma/2 (hbar=c=1)
    CHECK(za.value == doctest::Approx(-0.5 * std::log(2.0) - 0.5 * kGamma).epsilon(1e-7));

    // zeta(eta) = zeta - ln(eta)/c
    for (double eta : {0.5, 2.0}) {
        auto ze = zeta_const_eta(1.0, 1.0, eta);
        CHECK(ze.value == doctest::Approx(za.value - std::log(eta)).epsilon(1e-7));
    }

    // d zeta / d eta = -1/(eta c) by central differences
    const double eta = 1.3, h = 1e-3;
    const double d1 =
        (zeta_const_eta(1.0, 1.0, eta + h).value - zeta_const_eta(1.0, 1.0, eta - h).value) /
        (2 * h);
    CHECK(d1 == doctest::Approx(-1.0 / eta).epsilon(1e-6));
}

TEST_CASE("zeta residual converges like 1/alpha") {
    auto z = zeta_const(1.0);
    std::vector<double> alphas, resid;
    for (int k = 0; k <= 6; ++k) {
        const double alpha = std::pow(10.0, 2.0 + 0.5 * k);
        auto ctx = make_kernel_context(alpha, 1.0, 1.0);
        alphas.push_back(alpha);
        resid.push_back(f_alpha_zero(ctx) + 0.5 * std::log(alpha) - z.value);
    }
    const double slope = oracle::loglog_slope(alphas, resid);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("closure property: axis-aligned and randomized") {
    CHECK(closure_check(Vec(1.0, 0.0), {Vec(0.0, 1.0)}) == doctest::Approx(0.0));
    CHECK(closure_check(Vec(0.0, 0.0, 1.0), {Vec(1.0, 0.0, 0.0), Vec(0.0, 1.0, 0.0)}) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(closure_check(Vec(1.0, 1.0), {Vec(0.0, 1.0)}), std::invalid_argument);

    std::mt19937 rng(20240817);
    std::normal_distribution<double> gauss;
    double worst2 = 0.0, worst3 = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Vec k2(gauss(rng), gauss(rng));
        k2 *= 1.0 / k2.norm();
        worst2 = std::max(worst2, closure_check(k2, polarization_basis(k2)));
        Vec k3(gauss(rng), gauss(rng), gauss(rng));
        k3 *= 1.0 / k3.norm();
        worst3 = std::max(worst3, closure_check(k3, polarization_basis(k3)));
    }
    CHECK(worst2 < 1e-12);
    CHECK(worst3 < 1e-12);
}

TEST_CASE("kernel context invariants") {
    auto ctx = make_kernel_context(123.0, 2.0, 0.7);
    CHECK(ctx.t_c == ctx.eta * ctx.t_tilde);
    CHECK(ctx.alpha0 == doctest::Approx(std::exp(2.0 * ctx.c * ctx.zeta)).epsilon(1e-15));
    CHECK_THROWS_AS(make_kernel_context(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel_context(1.0, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("kernel table export shape") {
    auto rows = kernel_table("rho", {1.0, 10.0}, {0.0, 0.5}, 1.0, 1.0);
    CHECK(rows.size() == 4);
    CHECK(rows[0].value == doctest::Approx(std::sqrt(1.0 / (2 * M_PI))));
}
