#include "doctest.h"
#include <stdexcept>
#include "oracles.hpp"
#include "rrlab/memconv.hpp"
#include "rrlab/quadrature.hpp"

#include <cmath>
#include <complex>

using namespace rrlab;

namespace {
constexpr double kGamma = 0.57721566490153286060651209008240243;

std::vector<double> sample_tau(const std::function<double(double)>& f_of_tau, double dt, double T) {
    // history array in t' ascending; tau = T - t'
    const int n = static_cast<int>(T / dt) + 1;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = f_of_tau(T - i * dt);
    return out;
}
}  // namespace

TEST_CASE("conv_time: zero signal and analytic Laplace oracle") {
    std::vector<double> zeros(5000, 0.0);
    CHECK(conv_time(zeros, 0.01, 1.0).value == 0.0);

    // f(tau) = e^{-tau}:  I = int_0^inf e^{-tau} ln(tau/t_c) dtau = -gamma - ln t_c
    for (double t_c : {1.0, 0.37}) {
        auto f = sample_tau([](double tau) { return std::exp(-tau); }, 0.005, 40.0);
        auto r = conv_time(f, 0.005, t_c);
        CHECK(r.value == doctest::Approx(-kGamma - std::log(t_c)).epsilon(1e-8));
        CHECK(r.sufficient_history);
    }
}

TEST_CASE("conv_time: singular-panel refinement is at least 2nd order") {
    // error against the exact Laplace value as dt halves
    const double exact = -kGamma;
    std::vector<double> errs;
    for (double dt : {0.04, 0.02, 0.01}) {
        auto f = sample_tau([](double tau) { return std::exp(-tau); }, dt, 60.0);
        errs.push_back(std::abs(conv_time(f, dt, 1.0).value - exact));
    }
    CHECK(errs[0] / errs[1] >= 4.0);
    CHECK(errs[1] / errs[2] >= 4.0);
}

TEST_CASE("conv_time flags insufficient history") {
    // abruptly truncated non-decaying signal
    std::vector<double> f(2000, 1.0);
    auto r = conv_time(f, 0.01, 1.0);
    CHECK(!r.sufficient_history);
}

TEST_CASE("conv_freq: constant spectrum closed form") {
    for (double omega_cut : {0.7, 2.0}) {
        const double f0 = 0.42;
        auto spec = spectrum_analytic(
            [&](double w) {
                return w <= omega_cut ? std::complex<double>(f0, 0.0)
                                      : std::complex<double>(0.0, 0.0);
            },
            f0, {0.0, 0.0}, -2.0);
        const double t_c = 0.8;
        const double got = conv_freq(spec, t_c, omega_cut);
        const double expect = -M_PI * f0 * (std::log(omega_cut * t_c) + kGamma);
        CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("conv_freq equals conv_time and the Laplace closed form (damped cosine)") {
    // f(tau) = cos(W0 tau) e^{-a tau}
    const double W0 = 1.0, a = 0.08, t_c = 1.0;
    const std::complex<double> z(a, W0);
    const double closed =
        (-(kGamma + std::log(z * t_c)) / z).real();  // Re of the complex Laplace form

    auto f = sample_tau([&](double tau) { return std::cos(W0 * tau) * std::exp(-a * tau); },
                        0.004, 250.0);
    auto rt = conv_time(f, 0.004, t_c);
    CHECK(rt.value == doctest::Approx(closed).epsilon(1e-7));

    // analytic spectrum of the same signal
    auto ft = [&](double w) {
        return 0.5 / (2.0 * M_PI) *
               (1.0 / std::complex<double>(a, w - W0) + 1.0 / std::complex<double>(a, w + W0));
    };
    const std::complex<double> f0 = ft(0.0);
    const double h = 1e-4;
    const std::complex<double> f0p = (ft(h) - ft(-h)) / (2.0 * h);
    auto spec = spectrum_analytic(ft, f0.real(), f0p, -1.0);
    for (double wcut : {5.0, 11.0}) {
        const double rf = conv_freq(spec, t_c, wcut, 1e-11);
        CHECK(rf == doctest::Approx(closed).epsilon(1e-8));
        CHECK(rf == doctest::Approx(rt.value).epsilon(1e-6));
    }
}

TEST_CASE("spectrum_from_samples reproduces the analytic transform") {
    const double W0 = 1.3, a = 0.15;
    auto f = sample_tau([&](double tau) { return std::cos(W0 * tau) * std::exp(-a * tau); },
                        0.005, 200.0);
    auto spec = spectrum_from_samples(f, 0.005);
    auto ft = [&](double w) {
        return 0.5 / (2.0 * M_PI) *
               (1.0 / std::complex<double>(a, w - W0) + 1.0 / std::complex<double>(a, w + W0));
    };
    for (double w : {0.0, 0.9, 2.5}) {
        CHECK(spec.f_tilde(w).real() == doctest::Approx(ft(w).real()).epsilon(1e-5));
        CHECK(spec.f_tilde(w).imag() ==
              doctest::Approx(ft(w).imag()).epsilon(1e-5).scale(std::abs(ft(w))));
    }
    CHECK(spec.f0 == doctest::Approx(ft(0.0).real()).epsilon(1e-6));
}

TEST_CASE("chi moments: recursion, trivial history, falloff") {
    SwitchingProfile sw;
    sw.q = 0.1;
    sw.T_sw = 50.0;
    sw.t_on = -600.0;
    const double t0 = -1400.0, dt = 0.02;
    const int n = static_cast<int>((0.0 - t0) / dt) + 1;
    auto tr = harmonic_trajectory(0.05, 1.0, 0, 2, sw, t0, dt, n);

    for (double w : {0.35, 1.7}) {
        auto chi2 = chi_moments(tr, 2, w);
        CHECK(chi2.recursion_residual < 1e-8);
        auto chi3 = chi_moments(tr, 3, w);
        CHECK(chi3.recursion_residual < 1e-8);
    }

    // v = 0 history: boundary term only (here zero since v and derivatives vanish)
    auto still = Trajectory::sample([](double) { return Vec(0.0, 0.0); }, sw, t0, dt, n, 2);
    auto chi = chi_moments(still, 2, 0.5);
    CHECK(std::abs(chi.chi[0]) == doctest::Approx(0.0));

    // high-frequency falloff: |chi_2| at 1000 w0 far below its peak
    auto peak = std::abs(chi_moments(tr, 2, 1.0).chi[0]);
    auto far = std::abs(chi_moments(tr, 2, 1000.0).chi[0]);
    CHECK(far < 1e-4 * peak);
}

TEST_CASE("admissibility checks") {
    // well-behaved signal from a propagated-like harmonic history
    SwitchingProfile sw;
    sw.q = 0.1;
    sw.T_sw = 50.0;
    sw.t_on = -600.0;
    const double t0 = -1400.0, dt = 0.02;
    const int n = static_cast<int>((0.0 - t0) / dt) + 1;
    auto tr = harmonic_trajectory(0.05, 1.0, 0, 2, sw, t0, dt, n);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = tr.q_sample(i) * tr.vddot_fn(tr.t_at(i))[0];
    auto spec = spectrum_from_samples(f, dt);
    auto rep = admissibility_check(spec);
    CHECK(rep.cond1.pass);
    CHECK(rep.cond3.pass);
    CHECK(rep.cond4.pass);
    CHECK(rep.all_pass());
    // the low-Omega coefficients follow the (1/2pi) q_t vddot(t), -(i/2pi) q_t vdot(t) pattern
    const double qt = tr.q_at(0.0);
    CHECK(spec.f0 ==
          doctest::Approx(qt * tr.vdot_fn(0.0)[0] / (2.0 * M_PI)).epsilon(1e-4));
    CHECK(spec.f0_prime.imag() ==
          doctest::Approx(-qt * tr.v_fn(0.0)[0] / (2.0 * M_PI)).epsilon(1e-3));

    // constant signal: cond1 fails
    std::vector<double> flat(4000, 1.0);
    auto bad = admissibility_check(spectrum_from_samples(flat, 0.01));
    CHECK(!bad.cond1.pass);

    // synthetic spectrum with Omega^{-1/2} tail: cond4 fails
    auto slow = spectrum_analytic(
        [](double w) { return std::complex<double>(1.0 / std::sqrt(1.0 + w), 0.0); }, 1.0,
        {0.0, 0.0}, -0.5);
    CHECK(!admissibility_check(slow).cond4.pass);
}

TEST_CASE("conv_time is linear and additive over matched windows") {
    auto f1 = sample_tau([](double tau) { return std::exp(-tau); }, 0.01, 30.0);
    auto f2 = sample_tau([](double tau) { return std::cos(2.0 * tau) * std::exp(-0.3 * tau); },
                         0.01, 30.0);
    std::vector<double> sum(f1.size());
    for (std::size_t i = 0; i < f1.size(); ++i) sum[i] = 2.0 * f1[i] - 0.5 * f2[i];
    const double lhs = conv_time(sum, 0.01, 1.0).value;
    const double rhs = 2.0 * conv_time(f1, 0.01, 1.0).value - 0.5 * conv_time(f2, 0.01, 1.0).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("conv_freq rejects inadmissible spectra with the violated condition named") {
    auto slow = spectrum_analytic(
        [](double w) { return std::complex<double>(1.0 / std::sqrt(1.0 + w), 0.0); }, 1.0,
        {0.0, 0.0}, -0.5);
    try {
        conv_freq(slow, 1.0, 2.0);
        CHECK(false);
    } catch (const AdmissibilityError& e) {
        CHECK(e.condition == "cond4");
    }
}
