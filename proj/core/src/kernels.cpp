#include "rrlab/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "rrlab/quadrature.hpp"
#include "rrlab/special.hpp"

namespace rrlab {

namespace {

double f_alpha_zero_raw(double alpha, double c, double t_c) {
    // F_alpha(0) = -int_0^{t_c} Xi_alpha(c tau) dtau = -(2/c) int_0^X D(v) dv,
    // X = c t_c sqrt(alpha/2).
    const double X = c * t_c * std::sqrt(alpha / 2.0);
    return -(2.0 / c) * dawson_integral(X);
}

ZetaResult zeta_ladder(double m, double c, double eta, double tol, double ladder_offset) {
    const double t_tilde = 1.0 / (m * c * c);
    const double t_c = eta * t_tilde;
    std::vector<double> xs, ys;
    for (int k = 0; k <= 8; ++k) {
        const double alpha = std::pow(10.0, 2.0 + ladder_offset + 0.5 * k);
        xs.push_back(1.0 / alpha);
        ys.push_back(f_alpha_zero_raw(alpha, c, t_c) + std::log(alpha) / (2.0 * c));
    }
    auto ex = neville_to_zero(xs, ys);
    if (!(ex.error < tol))
        throw std::runtime_error("zeta_const: ladder extrapolation did not converge");
    return {ex.value, ex.error};
}

}  // namespace

ZetaResult zeta_const_eta(double m, double c, double eta, double tol) {
    return zeta_ladder(m, c, eta, tol, 0.0);
}

ZetaResult zeta_const(double m, double c, double tol) { return zeta_const_eta(m, c, 1.0, tol); }

KernelContext make_kernel_context(double alpha, double m, double eta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("KernelContext: alpha must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("KernelContext: eta must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("KernelContext: mass must be positive");
    static std::map<std::pair<double, double>, double> cache;
    static std::mutex cache_mutex;
    const double c = 1.0;
    double zeta;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto key = std::make_pair(m, c);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, zeta_const(m, c).value).first;
        zeta = it->second;
    }
    KernelContext ctx;
    ctx.alpha = alpha;
    ctx.c = c;
    ctx.m = m;
    ctx.eta = eta;
    ctx.t_tilde = 1.0 / (m * c * c);
    ctx.t_c = eta * ctx.t_tilde;
    ctx.zeta = zeta;
    ctx.alpha0 = std::exp(2.0 * c * zeta);
    return ctx;
}

double rho_alpha(const KernelContext& ctx, double s) {
    return std::sqrt(ctx.alpha / (2.0 * M_PI)) * std::exp(-0.5 * ctx.alpha * s * s);
}

double rho_moment(const KernelContext& ctx, int n) {
    const double a = ctx.alpha, c = ctx.c;
    switch (n) {
        case 0: return 0.0;
        case 1: return std::sqrt(a / (2.0 * M_PI));
        case 2: return 1.0 / c;
        case 3: return 3.0 / (c * c) * std::sqrt(2.0 / (M_PI * a));
        default: throw std::invalid_argument("rho_moment: n must be in 0..3");
    }
}

double xi_alpha(const KernelContext& ctx, double s) {
    if (s == 0.0) return 0.0;
    const double sign = s < 0 ? -1.0 : 1.0;
    const double z = std::abs(s) * std::sqrt(ctx.alpha / 2.0);
    if (z > 25.0) {
        // 1/s asymptotic branch: sqrt(2a) D(z) = (1/|s|)(1 + 1/(2z^2) + 3/(4z^4) + ...)
        const double iz2 = 1.0 / (z * z);
        return sign / std::abs(s) * (1.0 + 0.5 * iz2 + 0.75 * iz2 * iz2 + 1.875 * iz2 * iz2 * iz2);
    }
    return sign * std::sqrt(2.0 * ctx.alpha) * dawson(z);
}

double xi_alpha_prime(const KernelContext& ctx, double s) {
    const double z = std::abs(s) * std::sqrt(ctx.alpha / 2.0);
    if (z > 25.0) {
        // d/ds of the asymptotic branch: -(1/s^2)(1 + 3/(2z^2) + 15/(4z^4) + ...)
        const double iz2 = 1.0 / (z * z);
        return -(1.0 / (s * s)) * (1.0 + 1.5 * iz2 + 3.75 * iz2 * iz2);
    }
    // Xi(s) = sqrt(2a) D(z), D'(z) = 1 - 2 z D(z)  =>  Xi'(s) = alpha (1 - 2 z D(z))
    return ctx.alpha * (1.0 - 2.0 * z * dawson(z));
}

double f_alpha(const KernelContext& ctx, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("f_alpha: delta must be positive");
    if (delta == ctx.t_c) return 0.0;
    auto r = integrate_adaptive([&](double tau) { return xi_alpha(ctx, ctx.c * tau); }, ctx.t_c,
                                delta, 1e-13, 1e-12);
    return r.value;
}

double f_alpha_zero(const KernelContext& ctx) {
    return f_alpha_zero_raw(ctx.alpha, ctx.c, ctx.t_c);
}

std::vector<Vec> polarization_basis(const Vec& k_hat) {
    std::vector<Vec> basis;
    if (k_hat.dim == 2) {
        Vec e(-k_hat[1], k_hat[0]);
        basis.push_back(e);
        return basis;
    }
    // pick the axis least aligned with k_hat, Gram-Schmidt the rest
    int least = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(k_hat[i]) < std::abs(k_hat[least])) least = i;
    Vec e1 = Vec::zero(3);
    e1[least] = 1.0;
    e1 -= k_hat * e1.dot(k_hat);
    e1 *= 1.0 / e1.norm();
    Vec e2(k_hat[1] * e1[2] - k_hat[2] * e1[1], k_hat[2] * e1[0] - k_hat[0] * e1[2],
           k_hat[0] * e1[1] - k_hat[1] * e1[0]);
    basis.push_back(e1);
    basis.push_back(e2);
    return basis;
}

double closure_check(const Vec& k_hat, const std::vector<Vec>& basis) {
    if (std::abs(k_hat.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("closure_check: k_hat must be a unit vector");
    const int d = k_hat.dim;
    if ((d == 2 && basis.size() != 1) || (d == 3 && basis.size() != 2))
        throw std::invalid_argument("closure_check: polarization set size mismatch");
    double dev = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double m = k_hat[i] * k_hat[j];
            for (const auto& e : basis) m += e[i] * e[j];
            dev = std::max(dev, std::abs(m - (i == j ? 1.0 : 0.0)));
        }
    return dev;
}

std::vector<KernelTableRow> kernel_table(const char* which, const std::vector<double>& alphas,
                                         const std::vector<double>& ss, double m, double eta) {
    std::vector<KernelTableRow> rows;
    const std::string name(which);
    for (double a : alphas) {
        auto ctx = make_kernel_context(a, m, eta);
        for (double s : ss) {
            double v;
            if (name == "rho")
                v = rho_alpha(ctx, s);
            else if (name == "xi")
                v = xi_alpha(ctx, s);
            else if (name == "f")
                v = s > 0 ? f_alpha(ctx, s) : f_alpha_zero(ctx);
            else
                throw std::invalid_argument("kernel_table: unknown kernel " + name);
            rows.push_back({a, s, v});
        }
    }
    return rows;
}

}  // namespace rrlab
