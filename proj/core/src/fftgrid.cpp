#include "rrlab/fftgrid.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace rrlab {

WaveGrid::WaveGrid(int dim, int n, double L) : dim_(dim), n_(n), L_(L) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("WaveGrid: dim must be 1..3");
    if (n < 8) throw std::invalid_argument("WaveGrid: n too small");
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    psi_.assign(total, {0.0, 0.0});
    int dims[3] = {n, n, n};
    auto* raw = reinterpret_cast<fftw_complex*>(psi_.data());
    plan_fwd_ = fftw_plan_dft(dim, dims, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft(dim, dims, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("WaveGrid: fftw plan failed");
}

WaveGrid::~WaveGrid() {
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

double WaveGrid::k_of(int i) const {
    const int half = n_ / 2;
    const int m = i <= half ? i : i - n_;
    return 2.0 * M_PI / L_ * m;
}

Vec WaveGrid::x_at(std::size_t flat) const {
    Vec r = Vec::zero(dim_);
    std::size_t rem = flat;
    for (int d = 0; d < dim_; ++d) {
        r[d] = x_of(static_cast<int>(rem % n_));
        rem /= n_;
    }
    return r;
}

void WaveGrid::fill(const std::function<std::complex<double>(const Vec&)>& f) {
    for (std::size_t i = 0; i < psi_.size(); ++i) psi_[i] = f(x_at(i));
    normalize();
}

double WaveGrid::norm() const {
    long double s = 0.0L;
    for (const auto& z : psi_) s += std::norm(z);
    return std::sqrt(static_cast<double>(s) * std::pow(h(), dim_));
}

void WaveGrid::normalize() {
    const double nn = norm();
    if (nn == 0.0) throw std::runtime_error("WaveGrid: cannot normalize zero field");
    for (auto& z : psi_) z /= nn;
}

void WaveGrid::fft_forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }

void WaveGrid::fft_backward() {
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    const double scale = 1.0 / static_cast<double>(psi_.size());
    for (auto& z : psi_) z *= scale;
}

void WaveGrid::apply_potential_phase(const std::vector<double>& V, double dt) {
    for (std::size_t i = 0; i < psi_.size(); ++i)
        psi_[i] *= std::polar(1.0, -V[i] * dt);
}

void WaveGrid::apply_translation(const Vec& v, double dt) {
    // 1-D phase tables per axis; the full phase factorizes
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(dim_) * n_);
    for (int d = 0; d < dim_; ++d)
        for (int i = 0; i < n_; ++i)
            phase[static_cast<std::size_t>(d) * n_ + i] = std::polar(1.0, -v[d] * k_of(i) * dt);
    fft_forward();
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        std::size_t rem = i;
        std::complex<double> p{1.0, 0.0};
        for (int d = 0; d < dim_; ++d) {
            p *= phase[static_cast<std::size_t>(d) * n_ + (rem % n_)];
            rem /= n_;
        }
        psi_[i] *= p;
    }
    fft_backward();
}

void WaveGrid::apply_kinetic_phase(double mass, double dt) {
    fft_forward();
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        std::size_t rem = i;
        double k2 = 0.0;
        for (int d = 0; d < dim_; ++d) {
            const double kk = k_of(static_cast<int>(rem % n_));
            k2 += kk * kk;
            rem /= n_;
        }
        psi_[i] *= std::polar(1.0, -0.5 * k2 / mass * dt);
    }
    fft_backward();
}

void WaveGrid::apply_kinetic_damping(double mass, double dtau) {
    fft_forward();
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        std::size_t rem = i;
        double k2 = 0.0;
        for (int d = 0; d < dim_; ++d) {
            const double kk = k_of(static_cast<int>(rem % n_));
            k2 += kk * kk;
            rem /= n_;
        }
        psi_[i] *= std::exp(-0.5 * k2 / mass * dtau);
    }
    fft_backward();
}

Vec WaveGrid::expectation_x() const {
    long double acc[3] = {0.0L, 0.0L, 0.0L};
    const double w = std::pow(h(), dim_);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double rho = std::norm(psi_[i]) * w;
        std::size_t rem = i;
        for (int d = 0; d < dim_; ++d) {
            acc[d] += x_of(static_cast<int>(rem % n_)) * rho;
            rem /= n_;
        }
    }
    Vec r = Vec::zero(dim_);
    for (int d = 0; d < dim_; ++d) r[d] = static_cast<double>(acc[d]);
    return r;
}

Vec WaveGrid::expectation_neg_gradV(const std::vector<double>& gradV) const {
    long double acc[3] = {0.0L, 0.0L, 0.0L};
    const double w = std::pow(h(), dim_);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double rho = std::norm(psi_[i]) * w;
        for (int d = 0; d < dim_; ++d)
            acc[d] -= gradV[static_cast<std::size_t>(d) * psi_.size() + i] * rho;
    }
    Vec r = Vec::zero(dim_);
    for (int d = 0; d < dim_; ++d) r[d] = static_cast<double>(acc[d]);
    return r;
}

double WaveGrid::energy(const std::vector<double>& V, double mass) {
    const double w = std::pow(h(), dim_);
    double pot = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) pot += V[i] * std::norm(psi_[i]) * w;
    // kinetic part spectrally
    std::vector<std::complex<double>> saved = psi_;
    fft_forward();
    double kin = 0.0, tot = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        std::size_t rem = i;
        double k2 = 0.0;
        for (int d = 0; d < dim_; ++d) {
            const double kk = k_of(static_cast<int>(rem % n_));
            k2 += kk * kk;
            rem /= n_;
        }
        const double a = std::norm(psi_[i]);
        kin += 0.5 * k2 / mass * a;
        tot += a;
    }
    psi_ = saved;
    return pot + kin / tot;
}

}  // namespace rrlab
