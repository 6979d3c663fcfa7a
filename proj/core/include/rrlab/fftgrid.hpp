#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "rrlab/vec.hpp"

namespace rrlab {

/// Periodic complex field on an n^dim grid with in-place FFTs.  The momentum
/// translation sub-step exp(-i v.p dt) is a pure phase in the conjugate
/// representation, so every propagator sub-step is an exact isometry.
class WaveGrid {
public:
    WaveGrid(int dim, int n, double L);
    ~WaveGrid();
    WaveGrid(const WaveGrid&) = delete;
    WaveGrid& operator=(const WaveGrid&) = delete;

    int dim() const { return dim_; }
    int n() const { return n_; }
    double L() const { return L_; }
    double h() const { return L_ / n_; }
    std::size_t size() const { return psi_.size(); }

    std::complex<double>& operator[](std::size_t i) { return psi_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return psi_[i]; }
    std::vector<std::complex<double>>& data() { return psi_; }
    const std::vector<std::complex<double>>& data() const { return psi_; }

    double x_of(int index_1d) const { return -0.5 * L_ + index_1d * h(); }
    double k_of(int index_1d) const;
    Vec x_at(std::size_t flat) const;

    /// Loads f(x) and normalizes to unit L2 norm.
    void fill(const std::function<std::complex<double>(const Vec&)>& f);
    double norm() const;
    void normalize();

    /// psi *= exp(-i V(x) dt) with V given on the grid.
    void apply_potential_phase(const std::vector<double>& V, double dt);
    /// psi *= exp(-i (v . k) dt) in the momentum representation (exact shift).
    void apply_translation(const Vec& v, double dt);
    /// psi *= exp(-i k^2/(2m) dt) in the momentum representation.
    void apply_kinetic_phase(double mass, double dt);
    /// psi *= exp(-k^2/(2m) dtau): imaginary-time damping for relaxation.
    void apply_kinetic_damping(double mass, double dtau);

    Vec expectation_x() const;
    /// < -grad V > for a gradient sampled on the grid (dim * size layout).
    Vec expectation_neg_gradV(const std::vector<double>& gradV) const;
    /// <psi| p^2/2m + V |psi> with the kinetic part evaluated spectrally.
    double energy(const std::vector<double>& V, double mass);

private:
    int dim_, n_;
    double L_;
    std::vector<std::complex<double>> psi_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    void fft_forward();
    void fft_backward();
};

}  // namespace rrlab
