#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rrlab/vec.hpp"

namespace rrlab {

/// Adiabatic charge ramp q_t = q (1 + tanh((t - t_on)/T_sw)) / 2.
struct SwitchingProfile {
    double q = 0.0;
    double T_sw = 50.0;
    double t_on = 0.0;
    double at(double t) const;
    double dot_at(double t) const;
};

/// Uniformly sampled c-number trajectory with optional analytic closures.
/// Velocity derivatives come from 4th-order central differences, one-sided
/// at the edges.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    int n = 0;
    int dim = 3;
    std::vector<double> v;  // n * dim, component-major per sample
    std::vector<double> q;  // n
    SwitchingProfile switching;

    std::function<Vec(double)> v_fn;      // optional analytic velocity
    std::function<Vec(double)> vdot_fn;   // optional analytic acceleration
    std::function<Vec(double)> vddot_fn;  // optional analytic jerk of x (v-ddot)

    static Trajectory sample(const std::function<Vec(double)>& velocity,
                             const SwitchingProfile& sw, double t0, double dt, int n, int dim);

    double t_at(int i) const { return t0 + i * dt; }
    double t_end() const { return t_at(n - 1); }
    Vec v_sample(int i) const;
    double q_sample(int i) const { return q[i]; }

    Vec v_at(double t) const;      // analytic if available, else cubic interpolation
    Vec vdot_at(double t) const;   // first derivative of v
    Vec vddot_at(double t) const;  // second derivative of v
    double q_at(double t) const;

    Vec vdot_grid(int i) const;   // finite-difference derivative at a grid point
    Vec vddot_grid(int i) const;
};

/// Harmonic test trajectory v(t) = v0 sin(omega0 t) along the given axis,
/// with analytic derivatives attached.
Trajectory harmonic_trajectory(double v0, double omega0, int axis, int dim,
                               const SwitchingProfile& sw, double t0, double dt, int n);

/// Ring buffer of (v, vdot, vddot) samples on a uniform time grid.  Oldest
/// entries are dropped once capacity is exceeded.
class VelocityHistory {
public:
    VelocityHistory() = default;
    VelocityHistory(int dim, double t0, double dt, std::size_t capacity);

    void push(const Vec& v, const Vec& vdot, const Vec& vddot, double q_t);
    std::size_t size() const { return count_; }
    bool dropped_samples() const { return dropped_; }
    double t_front() const;
    double t_back() const;
    double dt() const { return dt_; }
    int dim() const { return dim_; }

    Vec v(std::size_t i) const;      // i = 0 is the oldest retained sample
    Vec vdot(std::size_t i) const;
    Vec vddot(std::size_t i) const;
    double q(std::size_t i) const;

    /// Component series of q * vddot (the d=2 memory-kernel signal).
    std::vector<double> memory_signal(int component) const;

private:
    int dim_ = 3;
    double t0_ = 0.0, dt_ = 0.0;
    std::size_t capacity_ = 0, count_ = 0, head_ = 0;
    bool dropped_ = false;
    std::vector<double> v_, vdot_, vddot_, q_;
    std::size_t slot(std::size_t i) const;
};

}  // namespace rrlab
