#include "rrlab/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace rrlab {

double SwitchingProfile::at(double t) const {
    return q * 0.5 * (1.0 + std::tanh((t - t_on) / T_sw));
}

double SwitchingProfile::dot_at(double t) const {
    const double s = 1.0 / std::cosh((t - t_on) / T_sw);
    return q * 0.5 * s * s / T_sw;
}

Trajectory Trajectory::sample(const std::function<Vec(double)>& velocity,
                              const SwitchingProfile& sw, double t0, double dt, int n, int dim) {
    if (n < 8) throw std::invalid_argument("Trajectory: need at least 8 samples");
    Trajectory tr;
    tr.t0 = t0;
    tr.dt = dt;
    tr.n = n;
    tr.dim = dim;
    tr.switching = sw;
    tr.v.resize(static_cast<std::size_t>(n) * dim);
    tr.q.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = t0 + i * dt;
        Vec vi = velocity(t);
        for (int k = 0; k < dim; ++k) tr.v[static_cast<std::size_t>(i) * dim + k] = vi[k];
        tr.q[i] = sw.at(t);
    }
    return tr;
}

Vec Trajectory::v_sample(int i) const {
    Vec r = Vec::zero(dim);
    for (int k = 0; k < dim; ++k) r[k] = v[static_cast<std::size_t>(i) * dim + k];
    return r;
}

namespace {

// 4-point Lagrange (cubic) interpolation on a uniform grid.
double cubic_interp(double fm1, double f0, double f1, double f2, double u) {
    const double a = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double b = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double d = (u + 1.0) * u * (u - 1.0) / 6.0;
    return a * fm1 + b * f0 + c * f1 + d * f2;
}

}  // namespace

Vec Trajectory::v_at(double t) const {
    if (v_fn) return v_fn(t);
    double x = (t - t0) / dt;
    int i = static_cast<int>(std::floor(x));
    i = std::max(1, std::min(i, n - 3));
    const double u = x - i;
    Vec r = Vec::zero(dim);
    for (int k = 0; k < dim; ++k) {
        auto at = [&](int j) { return v[static_cast<std::size_t>(j) * dim + k]; };
        r[k] = cubic_interp(at(i - 1), at(i), at(i + 1), at(i + 2), u);
    }
    return r;
}

Vec Trajectory::vdot_grid(int i) const {
    Vec r = Vec::zero(dim);
    auto at = [&](int j, int k) { return v[static_cast<std::size_t>(j) * dim + k]; };
    for (int k = 0; k < dim; ++k) {
        if (i >= 2 && i <= n - 3) {
            r[k] = (-at(i + 2, k) + 8 * at(i + 1, k) - 8 * at(i - 1, k) + at(i - 2, k)) /
                   (12.0 * dt);
        } else if (i < 2) {
            r[k] = (-25 * at(i, k) + 48 * at(i + 1, k) - 36 * at(i + 2, k) + 16 * at(i + 3, k) -
                    3 * at(i + 4, k)) /
                   (12.0 * dt);
        } else {
            r[k] = (25 * at(i, k) - 48 * at(i - 1, k) + 36 * at(i - 2, k) - 16 * at(i - 3, k) +
                    3 * at(i - 4, k)) /
                   (12.0 * dt);
        }
    }
    return r;
}

Vec Trajectory::vddot_grid(int i) const {
    Vec r = Vec::zero(dim);
    auto at = [&](int j, int k) { return v[static_cast<std::size_t>(j) * dim + k]; };
    const double h2 = dt * dt;
    for (int k = 0; k < dim; ++k) {
        if (i >= 2 && i <= n - 3) {
            r[k] = (-at(i + 2, k) + 16 * at(i + 1, k) - 30 * at(i, k) + 16 * at(i - 1, k) -
                    at(i - 2, k)) /
                   (12.0 * h2);
        } else if (i < 2) {
            r[k] = (45 * at(i, k) - 154 * at(i + 1, k) + 214 * at(i + 2, k) - 156 * at(i + 3, k) +
                    61 * at(i + 4, k) - 10 * at(i + 5, k)) /
                   (12.0 * h2);
        } else {
            r[k] = (45 * at(i, k) - 154 * at(i - 1, k) + 214 * at(i - 2, k) - 156 * at(i - 3, k) +
                    61 * at(i - 4, k) - 10 * at(i - 5, k)) /
                   (12.0 * h2);
        }
    }
    return r;
}

Vec Trajectory::vdot_at(double t) const {
    if (vdot_fn) return vdot_fn(t);
    double x = (t - t0) / dt;
    int i = static_cast<int>(std::floor(x));
    i = std::max(1, std::min(i, n - 3));
    const double u = x - i;
    Vec g[4] = {vdot_grid(i - 1), vdot_grid(i), vdot_grid(i + 1), vdot_grid(i + 2)};
    Vec r = Vec::zero(dim);
    for (int k = 0; k < dim; ++k) r[k] = cubic_interp(g[0][k], g[1][k], g[2][k], g[3][k], u);
    return r;
}

Vec Trajectory::vddot_at(double t) const {
    if (vddot_fn) return vddot_fn(t);
    double x = (t - t0) / dt;
    int i = static_cast<int>(std::floor(x));
    i = std::max(1, std::min(i, n - 3));
    const double u = x - i;
    Vec g[4] = {vddot_grid(i - 1), vddot_grid(i), vddot_grid(i + 1), vddot_grid(i + 2)};
    Vec r = Vec::zero(dim);
    for (int k = 0; k < dim; ++k) r[k] = cubic_interp(g[0][k], g[1][k], g[2][k], g[3][k], u);
    return r;
}

double Trajectory::q_at(double t) const { return switching.at(t); }

Trajectory harmonic_trajectory(double v0, double omega0, int axis, int dim,
                               const SwitchingProfile& sw, double t0, double dt, int n) {
    auto vel = [=](double t) {
        Vec r = Vec::zero(dim);
        r[axis] = v0 * std::sin(omega0 * t);
        return r;
    };
    Trajectory tr = Trajectory::sample(vel, sw, t0, dt, n, dim);
    tr.v_fn = vel;
    tr.vdot_fn = [=](double t) {
        Vec r = Vec::zero(dim);
        r[axis] = v0 * omega0 * std::cos(omega0 * t);
        return r;
    };
    tr.vddot_fn = [=](double t) {
        Vec r = Vec::zero(dim);
        r[axis] = -v0 * omega0 * omega0 * std::sin(omega0 * t);
        return r;
    };
    return tr;
}

VelocityHistory::VelocityHistory(int dim, double t0, double dt, std::size_t capacity)
    : dim_(dim), t0_(t0), dt_(dt), capacity_(capacity) {
    v_.reserve(capacity * dim);
    vdot_.reserve(capacity * dim);
    vddot_.reserve(capacity * dim);
    q_.reserve(capacity);
}

void VelocityHistory::push(const Vec& v, const Vec& vdot, const Vec& vddot, double q_t) {
    if (count_ < capacity_) {
        for (int k = 0; k < dim_; ++k) {
            v_.push_back(v[k]);
            vdot_.push_back(vdot[k]);
            vddot_.push_back(vddot[k]);
        }
        q_.push_back(q_t);
        ++count_;
    } else {
        const std::size_t s = head_;
        for (int k = 0; k < dim_; ++k) {
            v_[s * dim_ + k] = v[k];
            vdot_[s * dim_ + k] = vdot[k];
            vddot_[s * dim_ + k] = vddot[k];
        }
        q_[s] = q_t;
        head_ = (head_ + 1) % capacity_;
        t0_ += dt_;
        dropped_ = true;
    }
}

std::size_t VelocityHistory::slot(std::size_t i) const {
    return count_ < capacity_ ? i : (head_ + i) % capacity_;
}

double VelocityHistory::t_front() const { return t0_; }
double VelocityHistory::t_back() const { return t0_ + (count_ ? count_ - 1 : 0) * dt_; }

Vec VelocityHistory::v(std::size_t i) const {
    Vec r = Vec::zero(dim_);
    const std::size_t s = slot(i);
    for (int k = 0; k < dim_; ++k) r[k] = v_[s * dim_ + k];
    return r;
}

Vec VelocityHistory::vdot(std::size_t i) const {
    Vec r = Vec::zero(dim_);
    const std::size_t s = slot(i);
    for (int k = 0; k < dim_; ++k) r[k] = vdot_[s * dim_ + k];
    return r;
}

Vec VelocityHistory::vddot(std::size_t i) const {
    Vec r = Vec::zero(dim_);
    const std::size_t s = slot(i);
    for (int k = 0; k < dim_; ++k) r[k] = vddot_[s * dim_ + k];
    return r;
}

double VelocityHistory::q(std::size_t i) const { return q_[slot(i)]; }

std::vector<double> VelocityHistory::memory_signal(int component) const {
    std::vector<double> f(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        const std::size_t s = slot(i);
        f[i] = q_[s] * vddot_[s * dim_ + component];
    }
    return f;
}

}  // namespace rrlab
