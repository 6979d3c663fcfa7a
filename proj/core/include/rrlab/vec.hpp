#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace rrlab {

// Fixed-capacity spatial vector; dim is 2 or 3, unused slots stay zero.
struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 3;

    Vec() = default;
    Vec(double x, double y) : c{x, y, 0.0}, dim(2) {}
    Vec(double x, double y, double z) : c{x, y, z}, dim(3) {}
    static Vec zero(int d) {
        Vec v;
        v.dim = d;
        return v;
    }

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < dim; ++i) c[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }

    double dot(const Vec& o) const {
        double r = 0.0;
        for (int i = 0; i < dim; ++i) r += c[i] * o.c[i];
        return r;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    double max_abs() const {
        double r = 0.0;
        for (int i = 0; i < dim; ++i) r = std::max(r, std::abs(c[i]));
        return r;
    }
};

}  // namespace rrlab
