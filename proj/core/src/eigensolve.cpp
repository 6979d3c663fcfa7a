#include "rrlab/eigensolve.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace rrlab {

namespace {

// One shift-invert Lanczos sweep, deflated against `locked`, returning Ritz
// pairs that pass the residual test.
void lanczos_sweep(const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& ldlt,
                   const Eigen::SparseMatrix<double>& H, int m, std::mt19937& rng,
                   const std::vector<Eigen::VectorXd>& locked, double tol,
                   std::vector<std::pair<double, Eigen::VectorXd>>& found) {
    const int n = static_cast<int>(H.rows());
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    for (const auto& u : locked) v -= u.dot(v) * u;
    const double nv = v.norm();
    if (nv < 1e-12) return;
    v /= nv;

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(m);
    std::vector<double> a, b;
    for (int j = 0; j < m; ++j) {
        basis.push_back(v);
        Eigen::VectorXd w = ldlt.solve(v);
        a.push_back(v.dot(w));
        w -= a.back() * v;
        if (j > 0) w -= b.back() * basis[j - 1];
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : locked) w -= u.dot(w) * u;
            for (const auto& u : basis) w -= u.dot(w) * u;
        }
        const double beta = w.norm();
        if (j + 1 >= m || beta < 1e-13) break;
        b.push_back(beta);
        v = w / beta;
    }

    const int mm = static_cast<int>(a.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
    for (int i = 0; i < mm; ++i) {
        T(i, i) = a[i];
        if (i + 1 < mm) T(i, i + 1) = T(i + 1, i) = b[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    for (int idx = mm - 1; idx >= 0; --idx) {
        const double theta = es.eigenvalues()[idx];
        if (theta <= 0.0) break;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < mm; ++i) x += es.eigenvectors()(i, idx) * basis[i];
        for (const auto& u : locked) x -= u.dot(x) * u;
        const double nx = x.norm();
        if (nx < 0.1) continue;  // Ritz vector collapsed onto locked space
        x /= nx;
        const double lambda = x.dot(H * x);
        const double res = (H * x - lambda * x).norm();
        if (res <= tol * std::max(1.0, std::abs(lambda))) found.emplace_back(lambda, std::move(x));
    }
}

}  // namespace

EigenPairs lowest_eigenpairs(const Eigen::SparseMatrix<double>& H, int k, unsigned seed,
                             int max_iter, double tol) {
    const int n = static_cast<int>(H.rows());
    if (k <= 0 || k > n) throw std::invalid_argument("lowest_eigenpairs: bad k");
    const int sweep_len = max_iter > 0 ? max_iter : std::min(n, 4 * k + 60);

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(H);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("lowest_eigenpairs: LDLT factorization failed (matrix SPD?)");

    std::mt19937 rng(seed);
    std::vector<Eigen::VectorXd> locked;
    std::vector<double> locked_vals;

    // Degenerate groups surface one Ritz vector per sweep; keep sweeping with
    // fresh deflated starts until two consecutive sweeps add nothing at or
    // below the k-th level.
    int quiet = 0;
    for (int round = 0; round < 3 * k + 8 && quiet < 2; ++round) {
        std::vector<std::pair<double, Eigen::VectorXd>> found;
        lanczos_sweep(ldlt, H, sweep_len, rng, locked, tol, found);
        std::sort(found.begin(), found.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        bool added_low = false;
        double kth = std::numeric_limits<double>::infinity();
        if ((int)locked.size() >= k) {
            std::vector<double> sorted_vals = locked_vals;
            std::sort(sorted_vals.begin(), sorted_vals.end());
            kth = sorted_vals[k - 1];
        }
        for (auto& [val, vec] : found) {
            for (const auto& u : locked) vec -= u.dot(vec) * u;
            const double nv = vec.norm();
            if (nv < 0.1) continue;
            vec /= nv;
            const double lam = vec.dot(H * vec);
            locked.push_back(vec);
            locked_vals.push_back(lam);
            if (lam <= kth * (1.0 + 1e-9)) added_low = true;
        }
        if ((int)locked.size() >= k)
            quiet = added_low ? 0 : quiet + 1;
    }
    if ((int)locked.size() < k)
        throw std::runtime_error("lowest_eigenpairs: not enough converged eigenpairs");

    std::vector<int> order(locked.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return locked_vals[a] < locked_vals[b]; });

    EigenPairs out;
    for (int i = 0; i < k; ++i) {
        const int idx = order[i];
        out.values.push_back(locked_vals[idx]);
        out.vectors.push_back(locked[idx]);
        out.residuals.push_back((H * locked[idx] - locked_vals[idx] * locked[idx]).norm());
    }
    return out;
}

}  // namespace rrlab
