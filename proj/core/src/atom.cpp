#include "rrlab/atom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rrlab/eigensolve.hpp"
#include "rrlab/quadrature.hpp"

namespace rrlab {

PotentialSpec PotentialSpec::harmonic(double omega0, int dim, double mass) {
    PotentialSpec p;
    p.kind = Kind::IsotropicHarmonic;
    p.dim = dim;
    p.omega0 = omega0;
    p.mass = mass;
    return p;
}

PotentialSpec PotentialSpec::polynomial(std::vector<PolyTerm> terms, double mass) {
    PotentialSpec p;
    p.kind = Kind::Polynomial;
    p.dim = 2;
    p.poly = std::move(terms);
    p.mass = mass;
    return p;
}

PotentialSpec PotentialSpec::from_callable(std::function<double(double, double)> f, double mass) {
    PotentialSpec p;
    p.kind = Kind::Tabulated;
    p.dim = 2;
    p.tabulated = std::move(f);
    p.mass = mass;
    return p;
}

double PotentialSpec::eval2(double x, double y) const {
    switch (kind) {
        case Kind::IsotropicHarmonic: return 0.5 * mass * omega0 * omega0 * (x * x + y * y);
        case Kind::Polynomial: {
            double v = 0.0;
            for (const auto& t : poly) v += t.coeff * std::pow(x, t.px) * std::pow(y, t.py);
            return v;
        }
        case Kind::Tabulated: return tabulated(x, y);
    }
    return 0.0;
}

double PotentialSpec::eval_nd(const Vec& x) const {
    if (kind == Kind::IsotropicHarmonic) {
        double r2 = 0.0;
        for (int k = 0; k < dim; ++k) r2 += x[k] * x[k];
        return 0.5 * mass * omega0 * omega0 * r2;
    }
    if (dim != 2) throw std::invalid_argument("PotentialSpec: non-harmonic potentials are d=2");
    return eval2(x[0], x[1]);
}

Vec PotentialSpec::grad_nd(const Vec& x) const {
    Vec g = Vec::zero(dim);
    if (kind == Kind::IsotropicHarmonic) {
        for (int k = 0; k < dim; ++k) g[k] = mass * omega0 * omega0 * x[k];
        return g;
    }
    if (dim != 2) throw std::invalid_argument("PotentialSpec: non-harmonic potentials are d=2");
    if (kind == Kind::Polynomial) {
        for (const auto& t : poly) {
            if (t.px > 0) g[0] += t.coeff * t.px * std::pow(x[0], t.px - 1) * std::pow(x[1], t.py);
            if (t.py > 0) g[1] += t.coeff * t.py * std::pow(x[0], t.px) * std::pow(x[1], t.py - 1);
        }
        return g;
    }
    const double h = 1e-5;
    g[0] = (eval2(x[0] + h, x[1]) - eval2(x[0] - h, x[1])) / (2 * h);
    g[1] = (eval2(x[0], x[1] + h) - eval2(x[0], x[1] - h)) / (2 * h);
    return g;
}

double PotentialSpec::hessian_nd(const Vec& x, int a, int b) const {
    if (kind == Kind::IsotropicHarmonic) return a == b ? mass * omega0 * omega0 : 0.0;
    if (dim != 2) throw std::invalid_argument("PotentialSpec: non-harmonic potentials are d=2");
    if (kind == Kind::Polynomial) {
        double h = 0.0;
        for (const auto& t : poly) {
            int px = t.px, py = t.py;
            double coef = t.coeff;
            for (int axis : {a, b}) {
                int& p = axis == 0 ? px : py;
                coef *= p;
                if (p > 0) --p;
            }
            if (coef != 0.0) h += coef * std::pow(x[0], px) * std::pow(x[1], py);
        }
        return h;
    }
    const double hh = 1e-4;
    Vec xa = x, xb = x;
    xa[a] += hh;
    xb[a] -= hh;
    return (grad_nd(xa)[b] - grad_nd(xb)[b]) / (2.0 * hh);
}

void PotentialSpec::require_bound() const {
    if (kind == Kind::IsotropicHarmonic) {
        if (!(omega0 > 0.0)) throw UnboundPotentialError("harmonic potential needs omega0 > 0");
        return;
    }
    if (kind == Kind::Polynomial) {
        // growth at spatial infinity along each axis: even top degree, positive coefficient
        int deg_x = -1, deg_y = -1;
        double top_x = 0.0, top_y = 0.0;
        for (const auto& t : poly) {
            if (t.py == 0 && t.px > deg_x) deg_x = t.px, top_x = t.coeff;
            if (t.px == 0 && t.py > deg_y) deg_y = t.py, top_y = t.coeff;
        }
        if (deg_x <= 0 || deg_y <= 0 || deg_x % 2 || deg_y % 2 || top_x <= 0.0 || top_y <= 0.0)
            throw UnboundPotentialError(
                "polynomial potential must grow to +inf (even top degree, positive coefficient)");
        return;
    }
    // tabulated: trust the caller; the boundary-amplitude check still guards the solve
}

double AtomSpectrum::coupling(int j, int jp) const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += std::norm(p_elem(j, jp, k));
    return s;
}

namespace {

AtomSpectrum harmonic_spectrum(const PotentialSpec& pot, int J_max) {
    const int d = pot.dim;
    const double w = pot.omega0, m = pot.mass;
    // enumerate multi-indices up to a comfortable shell
    int shell = 1;
    auto count_states = [&](int s) {
        int c = 0;
        for (int nx = 0; nx <= s; ++nx)
            for (int ny = 0; ny <= (d >= 2 ? s - nx : 0); ++ny) {
                if (d == 2) {
                    if (nx + ny <= s) ++c;
                } else {
                    for (int nz = 0; nz <= s - nx - ny; ++nz) ++c;
                }
            }
        return c;
    };
    while (count_states(shell) < J_max + 1) ++shell;
    ++shell;  // one extra shell so upward neighbors of retained states exist where possible

    std::vector<std::array<int, 3>> all;
    for (int nx = 0; nx <= shell; ++nx) {
        if (d == 2) {
            for (int ny = 0; ny + nx <= shell; ++ny) all.push_back({nx, ny, 0});
        } else {
            for (int ny = 0; ny + nx <= shell; ++ny)
                for (int nz = 0; nz + ny + nx <= shell; ++nz) all.push_back({nx, ny, nz});
        }
    }
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        const int sa = a[0] + a[1] + a[2], sb = b[0] + b[1] + b[2];
        if (sa != sb) return sa < sb;
        return a < b;  // lexicographic tie break
    });

    AtomSpectrum spec;
    spec.dim = d;
    spec.jmax = J_max;
    spec.mass = m;
    spec.analytic = true;
    const int nstates = J_max + 1;
    spec.energies.resize(nstates);
    spec.qnums.assign(all.begin(), all.begin() + nstates);
    spec.p.assign(static_cast<std::size_t>(nstates) * nstates * d, {0.0, 0.0});
    spec.p2.resize(nstates);
    for (int j = 0; j < nstates; ++j) {
        const auto& nq = spec.qnums[j];
        spec.energies[j] = w * (nq[0] + nq[1] + nq[2] + 0.5 * d);
        spec.p2[j] = m * w * (nq[0] + nq[1] + nq[2] + 0.5 * d);
    }
    const double scale = std::sqrt(m * w / 2.0);  // hbar = 1
    std::map<std::array<int, 3>, int> index;
    for (int j = 0; j < nstates; ++j) index[spec.qnums[j]] = j;
    for (int j = 0; j < nstates; ++j) {
        for (int k = 0; k < d; ++k) {
            auto up = spec.qnums[j];
            up[k] += 1;
            auto it = index.find(up);
            if (it != index.end()) {
                const int jp = it->second;
                const std::complex<double> val{0.0, scale * std::sqrt(double(spec.qnums[j][k] + 1))};
                spec.p[(static_cast<std::size_t>(jp) * nstates + j) * d + k] = val;
                spec.p[(static_cast<std::size_t>(j) * nstates + jp) * d + k] = std::conj(val);
            }
        }
    }
    return spec;
}

}  // namespace

GridSolveResult grid_eigensolve(const PotentialSpec& pot, int J_max, int n, double L,
                                unsigned seed) {
    if (pot.dim != 2)
        throw std::invalid_argument("grid_eigensolve: grid path is d=2 only");
    const double h = L / (n + 1);
    const double m = pot.mass;
    const double kin = 1.0 / (2.0 * m * h * h);  // hbar = 1
    const int N = n * n;
    auto xg = [&](int i) { return -0.5 * L + (i + 1) * h; };

    // 5-point stencil, Dirichlet box; shift by min(V) to keep the matrix SPD
    double vmin = 0.0;
    std::vector<double> V(N);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            V[iy * n + ix] = pot.eval2(xg(ix), xg(iy));
            vmin = std::min(vmin, V[iy * n + ix]);
        }
    const double shift = vmin - 1.0;

    Eigen::SparseMatrix<double> H(N, N);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(5) * N);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const int row = iy * n + ix;
            trip.emplace_back(row, row, 4.0 * kin + V[row] - shift);
            if (ix > 0) trip.emplace_back(row, row - 1, -kin);
            if (ix < n - 1) trip.emplace_back(row, row + 1, -kin);
            if (iy > 0) trip.emplace_back(row, row - n, -kin);
            if (iy < n - 1) trip.emplace_back(row, row + n, -kin);
        }
    H.setFromTriplets(trip.begin(), trip.end());

    auto pairs = lowest_eigenpairs(H, J_max + 1, seed);

    // deterministic sign and (E, <x>, <y>) ordering
    struct State {
        double e;
        Eigen::VectorXd psi;
        double xm, ym;
    };
    std::vector<State> states;
    for (int j = 0; j <= J_max; ++j) {
        State s;
        s.e = pairs.values[j] + shift;
        s.psi = pairs.vectors[j] / (pairs.vectors[j].norm() * h);  // L2-normalized on the grid
        int imax = 0;
        for (int i = 1; i < N; ++i)
            if (std::abs(s.psi[i]) > std::abs(s.psi[imax])) imax = i;
        if (s.psi[imax] < 0) s.psi = -s.psi;
        s.xm = s.ym = 0.0;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double w2 = s.psi[iy * n + ix] * s.psi[iy * n + ix] * h * h;
                s.xm += xg(ix) * w2;
                s.ym += xg(iy) * w2;
            }
        states.push_back(std::move(s));
    }
    std::stable_sort(states.begin(), states.end(), [](const State& a, const State& b) {
        if (std::abs(a.e - b.e) > 1e-9 * std::max(1.0, std::abs(a.e))) return a.e < b.e;
        if (std::abs(a.xm - b.xm) > 1e-9) return a.xm < b.xm;
        return a.ym < b.ym;
    });

    GridSolveResult out;
    out.h = h;
    const int nstates = J_max + 1;
    out.energies.resize(nstates);
    out.p.assign(static_cast<std::size_t>(nstates) * nstates * 2, {0.0, 0.0});
    out.p2.resize(nstates);
    out.x_mean.resize(nstates);
    out.y_mean.resize(nstates);

    // p = -i d/dx by 4th-order central differences (zero outside the box)
    auto deriv = [&](const Eigen::VectorXd& psi, int comp) {
        Eigen::VectorXd d(N);
        auto at = [&](int ix, int iy) {
            if (ix < 0 || ix >= n || iy < 0 || iy >= n) return 0.0;
            return psi[iy * n + ix];
        };
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                double val;
                if (comp == 0)
                    val = (-at(ix + 2, iy) + 8 * at(ix + 1, iy) - 8 * at(ix - 1, iy) +
                           at(ix - 2, iy)) /
                          (12 * h);
                else
                    val = (-at(ix, iy + 2) + 8 * at(ix, iy + 1) - 8 * at(ix, iy - 1) +
                           at(ix, iy - 2)) /
                          (12 * h);
                d[iy * n + ix] = val;
            }
        return d;
    };

    std::vector<Eigen::VectorXd> dx(nstates), dy(nstates);
    for (int j = 0; j < nstates; ++j) {
        dx[j] = deriv(states[j].psi, 0);
        dy[j] = deriv(states[j].psi, 1);
    }
    for (int j = 0; j < nstates; ++j) {
        out.energies[j] = states[j].e;
        out.x_mean[j] = states[j].xm;
        out.y_mean[j] = states[j].ym;
        double vexp = 0.0;
        for (int i = 0; i < N; ++i) vexp += V[i] * states[j].psi[i] * states[j].psi[i] * h * h;
        out.p2[j] = 2.0 * m * (states[j].e - vexp);
        out.boundary_amplitude = std::max(out.boundary_amplitude, [&] {
            double bmax = 0.0;
            for (int i = 0; i < n; ++i) {
                bmax = std::max(bmax, std::abs(states[j].psi[i]));                  // bottom row
                bmax = std::max(bmax, std::abs(states[j].psi[(n - 1) * n + i]));    // top row
                bmax = std::max(bmax, std::abs(states[j].psi[i * n]));              // left col
                bmax = std::max(bmax, std::abs(states[j].psi[i * n + n - 1]));      // right col
            }
            return bmax / states[j].psi.cwiseAbs().maxCoeff();
        }());
        for (int jp = 0; jp < nstates; ++jp) {
            std::complex<double> px{0.0, 0.0}, py{0.0, 0.0};
            double sx = 0.0, sy = 0.0;
            for (int i = 0; i < N; ++i) {
                sx += states[jp].psi[i] * dx[j][i];
                sy += states[jp].psi[i] * dy[j][i];
            }
            px = std::complex<double>(0.0, -sx * h * h);
            py = std::complex<double>(0.0, -sy * h * h);
            out.p[(static_cast<std::size_t>(jp) * nstates + j) * 2 + 0] = px;
            out.p[(static_cast<std::size_t>(jp) * nstates + j) * 2 + 1] = py;
        }
    }
    return out;
}

AtomSpectrum solve_spectrum(const PotentialSpec& pot, int J_max, const GridOptions& opts) {
    if (J_max < 2) throw std::invalid_argument("solve_spectrum: J_max must be >= 2");
    pot.require_bound();
    if (pot.kind == PotentialSpec::Kind::IsotropicHarmonic) return harmonic_spectrum(pot, J_max);
    if (pot.dim != 2)
        throw std::invalid_argument("solve_spectrum: non-harmonic potentials are d=2 only");

    // three-resolution Richardson chain in h^2
    const int ns[3] = {opts.n / 2, (3 * opts.n) / 4, opts.n};
    GridSolveResult solves[3];
    for (int i = 0; i < 3; ++i) solves[i] = grid_eigensolve(pot, J_max, ns[i], opts.L, opts.seed);
    const GridSolveResult& fine = solves[2];
    if (fine.boundary_amplitude > 1e-8)
        throw GridTooCoarseError("solve_spectrum: eigenfunction reaches the box boundary; enlarge L");

    AtomSpectrum spec;
    spec.dim = 2;
    spec.jmax = J_max;
    spec.mass = pot.mass;
    spec.analytic = false;
    spec.p = fine.p;
    spec.p2 = fine.p2;
    spec.energies.resize(J_max + 1);
    spec.convergence.resize(J_max + 1);
    std::vector<double> h2{solves[0].h * solves[0].h, solves[1].h * solves[1].h,
                           solves[2].h * solves[2].h};
    for (int j = 0; j <= J_max; ++j) {
        std::vector<double> es{solves[0].energies[j], solves[1].energies[j],
                               solves[2].energies[j]};
        spec.energies[j] = neville_to_zero(h2, es).value;
        spec.convergence[j] = std::abs(solves[2].energies[j] - solves[1].energies[j]);
        if (spec.convergence[j] > opts.convergence_tol * std::max(1.0, std::abs(spec.energies[j])))
            throw GridTooCoarseError("solve_spectrum: eigenvalue convergence check failed");
    }
    return spec;
}

double polarization_sum(const AtomSpectrum& spec, int j, int jp, const Vec& k_hat) {
    // sum_p |eps . p|^2 = p^dag (I - kappa kappa^T) p
    double total = 0.0;
    std::complex<double> kp{0.0, 0.0};
    for (int a = 0; a < spec.dim; ++a) {
        total += std::norm(spec.p_elem(jp, j, a));
        kp += k_hat[a] * spec.p_elem(jp, j, a);
    }
    return total - std::norm(kp);
}

CouplingSum momentum_coupling_sum(const AtomSpectrum& spec, int j) {
    CouplingSum out;
    const int nstates = spec.jmax + 1;
    const double geom = spec.dim == 2 ? M_PI : 8.0 * M_PI / 3.0;
    out.weights.resize(nstates, 0.0);
    for (int jp = 0; jp < nstates; ++jp) {
        const double c = spec.coupling(j, jp);
        out.weights[jp] = geom * c;
        out.weight_total += geom * c;
        out.sum_rule_lhs += c;
    }
    out.p2 = spec.p2[j];
    out.completeness_deficit = (out.p2 - out.sum_rule_lhs) / std::max(out.p2, 1e-300);
    out.deficit_warning = out.completeness_deficit > 0.05;
    return out;
}

}  // namespace rrlab
