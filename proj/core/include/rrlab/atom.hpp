#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rrlab/vec.hpp"

namespace rrlab {

struct UnboundPotentialError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct GridTooCoarseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PotentialSpec {
    enum class Kind { IsotropicHarmonic, Polynomial, Tabulated } kind = Kind::IsotropicHarmonic;
    int dim = 2;
    double mass = 1.0;
    double omega0 = 1.0;  // harmonic frequency

    struct PolyTerm {
        double coeff;
        int px, py;
    };
    std::vector<PolyTerm> poly;                    // d=2 polynomial terms
    std::function<double(double, double)> tabulated;  // d=2 callable potential

    static PotentialSpec harmonic(double omega0, int dim, double mass = 1.0);
    static PotentialSpec polynomial(std::vector<PolyTerm> terms, double mass = 1.0);
    static PotentialSpec from_callable(std::function<double(double, double)> f, double mass = 1.0);

    double eval2(double x, double y) const;  // d=2 evaluation
    double eval_nd(const Vec& x) const;      // any-d (harmonic), d=2 otherwise
    Vec grad_nd(const Vec& x) const;
    /// Hessian entry d^2 V / dx_a dx_b.
    double hessian_nd(const Vec& x, int a, int b) const;
    /// Throws UnboundPotentialError when the confinement check fails.
    void require_bound() const;
};

struct AtomSpectrum {
    int dim = 2;
    int jmax = 0;
    double mass = 1.0;
    std::vector<double> energies;                 // ascending, size jmax+1
    std::vector<std::complex<double>> p;          // (jmax+1)^2 * dim momentum elements
    std::vector<std::array<int, 3>> qnums;        // analytic path only
    std::vector<double> p2;                       // <p^2>_j
    std::vector<double> convergence;              // grid path: |E_fine - E_coarse| per level
    bool analytic = false;

    std::complex<double> p_elem(int jp, int j, int comp) const {
        return p[(static_cast<std::size_t>(jp) * (jmax + 1) + j) * dim + comp];
    }
    /// |p_{j j'}|^2 summed over components.
    double coupling(int j, int jp) const;
    double omega_a(int j, int jp) const { return energies[j] - energies[jp]; }
};

struct GridOptions {
    int n = 128;          // interior points per axis (fine grid)
    double L = 16.0;      // box edge length
    unsigned seed = 12345;
    double convergence_tol = 0.02;
};

struct GridSolveResult {
    double h = 0.0;
    std::vector<double> energies;
    std::vector<std::complex<double>> p;  // same layout as AtomSpectrum
    std::vector<double> p2;
    std::vector<double> x_mean, y_mean;
    double boundary_amplitude = 0.0;  // max |psi| on the outermost ring
};

/// Single-resolution d=2 finite-difference eigensolve (2nd-order 5-point
/// stencil, Dirichlet box), lowest J_max+1 states.
GridSolveResult grid_eigensolve(const PotentialSpec& pot, int J_max, int n, double L,
                                unsigned seed);

/// Bound-state spectrum and momentum matrix elements.  Analytic ladder path
/// for the isotropic harmonic potential (any d); d=2 finite differences with
/// Richardson extrapolation across two resolutions otherwise.
AtomSpectrum solve_spectrum(const PotentialSpec& pot, int J_max, const GridOptions& opts = {});

/// sum_p |eps . p_{j'j}|^2 for a concrete propagation direction.
double polarization_sum(const AtomSpectrum& spec, int j, int jp, const Vec& k_hat);

struct CouplingSum {
    std::vector<double> weights;      // per j': angle-integrated, polarization-summed
    double weight_total = 0.0;
    double sum_rule_lhs = 0.0;        // sum_j' |p_{jj'}|^2 over retained levels
    double p2 = 0.0;                  // <p^2>_j
    double completeness_deficit = 0.0;
    bool deficit_warning = false;     // deficit > 5% of the p^2 sum rule
};

/// Angle-integrated coupling weights used by the level-shift integrals:
/// pi |p_{jj'}|^2 for d=2 and (8pi/3)|p_{jj'}|^2 for d=3.
CouplingSum momentum_coupling_sum(const AtomSpectrum& spec, int j);

}  // namespace rrlab
