#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holonet/gadgets.hpp"
#include "holonet/holder.hpp"
#include "holonet/network.hpp"

namespace holonet {

// ============================================================
// Grid, local basis, Taylor surrogate
// ============================================================

struct Grid {
    int d = 1;
    int M = 1;                          // spacing 1/M, points (m_1/M, ..., m_d/M)
    std::size_t size() const;           // (M+1)^d
    std::vector<double> point(std::size_t flat_index) const;
};

// Hat product phi_{z,M}(x) = prod_j (1 - M |x_j - z_j|)_+ . The family over
// the grid is a partition of unity on [0,1]^d.
double local_basis(const std::vector<double>& z, int M, const std::vector<double>& x);

struct TaylorPatch {
    std::vector<double> center;                 // z
    std::vector<MultiIndex> indices;            // |m| <= taylor degree
    std::vector<double> taylor_coeff;           // d^m f(z) / m!
    std::vector<double> monomial_coeff;         // beta_{z,m}: sum in the monomial basis
    double eval_taylor(const std::vector<double>& x) const;
    double eval_monomial(const std::vector<double>& x) const;
};

TaylorPatch make_patch(const HolderFunction& f, const std::vector<double>& z);

// P_M: grid-indexed sum of patch polynomials times hats.
struct PiecewiseTaylorSurrogate {
    Grid grid;
    std::vector<TaylorPatch> patches;            // one per grid point, flat order
    double eval(const std::vector<double>& x) const;
};

PiecewiseTaylorSurrogate surrogate(const HolderFunction& f, int M);

// ============================================================
// Sup-error measurement schemes
// ============================================================

struct EvalScheme {
    enum class Kind { GridScheme, RandomScheme, Hybrid } kind = Kind::GridScheme;
    std::size_t n_per_dim = 0;          // grid: points per dimension (0 = default for d)
    std::size_t n_random = 0;           // random/hybrid sample count
    std::uint64_t seed = 7;

    static EvalScheme dense_grid(int d);          // d=1: 1e5, d=2: 512^2, d=3: 64^3
    static EvalScheme random(std::size_t n, std::uint64_t seed);
    static EvalScheme hybrid(int d, std::size_t n_random, std::uint64_t seed);
    std::vector<double> points(int d) const;      // concatenated point-major
};

using RealFunction = std::function<double(const std::vector<double>&)>;

double measure_sup_error(const RealFunction& f, const RealFunction& g, int d,
                         const EvalScheme& scheme);
double measure_sup_error(const NetworkParameter& net, const HolderFunction& f,
                         const EvalScheme& scheme);
double measure_sup_error(const NetworkParameter& net, const RealFunction& g, int d,
                         const EvalScheme& scheme);

// ============================================================
// End-to-end assembly
// ============================================================

struct AssemblyBudget {
    double epsilon = 0.1;
    int M = 0;                          // M + 1 = ceil(eps^{-1/alpha})
    double K = 0.0;                     // min(eps^{-2d/alpha - 2}, K_cap)
    double K_requested = 0.0;
    double K_cap = 1e4;
    int relu_m_layers = 0;              // product accuracy for the ReLU pipeline

    static AssemblyBudget from_epsilon(double eps, const HolderFunction& f, double K_cap = 1e4);
};

struct ApproximationReport {
    std::string target;
    std::string activation;
    double epsilon = 0.0;
    int M = 0;
    double K = 0.0;
    double K_requested = 0.0;
    int relu_m_layers = 0;
    NetworkMetrics net_metrics;
    // Theorem-1 scaling denominators, for order accounting across sweeps.
    double theory_depth = 0.0;          // log(1/eps)
    double theory_width = 0.0;          // eps^{-d/alpha}
    double theory_sparsity = 0.0;       // eps^{-d/alpha} log(1/eps)
    double theory_magnitude = 0.0;      // eps^{-4(d/alpha+1)}
    double sup_err_grid = 0.0;
    double sup_err_random = 0.0;
    double surrogate_err = 0.0;         // sup |P_M - f|
    double net_vs_surrogate_err = 0.0;  // sup |N - P_M|
    double alignment_error_budget = 0.0;// accumulated identity-gadget slack
};

// Locally-quadratic pipeline: hats through theta_abs/theta_relu, monomials
// through theta_m, products through theta_{x,A}, patch weights in the output layer.
std::pair<NetworkParameter, ApproximationReport> assemble_locquad(
    const HolderFunction& f, const Activation& act, const AssemblyBudget& budget,
    const EvalScheme& scheme);

// ReLU pipeline: exact hats, Yarotsky-style product trees for the monomials
// and the final products; error splits into surrogate + product-stage terms.
std::pair<NetworkParameter, ApproximationReport> assemble_relu(
    const HolderFunction& f, const AssemblyBudget& budget, const EvalScheme& scheme);

// Piecewise-linear pipeline: assemble_relu then the exact lift.
std::pair<NetworkParameter, ApproximationReport> assemble_pwl(
    const HolderFunction& f, const Activation& act, const AssemblyBudget& budget,
    const EvalScheme& scheme);

std::string report_csv_header();
std::string report_csv_row(const ApproximationReport& r);

}  // namespace holonet
