#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace holonet {

// ============================================================
// Multi-indices
// ============================================================

using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& m) {
    int s = 0;
    for (int v : m) s += v;
    return s;
}

// All m in N0^d with |m| <= degree, graded lexicographic (deterministic).
std::vector<MultiIndex> multi_indices_up_to(int d, int degree);

double factorial(int n);

// m! = prod_j m_j!
double mi_factorial(const MultiIndex& m);

// binom(n, k) for small integers
double binom(int n, int k);

// x^m = prod_j x_j^{m_j}
double mi_pow(const std::vector<double>& x, const MultiIndex& m);

// ============================================================
// Log-log slope fitting for convergence sweeps
// ============================================================

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;      // in log10 space
    int points_used = 0;
    int points_dropped = 0;      // below the floating-point floor
};

// Least-squares fit of log10(y) against log10(x). Points with y within
// `floor_multiple` times `fp_floor(x)` are dropped so cancellation noise
// does not pollute the fit.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          const std::function<double(double)>& fp_floor = nullptr,
                          double floor_multiple = 10.0);

// ============================================================
// Deterministic randomness
// ============================================================

// All stochastic test points are drawn from explicitly seeded engines so a
// fixed seed reproduces every report byte for byte.
inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

std::vector<double> random_point(std::mt19937_64& rng, int d, double lo = 0.0, double hi = 1.0);

// ============================================================
// Worker pool helpers
// ============================================================

// Number of workers: min(HOLONET_THREADS if set, hardware_concurrency), >= 1.
int worker_count();

// Chunked parallel loop over [0, n). The body receives [begin, end) ranges.
// Chunk boundaries depend only on n and the worker count, never on timing,
// so order-insensitive reductions (max) stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace holonet
