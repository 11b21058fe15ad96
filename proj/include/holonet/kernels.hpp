#pragma once

#include <cstddef>
#include <string>

namespace holonet::kernels {

// Data-parallel inner loops for batched network evaluation and sup-norm
// sweeps. Every kernel has a scalar reference implementation and an AVX2
// variant; the active one is picked at load time (override with
// HOLONET_SIMD=scalar). The two lanes are equivalence-tested to 1e-12.

enum class Isa { Scalar, Avx2 };

Isa active_isa();
std::string isa_name(Isa isa);

// Y[r*n + j] = b[r] + sum_c W[r*cols + c] * X[c*n + j]
// X and Y are node-major with the batch as the fast (vectorized) dimension.
void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y);

// Elementwise activation maps over a node-major buffer of m*n values.
void relu_batch(double* y, std::size_t count);
void leaky_relu_batch(double* y, std::size_t count, double a);

// max_j |a[j] - b[j]| and max_j |a[j]|
double max_abs_diff(const double* a, const double* b, std::size_t count);
double max_abs(const double* a, std::size_t count);

// Scalar reference versions, always available (used by the equivalence tests).
namespace scalar {
void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y);
void relu_batch(double* y, std::size_t count);
void leaky_relu_batch(double* y, std::size_t count, double a);
double max_abs_diff(const double* a, const double* b, std::size_t count);
double max_abs(const double* a, std::size_t count);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HOLONET_HAVE_AVX2_LANE 1
namespace avx2 {
void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y);
void relu_batch(double* y, std::size_t count);
void leaky_relu_batch(double* y, std::size_t count, double a);
double max_abs_diff(const double* a, const double* b, std::size_t count);
double max_abs(const double* a, std::size_t count);
}  // namespace avx2
#else
#define HOLONET_HAVE_AVX2_LANE 0
#endif

}  // namespace holonet::kernels
