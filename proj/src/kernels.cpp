// Runtime dispatch for the batched kernels: AVX2 when the CPU supports it,
// scalar otherwise or when HOLONET_SIMD=scalar is set.

#include "holonet/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace holonet::kernels {

namespace {

Isa detect_isa() {
    if (const char* env = std::getenv("HOLONET_SIMD")) {
        if (std::strcmp(env, "scalar") == 0 || std::strcmp(env, "off") == 0) return Isa::Scalar;
    }
#if HOLONET_HAVE_AVX2_LANE
#if defined(__GNUC__) || defined(__clang__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
#endif
    return Isa::Scalar;
}

const Isa g_isa = detect_isa();

}  // namespace

Isa active_isa() { return g_isa; }

std::string isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y) {
#if HOLONET_HAVE_AVX2_LANE
    if (g_isa == Isa::Avx2) {
        avx2::affine_batch(W, b, rows, cols, X, n, Y);
        return;
    }
#endif
    scalar::affine_batch(W, b, rows, cols, X, n, Y);
}

void relu_batch(double* y, std::size_t count) {
#if HOLONET_HAVE_AVX2_LANE
    if (g_isa == Isa::Avx2) {
        avx2::relu_batch(y, count);
        return;
    }
#endif
    scalar::relu_batch(y, count);
}

void leaky_relu_batch(double* y, std::size_t count, double a) {
#if HOLONET_HAVE_AVX2_LANE
    if (g_isa == Isa::Avx2) {
        avx2::leaky_relu_batch(y, count, a);
        return;
    }
#endif
    scalar::leaky_relu_batch(y, count, a);
}

double max_abs_diff(const double* a, const double* b, std::size_t count) {
#if HOLONET_HAVE_AVX2_LANE
    if (g_isa == Isa::Avx2) return avx2::max_abs_diff(a, b, count);
#endif
    return scalar::max_abs_diff(a, b, count);
}

double max_abs(const double* a, std::size_t count) {
#if HOLONET_HAVE_AVX2_LANE
    if (g_isa == Isa::Avx2) return avx2::max_abs(a, count);
#endif
    return scalar::max_abs(a, count);
}

}  // namespace holonet::kernels
