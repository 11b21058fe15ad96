// AVX2 lane of the batched kernels. Compiled with -mavx2 -mfma; only ever
// called after the runtime dispatcher has confirmed CPU support.

#include "holonet/kernels.hpp"

#if HOLONET_HAVE_AVX2_LANE

#include <immintrin.h>

#include <cmath>

namespace holonet::kernels::avx2 {

void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y) {
    for (std::size_t r = 0; r < rows; ++r) {
        double* yr = Y + r * n;
        __m256d vb = _mm256_set1_pd(b[r]);
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) _mm256_storeu_pd(yr + j, vb);
        for (; j < n; ++j) yr[j] = b[r];
        const double* wr = W + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            double w = wr[c];
            if (w == 0.0) continue;
            const double* xc = X + c * n;
            __m256d vw = _mm256_set1_pd(w);
            std::size_t k = 0;
            for (; k + 4 <= n; k += 4) {
                __m256d acc = _mm256_loadu_pd(yr + k);
                acc = _mm256_fmadd_pd(vw, _mm256_loadu_pd(xc + k), acc);
                _mm256_storeu_pd(yr + k, acc);
            }
            for (; k < n; ++k) yr[k] += w * xc[k];
        }
    }
}

void relu_batch(double* y, std::size_t count) {
    __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(zero, _mm256_loadu_pd(y + i)));
    for (; i < count; ++i) y[i] = y[i] > 0.0 ? y[i] : 0.0;
}

void leaky_relu_batch(double* y, std::size_t count, double a) {
    __m256d zero = _mm256_setzero_pd();
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d v = _mm256_loadu_pd(y + i);
        __m256d neg = _mm256_mul_pd(va, v);
        __m256d mask = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
        _mm256_storeu_pd(y + i, _mm256_blendv_pd(neg, v, mask));
    }
    for (; i < count; ++i) y[i] = y[i] > 0.0 ? y[i] : a * y[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t count) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, vmax);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < count; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const double* a, std::size_t count) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4)
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i)));
    double lanes[4];
    _mm256_storeu_pd(lanes, vmax);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < count; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

}  // namespace holonet::kernels::avx2

#endif  // HOLONET_HAVE_AVX2_LANE
