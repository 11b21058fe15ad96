#include <cmath>

#include "holonet/kernels.hpp"

namespace holonet::kernels::scalar {

void affine_batch(const double* W, const double* b, std::size_t rows, std::size_t cols,
                  const double* X, std::size_t n, double* Y) {
    for (std::size_t r = 0; r < rows; ++r) {
        double* yr = Y + r * n;
        for (std::size_t j = 0; j < n; ++j) yr[j] = b[r];
        const double* wr = W + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            double w = wr[c];
            if (w == 0.0) continue;
            const double* xc = X + c * n;
            for (std::size_t j = 0; j < n; ++j) yr[j] += w * xc[j];
        }
    }
}

void relu_batch(double* y, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) y[i] = y[i] > 0.0 ? y[i] : 0.0;
}

void leaky_relu_batch(double* y, std::size_t count, double a) {
    for (std::size_t i = 0; i < count; ++i) y[i] = y[i] > 0.0 ? y[i] : a * y[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t count) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const double* a, std::size_t count) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

}  // namespace holonet::kernels::scalar
