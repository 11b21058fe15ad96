#include "holonet/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace holonet {

std::vector<MultiIndex> multi_indices_up_to(int d, int degree) {
    std::vector<MultiIndex> out;
    MultiIndex current(d, 0);
    // Graded order: enumerate total degree 0..degree, lexicographic within a grade.
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == d - 1) {
            current[pos] = remaining;
            out.push_back(current);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            current[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    for (int grade = 0; grade <= degree; ++grade) rec(0, grade);
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double mi_factorial(const MultiIndex& m) {
    double f = 1.0;
    for (int v : m) f *= factorial(v);
    return f;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double mi_pow(const std::vector<double>& x, const MultiIndex& m) {
    double p = 1.0;
    for (std::size_t j = 0; j < m.size(); ++j)
        for (int i = 0; i < m[j]; ++i) p *= x[j];
    return p;
}

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          const std::function<double(double)>& fp_floor, double floor_multiple) {
    SlopeFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) {
            ++fit.points_dropped;
            continue;
        }
        if (fp_floor && y[i] < floor_multiple * fp_floor(x[i])) {
            ++fit.points_dropped;
            continue;
        }
        lx.push_back(std::log10(x[i]));
        ly.push_back(std::log10(y[i]));
    }
    fit.points_used = static_cast<int>(lx.size());
    if (fit.points_used < 2) return fit;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

std::vector<double> random_point(std::mt19937_64& rng, int d, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j) x[j] = u(rng);
    return x;
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("HOLONET_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return std::min(hw, 16);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    int workers = worker_count();
    if (workers <= 1 || n < 4096) {
        body(0, n);
        return;
    }
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace holonet
