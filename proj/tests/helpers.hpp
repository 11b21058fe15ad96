#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "holonet/network.hpp"

namespace holonet::testing {

// Random dense ReLU network with depth L, widths <= N, entries in [-B, B].
inline NetworkParameter random_relu_net(std::mt19937_64& rng, int d, int L, int N, double B,
                                        double zero_fraction = 0.2) {
    std::uniform_real_distribution<double> w(-B, B);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<int> widths(1, N);
    NetworkParameter net;
    net.activation = catalog("relu");
    int prev = d;
    for (int l = 0; l <= L; ++l) {
        int rows = (l == L) ? 1 : widths(rng);
        Layer lay = Layer::zeros(rows, prev);
        for (auto& v : lay.w) v = (u01(rng) < zero_fraction) ? 0.0 : w(rng);
        for (auto& v : lay.b) v = (u01(rng) < zero_fraction) ? 0.0 : w(rng);
        net.layers.push_back(std::move(lay));
        prev = rows;
    }
    return net;
}

inline double grid_sup_error_1d(const NetworkParameter& net,
                                const std::function<double(double)>& target, double lo, double hi,
                                int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = lo + (hi - lo) * double(i) / double(n - 1);
        worst = std::max(worst, std::abs(forward(net, {x})[0] - target(x)));
    }
    return worst;
}

}  // namespace holonet::testing
